//! The trace-map Frobenius splitting `φ = Tr(F^{p-1} ·)` of the cell
//! coordinate ring over `𝔽_p`, and the check that it compatibly splits the
//! cell ideals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cells::{build_ideal, CellsError, IdealKind, IdealPresentation};
use crate::combinat::{is_fixed_point, HessenbergFunction, Permutation};
use crate::groebner::{initial_term, order_n, order_n_w, reduce, GroebnerError, MonomialOrder};
use crate::polyring::{Domain, Monomial, Polynomial, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{w} is not a fixed point for h = {h}")]
    NotFixedPoint { w: Permutation, h: HessenbergFunction },
    #[error("initial term of the generator product is not a squarefree monomial dividing Z: {0}")]
    BadInitialProduct(String),
    #[error("generator {0} has a leading coefficient other than ±1")]
    NonUnitLeading(Polynomial),
    #[error("polynomial lives over {0}, expected {1}")]
    WrongDomain(Domain, Domain),
    #[error(transparent)]
    Cells(#[from] CellsError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An element of `𝔽_p`, stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldElement {
    p: u64,
    value: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, p: u64) -> Result<Self, FrobeniusError> {
        if !is_prime(p) {
            return Err(FrobeniusError::NotPrime(p));
        }
        Ok(Self {
            p,
            value: value.rem_euclid(p as i64) as u64,
        })
    }

    pub fn from_bigint(value: &BigInt, p: u64) -> Result<Self, FrobeniusError> {
        let v = value.mod_floor(&BigInt::from(p)).to_i64().expect("reduced below p");
        Self::new(v, p)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn with(&self, value: u128) -> Self {
        Self {
            p: self.p,
            value: (value % self.p as u128) as u64,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.with(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.p - 2))
    }

    /// The unique `p`-th root; Frobenius is the identity on `𝔽_p`.
    pub fn pth_root(&self) -> Self {
        *self
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p);
        self.with(self.value as u128 + rhs.value as u128)
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p);
        self.with(self.value as u128 * rhs.value as u128)
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.with((self.p - self.value) as u128)
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Data for `φ = Tr(F^{p-1} ·)` attached to one ideal.
#[derive(Clone, Debug)]
pub struct SplittingContext {
    pub p: u64,
    pub ideal: IdealPresentation,
    pub order: MonomialOrder,
    /// Product of all ambient variables.
    pub z: Monomial,
    /// Product of the nonzero generators, over `𝔽_p`.
    pub g: Polynomial,
    pub f: Polynomial,
    /// Coefficient of `in(G)`, which is `±1`.
    pub sign: PrimeFieldElement,
    f_pow: Polynomial,
    generators: Vec<Polynomial>,
}

impl SplittingContext {
    /// Context for the cell ideal `J_{w,h}` under `<_n^w`.
    pub fn new(w: &Permutation, h: &HessenbergFunction, p: u64) -> Result<Self, FrobeniusError> {
        let ideal = build_ideal(w, h, IdealKind::Cell)?;
        if !is_fixed_point(w, h) {
            return Err(FrobeniusError::NotFixedPoint {
                w: w.clone(),
                h: h.clone(),
            });
        }
        Self::for_ideal(ideal, order_n_w(w), p)
    }

    /// Context for the patch ideal `I_{w_0,h}` under `<_n`.
    pub fn for_patch(h: &HessenbergFunction, p: u64) -> Result<Self, FrobeniusError> {
        let ideal = build_ideal(&Permutation::longest(h.n()), h, IdealKind::Patch)?;
        Self::for_ideal(ideal, order_n(h.n()), p)
    }

    pub fn for_ideal(ideal: IdealPresentation, order: MonomialOrder, p: u64) -> Result<Self, FrobeniusError> {
        if !is_prime(p) {
            return Err(FrobeniusError::NotPrime(p));
        }
        let domain = Domain::PrimeField(p);
        let mut generators = Vec::new();
        for g in ideal.nonzero_polys() {
            let lead = initial_term(&g, &order)?;
            if lead.coeff.magnitude() != &One::one() {
                return Err(FrobeniusError::NonUnitLeading(g));
            }
            generators.push(g.reduce_mod(p));
        }
        let z = Monomial::from_pairs(ideal.ambient.iter().map(|&v| (v, 1)));
        let g = generators
            .iter()
            .fold(Polynomial::one(domain), |acc, gen| &acc * gen);
        let lead = initial_term(&g, &order)?;
        let cofactor = match lead.monomial.divide_into(&z) {
            Some(c) if lead.monomial.is_squarefree() => c,
            _ => return Err(FrobeniusError::BadInitialProduct(lead.to_string())),
        };
        let f = g.mul_term(&BigInt::one(), &cofactor);
        let f_pow = f.pow((p - 1) as u32);
        Ok(Self {
            p,
            sign: PrimeFieldElement::from_bigint(&lead.coeff, p)?,
            ideal,
            order,
            z,
            g,
            f,
            f_pow,
            generators,
        })
    }

    pub fn domain(&self) -> Domain {
        Domain::PrimeField(self.p)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `in(F) = ±Z`.
    pub fn initial_f_is_z(&self) -> Result<bool, FrobeniusError> {
        Ok(initial_term(&self.f, &self.order)?.monomial == self.z)
    }

    fn to_field(&self, f: &Polynomial) -> Result<Polynomial, FrobeniusError> {
        match f.domain() {
            Domain::Integers => Ok(f.reduce_mod(self.p)),
            d if d == self.domain() => Ok(f.clone()),
            d => Err(FrobeniusError::WrongDomain(d, self.domain())),
        }
    }
}

/// `Tr(c·m) = c·(mZ)^{1/p}/Z` when `mZ` is a `p`-th power, else `0`.
pub fn trace_term(c: PrimeFieldElement, m: &Monomial, z: &Monomial) -> Option<(PrimeFieldElement, Monomial)> {
    let p = c.modulus() as u32;
    let mz = m.mul(z);
    if mz.factors().iter().any(|&(_, e)| e % p != 0) {
        return None;
    }
    let root = Monomial::from_pairs(mz.factors().iter().map(|&(v, e)| (v, e / p)));
    let out = z.divide_into(&root)?;
    Some((c.pth_root(), out))
}

/// Additive extension of the monomial trace.
pub fn trace(f: &Polynomial, ctx: &SplittingContext) -> Result<Polynomial, FrobeniusError> {
    let f = ctx.to_field(f)?;
    let mut out = Polynomial::zero(ctx.domain());
    for (m, c) in f.terms() {
        let c = PrimeFieldElement::from_bigint(c, ctx.p)?;
        if let Some((c, m)) = trace_term(c, m, &ctx.z) {
            out.add_term(m, BigInt::from(c.value()));
        }
    }
    Ok(out)
}

/// `φ(f) = Tr(F^{p-1} f)`.
pub fn splitting_apply(f: &Polynomial, ctx: &SplittingContext) -> Result<Polynomial, FrobeniusError> {
    let f = ctx.to_field(f)?;
    trace(&(&ctx.f_pow * &f), ctx)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorCheck {
    pub k: usize,
    pub l: usize,
    pub generator: Polynomial,
    pub image: Polynomial,
    pub remainder: Polynomial,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatibilityReport {
    pub w: Permutation,
    pub h: HessenbergFunction,
    pub kind: IdealKind,
    pub p: u64,
    pub sign: i64,
    pub initial_f_is_z: bool,
    pub phi_one_is_one: bool,
    pub generators: Vec<GeneratorCheck>,
    pub compatible: bool,
}

/// Checks `φ(g) ∈ J` for each nonzero generator `g` by reducing modulo the
/// generators, which stay a Gröbner basis mod `p` since their leading
/// coefficients are `±1`.
pub fn compatibility_check(ctx: &SplittingContext) -> Result<CompatibilityReport, FrobeniusError> {
    let nonzero: Vec<_> = ctx.ideal.nonzero_generators().collect();
    let mut checks = Vec::with_capacity(nonzero.len());
    for (gen, g) in nonzero.iter().zip(&ctx.generators) {
        let image = splitting_apply(g, ctx)?;
        let remainder = reduce(&image, &ctx.generators, &ctx.order)?.remainder;
        checks.push(GeneratorCheck {
            k: gen.k,
            l: gen.l,
            generator: g.clone(),
            ok: remainder.is_zero(),
            image,
            remainder,
        });
    }
    let phi_one = splitting_apply(&Polynomial::one(ctx.domain()), ctx)?;
    let initial_f_is_z = ctx.initial_f_is_z()?;
    let phi_one_is_one = phi_one == Polynomial::one(ctx.domain());
    let sign = if ctx.sign.value() == 1 { 1 } else { -1 };
    Ok(CompatibilityReport {
        w: ctx.ideal.w.clone(),
        h: ctx.ideal.h.clone(),
        kind: ctx.ideal.kind,
        p: ctx.p,
        sign,
        compatible: initial_f_is_z && phi_one_is_one && checks.iter().all(|c| c.ok),
        initial_f_is_z,
        phi_one_is_one,
        generators: checks,
    })
}

/// The variables of the context, for building test inputs.
pub fn ambient(ctx: &SplittingContext) -> &[Variable] {
    &ctx.ideal.ambient
}
