use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Variable};

/// Coefficient domain of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    /// `𝔽_p`; coefficients are stored reduced into `[1, p)`.
    PrimeField(u64),
}

impl Domain {
    fn normalize(&self, c: BigInt) -> BigInt {
        match self {
            Domain::Integers => c,
            Domain::PrimeField(p) => c.mod_floor(&BigInt::from(*p)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "Z"),
            Domain::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A sparse polynomial with exact coefficients. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    domain: Domain,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(domain: Domain) -> Self {
        Self {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(BigInt::one(), domain)
    }

    pub fn constant(c: impl Into<BigInt>, domain: Domain) -> Self {
        Self::term(c, Monomial::one(), domain)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial, domain: Domain) -> Self {
        let c = domain.normalize(c.into());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { domain, terms }
    }

    pub fn var(v: Variable, domain: Domain) -> Self {
        Self::term(1, Monomial::var(v), domain)
    }

    /// Integer polynomial `x_{i,j}`.
    pub fn x(i: usize, j: usize) -> Self {
        Self::var(Variable::x(i, j), Domain::Integers)
    }

    /// Integer polynomial `z_{i,j}`.
    pub fn z(i: usize, j: usize) -> Self {
        Self::var(Variable::z(i, j), Domain::Integers)
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(domain: Domain, terms: impl IntoIterator<Item = (BigInt, Monomial)>) -> Self {
        let mut out = Self::zero(domain);
        for (c, m) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (storage) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(c)` if the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Nonzero constant, i.e. a generator that makes an ideal the unit ideal
    /// over a field.
    pub fn is_nonzero_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero())
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.domain.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.domain.normalize(e.get() + c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_domain(&self, other: &Self) -> Result<(), PolyError> {
        if self.domain != other.domain {
            return Err(PolyError::DomainMismatch(self.domain, other.domain));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_domain(other)?;
        let mut out = Self::zero(self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(
            self.domain,
            self.terms.iter().map(|(m, a)| (a * c, m.clone())),
        )
    }

    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Self {
        Self::from_terms(
            self.domain,
            self.terms.iter().map(|(mm, a)| (a * c, mm.mul(m))),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.domain);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Image of an integer polynomial in `𝔽_p[...]`.
    pub fn reduce_mod(&self, p: u64) -> Self {
        Self::from_terms(
            Domain::PrimeField(p),
            self.terms.iter().map(|(m, c)| (c.clone(), m.clone())),
        )
    }

    /// Ring homomorphism defined on variables by `sigma`. Variables missing
    /// from `sigma` map to themselves, which is only allowed when they are
    /// declared in `target`.
    pub fn substitute(
        &self,
        sigma: &BTreeMap<Variable, Polynomial>,
        target: &BTreeSet<Variable>,
    ) -> Result<Self, PolyError> {
        for image in sigma.values() {
            self.check_domain(image)?;
            if let Some(v) = image.variables().into_iter().find(|v| !target.contains(v)) {
                return Err(PolyError::UnknownVariable(v));
            }
        }
        let mut out = Self::zero(self.domain);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone(), self.domain);
            for &(v, e) in m.factors() {
                let image = match sigma.get(&v) {
                    Some(p) => p.pow(e),
                    None if target.contains(&v) => {
                        Self::term(1, Monomial::from_pairs([(v, e)]), self.domain)
                    }
                    None => return Err(PolyError::UnknownVariable(v)),
                };
                acc = &acc * &image;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Evaluates at an integer point; every variable must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<Variable, BigInt>) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.factors() {
                let x = point.get(&v).ok_or(PolyError::UnknownVariable(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(self.domain.normalize(total))
    }

    /// `true` if every coefficient is `±1` (over `𝔽_p`, `1` or `p - 1`).
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.values().all(|c| is_unit(c, self.domain))
    }
}

pub(crate) fn is_unit(c: &BigInt, domain: Domain) -> bool {
    match domain {
        Domain::Integers => c.abs().is_one(),
        Domain::PrimeField(p) => !c.mod_floor(&BigInt::from(p)).is_zero(),
    }
}

/// `a op b` with a domain check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

// Operator forms panic on a domain mismatch; use `poly_arith` or the
// `try_*` methods where the domains are not known to agree.

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Self) -> Polynomial {
        self.try_add(rhs).expect("polynomial domains must agree")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        self.try_sub(rhs).expect("polynomial domains must agree")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        self.try_mul(rhs).expect("polynomial domains must agree")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Self) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> Polynomial {
        Polynomial::constant(c, Domain::Integers)
    }

    #[test]
    fn difference_of_squares() {
        let x = Polynomial::x(1, 1);
        let got = (&x + &int(1)) * (&x - &int(1));
        let expected = &x.pow(2) - &int(1);
        assert_eq!(got, expected);
        assert_eq!(got.to_string(), "-1 + x_1_1^2");
    }

    #[test]
    fn additive_identity() {
        let p = Polynomial::x(1, 2) - Polynomial::z(3, 1);
        assert_eq!(&p + &Polynomial::zero(Domain::Integers), p);
    }

    #[test]
    fn builds_the_four_by_four_patch_entry() {
        let factor = -Polynomial::x(2, 2) + Polynomial::x(3, 1);
        let step = &factor * &Polynomial::x(1, 3);
        assert_eq!(step.to_string(), "-x_1_3*x_2_2 + x_1_3*x_3_1");
        // f_{4,1} carries x_{1,3}(x_{2,2} - x_{3,1}), the negative of `step`
        let f41 = &(-Polynomial::x(1, 2) + Polynomial::x(2, 1)) - &step;
        assert_eq!(f41.to_string(), "-x_1_2 + x_1_3*x_2_2 - x_1_3*x_3_1 + x_2_1");
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = Polynomial::x(1, 1);
        let b = a.reduce_mod(3);
        for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul] {
            assert_eq!(
                poly_arith(&a, &b, op),
                Err(PolyError::DomainMismatch(Domain::Integers, Domain::PrimeField(3)))
            );
        }
    }

    #[test]
    fn prime_field_normalizes() {
        let x = Polynomial::x(1, 1).reduce_mod(3);
        let three_x = x.scale(&BigInt::from(3));
        assert!(three_x.is_zero());
        let minus = -&x;
        assert_eq!(minus.coefficient(&Monomial::var(Variable::x(1, 1))), BigInt::from(2));
    }

    #[test]
    fn substitute_examples() {
        let target: BTreeSet<Variable> = [Variable::z(2, 1), Variable::z(1, 2)].into();
        let sigma: BTreeMap<Variable, Polynomial> = [
            (Variable::x(2, 2), Polynomial::z(2, 1)),
            (Variable::x(3, 1), Polynomial::zero(Domain::Integers)),
        ]
        .into();
        let p = -Polynomial::x(2, 2) + Polynomial::x(3, 1);
        assert_eq!(p.substitute(&sigma, &target).unwrap(), -Polynomial::z(2, 1));
        assert!(Polynomial::zero(Domain::Integers)
            .substitute(&sigma, &target)
            .unwrap()
            .is_zero());
        let sigma2: BTreeMap<Variable, Polynomial> = [
            (Variable::x(1, 1), Polynomial::z(1, 2)),
            (Variable::x(2, 2), Polynomial::z(2, 1)),
        ]
        .into();
        let m = Polynomial::x(1, 1) * Polynomial::x(2, 2);
        assert_eq!(
            m.substitute(&sigma2, &target).unwrap(),
            Polynomial::z(1, 2) * Polynomial::z(2, 1)
        );
    }

    #[test]
    fn substitute_rejects_unknown_variables() {
        let target: BTreeSet<Variable> = [Variable::z(1, 1)].into();
        let sigma: BTreeMap<Variable, Polynomial> = BTreeMap::new();
        assert_eq!(
            Polynomial::x(1, 1).substitute(&sigma, &target),
            Err(PolyError::UnknownVariable(Variable::x(1, 1)))
        );
        let sigma: BTreeMap<Variable, Polynomial> =
            [(Variable::x(1, 1), Polynomial::z(5, 5))].into();
        assert_eq!(
            Polynomial::x(1, 1).substitute(&sigma, &target),
            Err(PolyError::UnknownVariable(Variable::z(5, 5)))
        );
        // identity on declared target variables
        let sigma = BTreeMap::new();
        assert_eq!(
            Polynomial::z(1, 1).substitute(&sigma, &target).unwrap(),
            Polynomial::z(1, 1)
        );
    }

    #[test]
    fn evaluate_at_point() {
        let p = Polynomial::x(1, 1).pow(2) - Polynomial::x(2, 1) + int(4);
        let point: BTreeMap<Variable, BigInt> = [
            (Variable::x(1, 1), BigInt::from(-3)),
            (Variable::x(2, 1), BigInt::from(5)),
        ]
        .into();
        assert_eq!(p.evaluate(&point).unwrap(), BigInt::from(8));
        assert!(p.evaluate(&BTreeMap::new()).is_err());
    }
}
