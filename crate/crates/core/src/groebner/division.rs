use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{GroebnerError, MonomialOrder};
use crate::cells::IdealPresentation;
use crate::polyring::{Domain, Polynomial};

/// Polynomial keyed by exponent vectors of a fixed order, so the last key
/// is the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense {
    pub domain: Domain,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Dense {
    pub fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Result<Self, GroebnerError> {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            terms.insert(ord.exponents(m)?, c.clone());
        }
        Ok(Self {
            domain: p.domain(),
            terms,
        })
    }

    pub fn to_poly(&self, ord: &MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            self.domain,
            self.terms.iter().map(|(e, c)| (c.clone(), ord.monomial(e))),
        )
    }

    pub fn zero(domain: Domain) -> Self {
        Self {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.last_key_value()
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        match self.domain {
            Domain::Integers => c,
            Domain::PrimeField(p) => c.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        let current = self.terms.remove(&e).unwrap_or_default();
        let sum = self.normalize(current + c);
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    /// `self -= c · x^shift · g`.
    pub fn sub_multiple(&mut self, c: &BigInt, shift: &[u32], g: &Dense) {
        for (e, d) in &g.terms {
            let moved: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(moved, -(c * d));
        }
    }

    pub fn mul_term(&self, c: &BigInt, shift: &[u32]) -> Dense {
        let mut out = Dense::zero(self.domain);
        for (e, d) in &self.terms {
            let moved: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.add_term(moved, c * d);
        }
        out
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn quotient_exps(num: &[u32], den: &[u32]) -> Vec<u32> {
    num.iter().zip(den).map(|(a, b)| a - b).collect()
}

pub(crate) fn lcm_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Inverse of a leading coefficient: over ℤ only `±1` qualifies.
fn unit_inverse(c: &BigInt, domain: Domain) -> Result<BigInt, GroebnerError> {
    match domain {
        Domain::Integers if c.abs() == BigInt::from(1) => Ok(c.clone()),
        Domain::Integers => Err(GroebnerError::NonUnitLeadingCoefficient(c.clone())),
        Domain::PrimeField(p) => {
            let p = BigInt::from(p);
            let c = c.mod_floor(&p);
            if c.is_zero() {
                return Err(GroebnerError::NonUnitLeadingCoefficient(c));
            }
            Ok(c.modpow(&(&p - 2), &p))
        }
    }
}

/// Divisor with its leading data precomputed.
pub(crate) struct Divisor {
    pub poly: Dense,
    pub lead: Vec<u32>,
    pub lead_inv: BigInt,
}

impl Divisor {
    pub fn new(poly: Dense) -> Result<Self, GroebnerError> {
        let (lead, lc) = poly.leading().ok_or(GroebnerError::ZeroPolynomial)?;
        let lead_inv = unit_inverse(lc, poly.domain)?;
        Ok(Self {
            lead: lead.clone(),
            lead_inv,
            poly,
        })
    }
}

/// Multivariate division. Returns the quotients (as dense polynomials) and
/// the remainder. `budget` caps the number of elimination steps.
pub(crate) fn divide_dense(
    p: &Dense,
    divisors: &[Divisor],
    budget: Option<u64>,
) -> Result<(Vec<Dense>, Dense), GroebnerError> {
    let mut work = p.clone();
    let mut remainder = Dense::zero(p.domain);
    let mut quotients = vec![Dense::zero(p.domain); divisors.len()];
    let mut steps = 0u64;
    while let Some((lead, lc)) = work.terms.pop_last() {
        match divisors.iter().position(|d| divides(&d.lead, &lead)) {
            Some(idx) => {
                steps += 1;
                if budget.is_some_and(|b| steps > b) {
                    return Err(GroebnerError::BudgetExceeded(budget.unwrap_or_default()));
                }
                let d = &divisors[idx];
                let shift = quotient_exps(&lead, &d.lead);
                let c = work.normalize(&lc * &d.lead_inv);
                quotients[idx].add_term(shift.clone(), c.clone());
                // The leading term was popped already; subtract the tail only.
                let mut tail = d.poly.clone();
                tail.terms.pop_last();
                work.sub_multiple(&c, &shift, &tail);
            }
            None => {
                remainder.terms.insert(lead, lc);
            }
        }
    }
    Ok((quotients, remainder))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn check_domains(p: &Polynomial, gs: &[Polynomial]) -> Result<(), GroebnerError> {
    match gs.iter().find(|g| g.domain() != p.domain()) {
        Some(g) => Err(GroebnerError::DomainMismatch(p.domain(), g.domain())),
        None => Ok(()),
    }
}

/// Divides `p` by `gs` in list order, always eliminating the leading term of
/// the running dividend first. Leading coefficients must be units (`±1`
/// over ℤ).
pub fn reduce(p: &Polynomial, gs: &[Polynomial], ord: &MonomialOrder) -> Result<Division, GroebnerError> {
    check_domains(p, gs)?;
    let divisors = gs
        .iter()
        .map(|g| Divisor::new(Dense::from_poly(g, ord)?))
        .collect::<Result<Vec<_>, _>>()?;
    let (qs, r) = divide_dense(&Dense::from_poly(p, ord)?, &divisors, None)?;
    Ok(Division {
        quotients: qs.iter().map(|q| q.to_poly(ord)).collect(),
        remainder: r.to_poly(ord),
    })
}

/// S-polynomial of two divisors with unit leading coefficients, scaled so
/// the leading terms cancel.
pub(crate) fn s_polynomial(f: &Divisor, g: &Divisor) -> Dense {
    let l = lcm_exps(&f.lead, &g.lead);
    let mut s = f.poly.mul_term(&f.lead_inv, &quotient_exps(&l, &f.lead));
    s.sub_multiple(&g.lead_inv, &quotient_exps(&l, &g.lead), &g.poly);
    s
}

/// `true` iff every S-polynomial of the nonzero members of `gs` reduces to
/// zero modulo `gs`. No pair is skipped.
pub fn buchberger_check_polys(gs: &[Polynomial], ord: &MonomialOrder) -> Result<bool, GroebnerError> {
    let nonzero: Vec<&Polynomial> = gs.iter().filter(|g| !g.is_zero()).collect();
    if let Some(first) = nonzero.first() {
        let owned: Vec<Polynomial> = nonzero.iter().map(|g| (*g).clone()).collect();
        check_domains(first, &owned)?;
    }
    let divisors = nonzero
        .iter()
        .map(|g| Divisor::new(Dense::from_poly(g, ord)?))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..divisors.len())
        .flat_map(|i| (i + 1..divisors.len()).map(move |j| (i, j)))
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| {
            let s = s_polynomial(&divisors[i], &divisors[j]);
            divide_dense(&s, &divisors, None).map(|(_, r)| r.is_zero())
        })
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(results.into_iter().all(|ok| ok))
}

pub fn buchberger_check(ideal: &IdealPresentation, ord: &MonomialOrder) -> Result<bool, GroebnerError> {
    buchberger_check_polys(&ideal.nonzero_polys(), ord)
}
