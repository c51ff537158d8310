//! General Buchberger completion over ℚ or 𝔽_p, independent of the
//! triangular structure of the generators. Meant for small inputs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::division::{divides, lcm_exps, quotient_exps};
use super::{GroebnerError, MonomialOrder};
use crate::polyring::{Domain, Polynomial};

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Copy)]
struct Field<'a> {
    modulus: Option<&'a BigInt>,
}

impl Field<'_> {
    fn norm(&self, q: BigRational) -> BigRational {
        match self.modulus {
            None => q,
            Some(p) => BigRational::from_integer(q.to_integer().mod_floor(p)),
        }
    }

    fn inv(&self, q: &BigRational) -> BigRational {
        match self.modulus {
            None => q.recip(),
            Some(p) => BigRational::from_integer(q.to_integer().modpow(&(p - 2u32), p)),
        }
    }
}

type FPoly = BTreeMap<Vec<u32>, BigRational>;

struct Engine<'a> {
    field: Field<'a>,
    budget: u64,
    steps: u64,
}

impl Engine<'_> {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(GroebnerError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn add_term(&self, p: &mut FPoly, e: Vec<u32>, c: BigRational) {
        let current = p.remove(&e).unwrap_or_else(BigRational::zero);
        let sum = self.field.norm(current + c);
        if !sum.is_zero() {
            p.insert(e, sum);
        }
    }

    fn monic(&self, p: &FPoly) -> FPoly {
        let lc = p.last_key_value().map(|(_, c)| self.field.inv(c)).unwrap_or_else(BigRational::one);
        p.iter().map(|(e, c)| (e.clone(), self.field.norm(c * &lc))).collect()
    }

    /// Full reduction of `p` by monic `basis`, skipping index `skip`.
    fn reduce(&mut self, p: &FPoly, basis: &[FPoly], skip: Option<usize>) -> Result<FPoly, GroebnerError> {
        let mut work = p.clone();
        let mut rem = FPoly::new();
        while let Some((lead, lc)) = work.pop_last() {
            let hit = basis
                .iter()
                .enumerate()
                .filter(|&(i, _)| Some(i) != skip)
                .find(|(_, g)| divides(g.last_key_value().expect("nonzero basis").0, &lead));
            match hit {
                Some((_, g)) => {
                    self.tick()?;
                    let shift = quotient_exps(&lead, g.last_key_value().expect("nonzero basis").0);
                    let mut tail = g.clone();
                    tail.pop_last();
                    for (e, c) in tail {
                        let moved: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        self.add_term(&mut work, moved, -(&lc * c));
                    }
                }
                None => {
                    rem.insert(lead, lc);
                }
            }
        }
        Ok(rem)
    }

    fn s_poly(&self, f: &FPoly, g: &FPoly) -> FPoly {
        let (lf, _) = f.last_key_value().expect("nonzero");
        let (lg, _) = g.last_key_value().expect("nonzero");
        let l = lcm_exps(lf, lg);
        let (sf, sg) = (quotient_exps(&l, lf), quotient_exps(&l, lg));
        let mut out = FPoly::new();
        for (e, c) in f {
            self.add_term(&mut out, e.iter().zip(&sf).map(|(a, b)| a + b).collect(), c.clone());
        }
        for (e, c) in g {
            self.add_term(&mut out, e.iter().zip(&sg).map(|(a, b)| a + b).collect(), -c.clone());
        }
        out
    }
}

fn is_constant(p: &FPoly) -> bool {
    p.len() == 1 && p.keys().next().is_some_and(|e| e.iter().all(|&x| x == 0))
}

/// The reduced Gröbner basis of the ideal generated by `gs`, sorted by
/// leading monomial (largest first). Over ℤ the computation runs over ℚ
/// and each element is returned as the primitive integer multiple of its
/// monic form. The unit ideal gives `[1]`.
pub fn reduced_gb_oracle(
    gs: &[Polynomial],
    ord: &MonomialOrder,
    budget: u64,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let domain = gs.first().map(|g| g.domain()).unwrap_or(Domain::Integers);
    if let Some(g) = gs.iter().find(|g| g.domain() != domain) {
        return Err(GroebnerError::DomainMismatch(domain, g.domain()));
    }
    let modulus = match domain {
        Domain::Integers => None,
        Domain::PrimeField(p) => Some(BigInt::from(p)),
    };
    let mut engine = Engine {
        field: Field {
            modulus: modulus.as_ref(),
        },
        budget,
        steps: 0,
    };

    let mut basis: Vec<FPoly> = Vec::new();
    for g in gs {
        let mut f = FPoly::new();
        for (m, c) in g.terms() {
            engine.add_term(&mut f, ord.exponents(m)?, BigRational::from_integer(c.clone()));
        }
        if !f.is_empty() {
            basis.push(engine.monic(&f));
        }
    }
    let unit = || Ok(vec![Polynomial::one(domain)]);
    if basis.iter().any(is_constant) {
        return unit();
    }

    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let s = engine.s_poly(&basis[i], &basis[j]);
        let r = engine.reduce(&s, &basis, None)?;
        if r.is_empty() {
            continue;
        }
        let r = engine.monic(&r);
        if is_constant(&r) {
            return unit();
        }
        let k = basis.len();
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }

    // Minimalize, then interreduce.
    let leads: Vec<Vec<u32>> = basis.iter().map(|g| g.last_key_value().expect("nonzero").0.clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i && divides(&leads[j], &leads[i]) && (leads[j] != leads[i] || j < i)
            })
        })
        .collect();
    let mut minimal: Vec<FPoly> = keep.into_iter().map(|i| basis[i].clone()).collect();
    for i in 0..minimal.len() {
        let r = engine.reduce(&minimal[i], &minimal, Some(i))?;
        minimal[i] = engine.monic(&r);
    }
    minimal.sort_by(|a, b| b.last_key_value().map(|x| x.0).cmp(&a.last_key_value().map(|x| x.0)));
    Ok(minimal.iter().map(|f| to_integer_poly(f, ord, domain)).collect())
}

fn to_integer_poly(f: &FPoly, ord: &MonomialOrder, domain: Domain) -> Polynomial {
    let denom = f.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<(BigInt, Vec<u32>)> = f
        .iter()
        .map(|(e, c)| ((c * BigRational::from_integer(denom.clone())).to_integer(), e.clone()))
        .collect();
    let content = scaled.iter().fold(BigInt::zero(), |acc, (c, _)| acc.gcd(c));
    let content = if content.is_zero() || domain != Domain::Integers {
        BigInt::one()
    } else {
        content
    };
    Polynomial::from_terms(
        domain,
        scaled.into_iter().map(|(c, e)| (c / &content, ord.monomial(&e))),
    )
}
