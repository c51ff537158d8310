use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::GroebnerError;
use crate::cells::{cell_variables, patch_variables};
use crate::combinat::{v_of_w, Permutation};
use crate::polyring::{Monomial, Polynomial, Variable};

/// Lexicographic order with respect to a priority list of variables,
/// highest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    priority: Vec<Variable>,
    rank: HashMap<Variable, usize>,
}

impl MonomialOrder {
    pub fn lex(priority: Vec<Variable>) -> Result<Self, GroebnerError> {
        let mut rank = HashMap::with_capacity(priority.len());
        for (idx, &v) in priority.iter().enumerate() {
            if rank.insert(v, idx).is_some() {
                return Err(GroebnerError::DuplicateVariable(v));
            }
        }
        Ok(Self { priority, rank })
    }

    pub fn priority(&self) -> &[Variable] {
        &self.priority
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.rank.contains_key(&v)
    }

    /// Exponent vector in priority order. Lexicographic comparison of these
    /// vectors is the monomial order.
    pub fn exponents(&self, m: &Monomial) -> Result<Vec<u32>, GroebnerError> {
        let mut out = vec![0; self.priority.len()];
        for &(v, e) in m.factors() {
            let idx = *self.rank.get(&v).ok_or(GroebnerError::UnknownVariable(v))?;
            out[idx] = e;
        }
        Ok(out)
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::from_pairs(self.priority.iter().copied().zip(exps.iter().copied()))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, GroebnerError> {
        Ok(self.exponents(a)?.cmp(&self.exponents(b)?))
    }
}

/// `<_n` on the `w_0`-patch: `x_{i,j}` beats `x_{i',j'}` when `i < i'`, or
/// `i = i'` and `j < j'`.
pub fn order_n(n: usize) -> MonomialOrder {
    order_patch(&Permutation::longest(n))
}

/// The same row-then-column rule on the patch variables of `𝒩_w`.
pub fn order_patch(w: &Permutation) -> MonomialOrder {
    let mut vars = patch_variables(w);
    vars.sort_by_key(|v| (v.row(), v.col()));
    MonomialOrder::lex(vars).expect("patch variables are distinct")
}

/// `<_n^w` on the cell: `z_{i,j}` beats `z_{i',j'}` when `i < i'`, or
/// `i = i'` and `v_w(j) < v_w(j')`.
pub fn order_n_w(w: &Permutation) -> MonomialOrder {
    let v = v_of_w(w);
    let mut vars = cell_variables(w);
    vars.sort_by_key(|z| (z.row(), v.apply(z.col())));
    MonomialOrder::lex(vars).expect("cell variables are distinct")
}

/// A single term `c·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub monomial: Monomial,
}

impl Term {
    /// `Some((negative, v))` when the term is `±v` for a variable `v`.
    pub fn as_signed_variable(&self) -> Option<(bool, Variable)> {
        if !self.coeff.abs().is_one() {
            return None;
        }
        self.monomial
            .as_variable()
            .map(|v| (self.coeff.is_negative(), v))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.monomial.clone();
        write!(
            f,
            "{}",
            Polynomial::from_terms(crate::polyring::Domain::Integers, [(self.coeff.clone(), m)])
        )
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Largest term of `p` under `ord`, with its coefficient.
pub fn initial_term(p: &Polynomial, ord: &MonomialOrder) -> Result<Term, GroebnerError> {
    let mut best: Option<(Vec<u32>, &Monomial, &BigInt)> = None;
    for (m, c) in p.terms() {
        let e = ord.exponents(m)?;
        if best.as_ref().is_none_or(|(b, _, _)| e > *b) {
            best = Some((e, m, c));
        }
    }
    let (_, m, c) = best.ok_or(GroebnerError::ZeroPolynomial)?;
    Ok(Term {
        coeff: c.clone(),
        monomial: m.clone(),
    })
}
