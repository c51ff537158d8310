//! The positive grading on the cell coordinates coming from the circle
//! action, and Hilbert series of the cell quotients.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cells::{cell_variables, generator_positions};
use crate::combinat::{is_fixed_point, v_of_w, HessenbergFunction, Permutation};
use crate::groebner::TriangularReport;
use crate::polyring::{Polynomial, Variable};

pub const DEFAULT_TRUNCATION: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("{w} is not a fixed point for h = {h}")]
    NotFixedPoint { w: Permutation, h: HessenbergFunction },
    #[error("Hessenberg function {0} is decomposable")]
    Decomposable(HessenbergFunction),
    #[error("permutation has size {0} but Hessenberg function has size {1}")]
    SizeMismatch(usize, usize),
    #[error("truncation order must be at least 1")]
    BadTruncation,
    #[error("the triangular analysis did not pass")]
    NotTriangular,
    #[error("variable {0} has no weight")]
    Unweighted(Variable),
    #[error("series coefficient overflowed")]
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedWeights {
    pub weights: BTreeMap<Variable, u32>,
}

impl GradedWeights {
    pub fn weight(&self, v: Variable) -> Option<u32> {
        self.weights.get(&v).copied()
    }
}

/// `deg z_{i,j} = w(j) - i`, checked against the pullback form
/// `w_0(v_w(j)) - i`.
pub fn weights_for(w: &Permutation) -> GradedWeights {
    let n = w.n();
    let v = v_of_w(w);
    let weights = cell_variables(w)
        .into_iter()
        .map(|z| {
            let (i, j) = (z.row(), z.col());
            let action = w.apply(j) as i64 - i as i64;
            let pullback = (n + 1 - v.apply(j)) as i64 - i as i64;
            assert_eq!(action, pullback, "degree formulas disagree on {z} for w = {w}");
            assert!(action > 0, "non-positive weight on {z} for w = {w}");
            (z, action as u32)
        })
        .collect();
    GradedWeights { weights }
}

/// The common weighted degree of all terms; `None` when two terms differ
/// or when `p` is zero. Constants have degree 0.
pub fn is_homogeneous(p: &Polynomial, wt: &GradedWeights) -> Result<Option<u32>, HilbertError> {
    let mut degree = None;
    for (m, _) in p.terms() {
        let mut d = 0;
        for &(v, e) in m.factors() {
            d += wt.weight(v).ok_or(HilbertError::Unweighted(v))? * e;
        }
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(degree)
}

/// `∏(1 - t^a) / ∏(1 - t^b)` stored as the raw exponent multisets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeriesRational {
    #[serde(rename = "numeratorFactors")]
    pub numerator: Vec<u32>,
    #[serde(rename = "denominatorFactors")]
    pub denominator: Vec<u32>,
}

impl HilbertSeriesRational {
    pub fn new(mut numerator: Vec<u32>, mut denominator: Vec<u32>) -> Self {
        assert!(numerator.iter().chain(&denominator).all(|&e| e >= 1));
        numerator.sort_unstable();
        denominator.sort_unstable();
        Self { numerator, denominator }
    }

    /// Removes factors common to numerator and denominator.
    pub fn cancelled(&self) -> Self {
        let mut num = Vec::new();
        let mut den = self.denominator.clone();
        for &e in &self.numerator {
            match den.iter().position(|&d| d == e) {
                Some(idx) => {
                    den.remove(idx);
                }
                None => num.push(e),
            }
        }
        Self::new(num, den)
    }

    /// Coefficients of `t^0, ..., t^trunc`.
    pub fn expand(&self, trunc: usize) -> Result<Vec<i64>, HilbertError> {
        let mut c = vec![0i64; trunc + 1];
        c[0] = 1;
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..=trunc {
                c[i] = c[i].checked_add(c[i - d]).ok_or(HilbertError::Overflow)?;
            }
        }
        for &e in &self.numerator {
            let e = e as usize;
            for i in (e..=trunc).rev() {
                c[i] = c[i].checked_sub(c[i - e]).ok_or(HilbertError::Overflow)?;
            }
        }
        Ok(c)
    }
}

impl std::fmt::Display for HilbertSeriesRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |es: &[u32]| -> String {
            if es.is_empty() {
                return "1".into();
            }
            es.iter()
                .map(|&e| if e == 1 { "(1-t)".into() } else { format!("(1-t^{e})") })
                .collect::<Vec<String>>()
                .join("")
        };
        write!(f, "{} / {}", side(&self.numerator), side(&self.denominator))
    }
}

/// Closed form: one numerator factor of degree `v_w(k) - v_w(ℓ) - 1` per
/// nonzero generator, one denominator factor of degree `w(j) - i` per cell
/// variable.
pub fn hilbert_formula(w: &Permutation, h: &HessenbergFunction) -> Result<HilbertSeriesRational, HilbertError> {
    if w.n() != h.n() {
        return Err(HilbertError::SizeMismatch(w.n(), h.n()));
    }
    if !h.is_indecomposable() {
        return Err(HilbertError::Decomposable(h.clone()));
    }
    if !is_fixed_point(w, h) {
        return Err(HilbertError::NotFixedPoint {
            w: w.clone(),
            h: h.clone(),
        });
    }
    let v = v_of_w(w);
    let numerator = generator_positions(h)
        .into_iter()
        .filter(|&(k, l)| v.apply(k) > v.apply(l) + 1)
        .map(|(k, l)| (v.apply(k) - v.apply(l) - 1) as u32)
        .collect();
    let denominator = weights_for(w).weights.into_values().collect();
    Ok(HilbertSeriesRational::new(numerator, denominator))
}

/// Expansion of `∏_{free v} 1/(1 - t^{wt(v)})`, the Hilbert series of the
/// quotient by the initial ideal when that ideal is generated by variables.
pub fn hilbert_oracle(
    report: &TriangularReport,
    wt: &GradedWeights,
    trunc: usize,
) -> Result<Vec<i64>, HilbertError> {
    if trunc < 1 {
        return Err(HilbertError::BadTruncation);
    }
    if !report.is_triangular {
        return Err(HilbertError::NotTriangular);
    }
    let mut c = vec![0i64; trunc + 1];
    c[0] = 1;
    for &v in &report.free_variables {
        let d = wt.weight(v).ok_or(HilbertError::Unweighted(v))? as usize;
        // multiply by 1 + t^d + t^{2d} + ...
        for i in d..=trunc {
            c[i] = c[i].checked_add(c[i - d]).ok_or(HilbertError::Overflow)?;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{build_ideal, cell_generators, IdealKind};
    use crate::combinat::fixed_points;
    use crate::groebner::{order_n_w, triangular_analysis};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn h(s: &str) -> HessenbergFunction {
        s.parse().unwrap()
    }

    #[test]
    fn weights_for_3421() {
        let wt = weights_for(&p("3421"));
        let got: Vec<(String, u32)> = wt.weights.iter().map(|(v, d)| (v.to_string(), *d)).collect();
        let expected = [("z_1_1", 2), ("z_1_2", 3), ("z_1_3", 1), ("z_2_1", 1), ("z_2_2", 2)];
        assert_eq!(got, expected.map(|(s, d)| (s.to_string(), d)));
    }

    #[test]
    fn weights_for_w0_and_positivity() {
        for n in 1..=6 {
            let wt = weights_for(&Permutation::longest(n));
            for (z, d) in &wt.weights {
                assert_eq!(*d as usize, n + 1 - z.col() - z.row());
            }
            for w in Permutation::all(n) {
                assert!(weights_for(&w).weights.values().all(|&d| d >= 1));
            }
        }
    }

    #[test]
    fn homogeneity_examples() {
        let w = p("3421");
        let wt = weights_for(&w);
        let g = cell_generators(&w);
        assert_eq!(is_homogeneous(g.get(4, 2), &wt).unwrap(), Some(2));
        assert_eq!(is_homogeneous(g.get(4, 1), &wt).unwrap(), Some(1));
        let mixed = &Polynomial::z(1, 1) + &Polynomial::z(1, 2);
        assert_eq!(is_homogeneous(&mixed, &wt).unwrap(), None);
        assert_eq!(is_homogeneous(&Polynomial::constant(5, crate::polyring::Domain::Integers), &wt).unwrap(), Some(0));
        assert_eq!(is_homogeneous(&Polynomial::zero(crate::polyring::Domain::Integers), &wt).unwrap(), None);
        assert_eq!(
            is_homogeneous(&Polynomial::z(3, 3), &wt),
            Err(HilbertError::Unweighted(Variable::z(3, 3)))
        );
    }

    #[test]
    fn generators_have_the_predicted_degree() {
        for n in 1..=5 {
            for hh in HessenbergFunction::enumerate(n, true) {
                for w in fixed_points(&hh) {
                    let v = v_of_w(&w);
                    let wt = weights_for(&w);
                    let ideal = build_ideal(&w, &hh, IdealKind::Cell).unwrap();
                    for g in ideal.nonzero_generators() {
                        let expected = (v.apply(g.k) - v.apply(g.l) - 1) as u32;
                        assert_eq!(is_homogeneous(&g.poly, &wt).unwrap(), Some(expected));
                    }
                }
            }
        }
    }

    #[test]
    fn formula_for_3421() {
        let s = hilbert_formula(&p("3421"), &h("3,3,4,4")).unwrap();
        assert_eq!(s.numerator, vec![1, 2]);
        assert_eq!(s.denominator, vec![1, 1, 2, 2, 3]);
        assert_eq!(s.cancelled(), HilbertSeriesRational::new(vec![], vec![1, 2, 3]));
        assert_eq!(s.expand(6).unwrap(), vec![1, 1, 2, 3, 4, 5, 7]);
        assert_eq!(s.to_string(), "(1-t)(1-t^2) / (1-t)(1-t)(1-t^2)(1-t^2)(1-t^3)");
        assert!(matches!(
            hilbert_formula(&p("3421"), &h("2,3,4,4")),
            Err(HilbertError::NotFixedPoint { .. })
        ));
    }

    #[test]
    fn formula_edge_cases() {
        for n in 1..=4 {
            let full = HessenbergFunction::full(n);
            for w in Permutation::all(n) {
                let s = hilbert_formula(&w, &full).unwrap();
                assert!(s.numerator.is_empty());
                assert_eq!(s.denominator.len(), w.length());
            }
        }
        for n in 3..=6 {
            let hh = HessenbergFunction::minimal_indecomposable(n);
            let s = hilbert_formula(&Permutation::longest(n), &hh).unwrap();
            let mut expected: Vec<u32> = (1..=n)
                .flat_map(|l| (l + 2..=n).map(move |k| (k - l - 1) as u32))
                .collect();
            expected.sort_unstable();
            assert_eq!(s.numerator.len(), hh.lambda().1);
            assert_eq!(s.numerator, expected);
        }
    }

    /// Direct count of monomials of each weighted degree in the free
    /// variables, independent of the product expansion.
    fn count_monomials(weights: &[u32], trunc: usize) -> Vec<i64> {
        fn go(weights: &[u32], budget: usize, acc: usize, out: &mut [i64]) {
            match weights.split_first() {
                None => out[acc] += 1,
                Some((&d, rest)) => {
                    let mut used = acc;
                    while used <= budget {
                        go(rest, budget, used, out);
                        used += d as usize;
                    }
                }
            }
        }
        let mut out = vec![0; trunc + 1];
        go(weights, trunc, 0, &mut out);
        out
    }

    #[test]
    fn oracle_examples() {
        let w = p("3421");
        let ideal = build_ideal(&w, &h("3,3,4,4"), IdealKind::Cell).unwrap();
        let report = triangular_analysis(&ideal, &order_n_w(&w)).unwrap();
        let wt = weights_for(&w);
        assert_eq!(hilbert_oracle(&report, &wt, 6).unwrap(), vec![1, 1, 2, 3, 4, 5, 7]);
        assert_eq!(count_monomials(&[3, 1, 2], 6), vec![1, 1, 2, 3, 4, 5, 7]);
        assert_eq!(hilbert_oracle(&report, &wt, 0), Err(HilbertError::BadTruncation));

        let id = Permutation::identity(3);
        let ideal = build_ideal(&id, &HessenbergFunction::full(3), IdealKind::Cell).unwrap();
        let report = triangular_analysis(&ideal, &order_n_w(&id)).unwrap();
        assert_eq!(hilbert_oracle(&report, &weights_for(&id), 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn formula_matches_oracle_to_order_20() {
        for n in 1..=5 {
            for hh in HessenbergFunction::enumerate(n, true) {
                for w in fixed_points(&hh) {
                    let ideal = build_ideal(&w, &hh, IdealKind::Cell).unwrap();
                    let report = triangular_analysis(&ideal, &order_n_w(&w)).unwrap();
                    let wt = weights_for(&w);
                    let oracle = hilbert_oracle(&report, &wt, 20).unwrap();
                    let formula = hilbert_formula(&w, &hh).unwrap().expand(20).unwrap();
                    assert_eq!(formula, oracle, "w = {w}, h = {hh}");
                    assert_eq!(oracle[0], 1);
                    assert!(oracle.iter().all(|&c| c >= 0));
                    let free: Vec<u32> = report.free_variables.iter().map(|v| wt.weights[v]).collect();
                    assert_eq!(count_monomials(&free, 20), oracle);
                }
            }
        }
    }
}
