use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::{initial_term, GroebnerError, MonomialOrder, Term};
use crate::cells::{Generator, IdealPresentation};
use crate::polyring::{Polynomial, Variable};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TriangularReport {
    pub is_triangular: bool,
    /// Every initial term is `±` a single variable.
    pub single_variable_initials: bool,
    pub distinct_initials: bool,
    /// No initial variable occurs in a later generator of the ordering.
    pub no_later_divisibility: bool,
    pub ordered_generators: Vec<Generator>,
    pub initial_terms: Vec<Term>,
    pub height: usize,
    pub free_variables: Vec<Variable>,
    /// Dimension of the quotient when it is a free polynomial ring.
    pub quotient_dimension: Option<usize>,
    /// The initial ideal is generated by distinct variables, so it is
    /// squarefree and the ideal is radical.
    pub squarefree_initial_ideal: bool,
    /// Hypothesis of the variable-initial-ideal criterion for geometric
    /// vertex decomposability.
    pub gvd_hypothesis: bool,
}

impl TriangularReport {
    pub fn initial_variables(&self) -> Vec<Variable> {
        self.initial_terms
            .iter()
            .filter_map(|t| t.as_signed_variable().map(|(_, v)| v))
            .collect()
    }
}

/// Checks the triangular complete-intersection structure of the nonzero
/// generators. The generators are ordered so that later ones never contain
/// earlier initial variables, preferring larger initial terms first; if no
/// such ordering exists the flag is cleared and the initial-term order is
/// reported.
pub fn triangular_analysis(
    ideal: &IdealPresentation,
    ord: &MonomialOrder,
) -> Result<TriangularReport, GroebnerError> {
    let gens: Vec<Generator> = ideal.nonzero_generators().cloned().collect();
    analyze(gens, &ideal.ambient, ord)
}

pub fn triangular_analysis_polys(
    polys: &[Polynomial],
    ambient: &[Variable],
    ord: &MonomialOrder,
) -> Result<TriangularReport, GroebnerError> {
    let gens = polys
        .iter()
        .filter(|p| !p.is_zero())
        .enumerate()
        .map(|(idx, p)| Generator {
            k: idx + 1,
            l: 0,
            poly: p.clone(),
        })
        .collect();
    analyze(gens, ambient, ord)
}

fn analyze(
    gens: Vec<Generator>,
    ambient: &[Variable],
    ord: &MonomialOrder,
) -> Result<TriangularReport, GroebnerError> {
    let mut items: Vec<(Vec<u32>, Term, Generator)> = Vec::with_capacity(gens.len());
    for g in gens {
        let t = initial_term(&g.poly, ord)?;
        items.push((ord.exponents(&t.monomial)?, t, g));
    }
    items.sort_by(|a, b| b.0.cmp(&a.0));

    let single = items.iter().all(|(_, t, _)| t.as_signed_variable().is_some());
    let lead_set: BTreeSet<&Vec<u32>> = items.iter().map(|(e, _, _)| e).collect();
    let distinct = lead_set.len() == items.len();

    let (ordered, no_later) = if single && distinct {
        match topological_order(&items) {
            Some(order) => (order, true),
            None => ((0..items.len()).collect(), false),
        }
    } else {
        ((0..items.len()).collect(), false)
    };

    let is_triangular = single && distinct && no_later;
    let initial_terms: Vec<Term> = ordered.iter().map(|&i| items[i].1.clone()).collect();
    let ordered_generators: Vec<Generator> = ordered.iter().map(|&i| items[i].2.clone()).collect();
    let initial_vars: BTreeSet<Variable> = initial_terms
        .iter()
        .filter_map(|t| t.as_signed_variable().map(|(_, v)| v))
        .collect();
    let free_variables: Vec<Variable> = ambient
        .iter()
        .copied()
        .filter(|v| !initial_vars.contains(v))
        .collect();
    let height = ordered_generators.len();
    Ok(TriangularReport {
        is_triangular,
        single_variable_initials: single,
        distinct_initials: distinct,
        no_later_divisibility: no_later,
        quotient_dimension: is_triangular.then_some(free_variables.len()),
        squarefree_initial_ideal: single && distinct,
        gvd_hypothesis: single && distinct,
        ordered_generators,
        initial_terms,
        height,
        free_variables,
    })
}

/// An order of `items` in which the initial variable of each entry occurs
/// in no later entry. Among the available choices the largest initial term
/// is taken first, so the result is deterministic.
fn topological_order(items: &[(Vec<u32>, Term, Generator)]) -> Option<Vec<usize>> {
    let vars: Vec<Variable> = items
        .iter()
        .map(|(_, t, _)| t.monomial.as_variable().expect("checked single-variable initial"))
        .collect();
    let supports: Vec<BTreeSet<Variable>> = items.iter().map(|(_, _, g)| g.poly.variables()).collect();
    let mut placed = vec![false; items.len()];
    let mut out = Vec::with_capacity(items.len());
    while out.len() < items.len() {
        // i may go next when no other unplaced generator contains vars[i].
        let next = (0..items.len()).find(|&i| {
            !placed[i] && (0..items.len()).all(|j| j == i || placed[j] || !supports[j].contains(&vars[i]))
        })?;
        placed[next] = true;
        out.push(next);
    }
    Some(out)
}

/// Extends an assignment of the free variables to a zero of every
/// generator by solving `±v + (lower terms) = 0` from the last generator
/// back to the first.
pub fn solve_triangular(
    report: &TriangularReport,
    free_values: &BTreeMap<Variable, BigInt>,
) -> Result<BTreeMap<Variable, BigInt>, GroebnerError> {
    if !report.is_triangular {
        return Err(GroebnerError::NotTriangular);
    }
    let mut point = free_values.clone();
    for (g, t) in report.ordered_generators.iter().zip(&report.initial_terms).rev() {
        let (negative, v) = t.as_signed_variable().ok_or(GroebnerError::NotTriangular)?;
        let mut rest = g.poly.clone();
        rest.add_term(t.monomial.clone(), -t.coeff.clone());
        let value = rest.evaluate(&point).map_err(GroebnerError::Poly)?;
        // ±v + rest = 0
        point.insert(v, if negative { value } else { -value });
    }
    Ok(point)
}
