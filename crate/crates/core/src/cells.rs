//! Coordinates on the patch `𝒩_w` and the Schubert cell `X^w_∘`, the
//! conjugate matrices whose entries generate the Hessenberg ideals, the
//! specialization `ψ_w` from the `w_0`-patch to the cell, and the affine
//! paving statistics.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::combinat::{fixed_points, v_of_w, HessenbergFunction, Permutation};
use crate::polyring::{Domain, PolyError, PolyMatrix, Polynomial, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellsError {
    #[error("Hessenberg function {0} is decomposable")]
    Decomposable(HessenbergFunction),
    #[error("permutation has size {0} but Hessenberg function has size {1}")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

const INT: Domain = Domain::Integers;

/// Variables `x_{i,j}` of the patch `𝒩_w`: those with `j < w⁻¹(i)`.
pub fn patch_variables(w: &Permutation) -> Vec<Variable> {
    let inv = w.inverse();
    let n = w.n();
    (1..=n)
        .flat_map(|i| (1..inv.apply(i)).map(move |j| Variable::x(i, j)))
        .collect()
}

/// Variables `z_{i,j}` of the cell `X^w_∘`: `i < w(j)` and `j < w⁻¹(i)`.
pub fn cell_variables(w: &Permutation) -> Vec<Variable> {
    let inv = w.inverse();
    let n = w.n();
    (1..=n)
        .flat_map(|i| (1..inv.apply(i)).map(move |j| (i, j)))
        .filter(|&(i, j)| i < w.apply(j))
        .map(|(i, j)| Variable::z(i, j))
        .collect()
}

/// The matrix `wM` with `1` at `(w(j), j)`, `0` right of each `1`, and
/// `x_{i,j}` elsewhere.
pub fn build_wm(w: &Permutation) -> PolyMatrix {
    let inv = w.inverse();
    PolyMatrix::from_fn(w.n(), INT, |i, j| {
        if i == w.apply(j) {
            Polynomial::one(INT)
        } else if j > inv.apply(i) {
            Polynomial::zero(INT)
        } else {
            Polynomial::x(i, j)
        }
    })
}

/// The matrix `Ω_w` with `1` at `(w(j), j)`, `0` below or right of each
/// `1`, and `z_{i,j}` elsewhere.
pub fn build_omega(w: &Permutation) -> PolyMatrix {
    let inv = w.inverse();
    PolyMatrix::from_fn(w.n(), INT, |i, j| {
        if i == w.apply(j) {
            Polynomial::one(INT)
        } else if i > w.apply(j) || j > inv.apply(i) {
            Polynomial::zero(INT)
        } else {
            Polynomial::z(i, j)
        }
    })
}

/// `w⁻¹ A`, which is lower unitriangular whenever `A` has its pivots at
/// `(w(j), j)` and zeros to their right.
fn unpermute_rows(w: &Permutation, a: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(a.n(), a.domain(), |i, j| a.get(w.apply(i), j).clone())
}

/// `(wM)⁻¹`, computed without fractions.
pub fn wm_inverse(w: &Permutation) -> PolyMatrix {
    let m = unpermute_rows(w, &build_wm(w));
    PolyMatrix::inverse_unitriangular_conjugate(w, &m).expect("w⁻¹(wM) is unitriangular")
}

/// `Ω_w⁻¹` by the permuted-triangular route.
pub fn omega_inverse(w: &Permutation) -> PolyMatrix {
    let l = unpermute_rows(w, &build_omega(w));
    PolyMatrix::inverse_unitriangular_conjugate(w, &l).expect("w⁻¹Ω_w is unitriangular")
}

fn conjugate_nilpotent(inv: &PolyMatrix, a: &PolyMatrix) -> PolyMatrix {
    let nil = PolyMatrix::nilpotent(a.n(), a.domain());
    inv.mat_mul(&nil)
        .and_then(|t| t.mat_mul(a))
        .expect("square matrices of one size and domain")
}

/// The matrix of `f^w_{k,ℓ} = [(wM)⁻¹ N (wM)]_{k,ℓ}`.
pub fn patch_generators(w: &Permutation) -> PolyMatrix {
    conjugate_nilpotent(&wm_inverse(w), &build_wm(w))
}

/// The matrix of `g^w_{k,ℓ} = [Ω_w⁻¹ N Ω_w]_{k,ℓ}`.
pub fn cell_generators(w: &Permutation) -> PolyMatrix {
    conjugate_nilpotent(&omega_inverse(w), &build_omega(w))
}

/// The specialization `ψ_w : ℤ[x_{w_0}] → ℤ[z_w]`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PsiMap {
    pub w: Permutation,
    pub v_w: Permutation,
    /// `D_w`: patch variables sent to zero.
    #[serde(rename = "dW")]
    pub killed: BTreeSet<Variable>,
    /// Image of each `w_0`-patch variable; `None` for members of `D_w`.
    pub assignment: BTreeMap<Variable, Option<Variable>>,
    #[serde(skip)]
    target: BTreeSet<Variable>,
}

impl PsiMap {
    pub fn new(w: &Permutation) -> Self {
        let n = w.n();
        let v = v_of_w(w);
        let v_inv = v.inverse();
        let w_inv = w.inverse();
        let mut killed = BTreeSet::new();
        let mut assignment = BTreeMap::new();
        for x in patch_variables(&Permutation::longest(n)) {
            let (i, j) = (x.row(), x.col());
            if v_inv.apply(j) > w_inv.apply(i) {
                killed.insert(x);
                assignment.insert(x, None);
            } else {
                assignment.insert(x, Some(Variable::z(i, v_inv.apply(j))));
            }
        }
        Self {
            w: w.clone(),
            v_w: v,
            killed,
            assignment,
            target: cell_variables(w).into_iter().collect(),
        }
    }

    pub fn image(&self, x: Variable) -> Option<Option<Variable>> {
        self.assignment.get(&x).copied()
    }

    /// Applies `ψ_w` to a polynomial in the `w_0`-patch variables.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if let Some(v) = p.variables().into_iter().find(|v| !self.assignment.contains_key(v)) {
            return Err(PolyError::UnknownVariable(v));
        }
        let domain = p.domain();
        let sigma: BTreeMap<Variable, Polynomial> = self
            .assignment
            .iter()
            .map(|(&x, image)| {
                let img = match image {
                    Some(z) => Polynomial::var(*z, domain),
                    None => Polynomial::zero(domain),
                };
                (x, img)
            })
            .collect();
        p.substitute(&sigma, &self.target)
    }

    pub fn apply_matrix(&self, a: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        a.try_map(|e| self.apply(e))
    }
}

/// `ψ_w(f^{w_0}_{v_w(k), v_w(ℓ)})`.
pub fn cell_generator_via_psi(w: &Permutation, k: usize, l: usize) -> Result<Polynomial, PolyError> {
    let v = v_of_w(w);
    let f = patch_generators(&Permutation::longest(w.n()));
    PsiMap::new(w).apply(f.get(v.apply(k), v.apply(l)))
}

/// `ψ_w(v_w⁻¹ F v_w)` with `F = (w_0M)⁻¹ N (w_0M)`, using genuine matrix
/// products with the permutation matrices.
pub fn cell_generators_via_psi(w: &Permutation) -> Result<PolyMatrix, PolyError> {
    let n = w.n();
    let v = v_of_w(w);
    let f = patch_generators(&Permutation::longest(n));
    let conj = PolyMatrix::permutation(&v.inverse(), INT)
        .mat_mul(&f)?
        .mat_mul(&PolyMatrix::permutation(&v, INT))?;
    PsiMap::new(w).apply_matrix(&conj)
}

/// `Ω_w⁻¹` computed as `ψ_w(v_w⁻¹ (w_0M)⁻¹)`.
pub fn omega_inverse_via_psi(w: &Permutation) -> Result<PolyMatrix, PolyError> {
    let n = w.n();
    let v = v_of_w(w);
    let inv = PolyMatrix::permutation(&v.inverse(), INT).mat_mul(&wm_inverse(&Permutation::longest(n)))?;
    PsiMap::new(w).apply_matrix(&inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealKind {
    /// `I_{w,h}` on the patch `𝒩_w`.
    Patch,
    /// `J_{w,h}` on the cell `X^w_∘`.
    Cell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub k: usize,
    pub l: usize,
    pub poly: Polynomial,
}

/// Listed generators of `I_{w,h}` or `J_{w,h}`, one per `(k, ℓ)` with
/// `k > h(ℓ)`, in bottom-row-first reading order.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealPresentation {
    pub kind: IdealKind,
    pub w: Permutation,
    pub h: HessenbergFunction,
    #[serde(rename = "ambientVariables")]
    pub ambient: Vec<Variable>,
    pub generators: Vec<Generator>,
    /// `Λ_{w,h}`: generators with `v_w(k) > v_w(ℓ) + 1`.
    pub height: usize,
    /// Positions of nonzero constant generators; any such entry makes the
    /// ideal the unit ideal.
    pub constant_generators: Vec<(usize, usize)>,
}

impl IdealPresentation {
    pub fn nonzero_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(|g| !g.poly.is_zero())
    }

    pub fn nonzero_polys(&self) -> Vec<Polynomial> {
        self.nonzero_generators().map(|g| g.poly.clone()).collect()
    }

    pub fn certifies_empty(&self) -> bool {
        !self.constant_generators.is_empty()
    }
}

/// Pairs `(k, ℓ)` with `k > h(ℓ)`, sorted by `k` descending then `ℓ`
/// ascending.
pub fn generator_positions(h: &HessenbergFunction) -> Vec<(usize, usize)> {
    let n = h.n();
    let mut out: Vec<(usize, usize)> = (1..=n)
        .flat_map(|l| (h.at(l) + 1..=n).map(move |k| (k, l)))
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    out
}

pub fn build_ideal(
    w: &Permutation,
    h: &HessenbergFunction,
    kind: IdealKind,
) -> Result<IdealPresentation, CellsError> {
    if w.n() != h.n() {
        return Err(CellsError::SizeMismatch(w.n(), h.n()));
    }
    if !h.is_indecomposable() {
        return Err(CellsError::Decomposable(h.clone()));
    }
    let (matrix, ambient) = match kind {
        IdealKind::Patch => (patch_generators(w), patch_variables(w)),
        IdealKind::Cell => (cell_generators(w), cell_variables(w)),
    };
    Ok(present(w, h, kind, &matrix, ambient))
}

/// Builds the presentation from an already computed conjugate matrix.
pub fn present(
    w: &Permutation,
    h: &HessenbergFunction,
    kind: IdealKind,
    matrix: &PolyMatrix,
    ambient: Vec<Variable>,
) -> IdealPresentation {
    let v = v_of_w(w);
    let positions = generator_positions(h);
    let generators: Vec<Generator> = positions
        .iter()
        .map(|&(k, l)| Generator {
            k,
            l,
            poly: matrix.get(k, l).clone(),
        })
        .collect();
    let height = positions
        .iter()
        .filter(|&&(k, l)| v.apply(k) > v.apply(l) + 1)
        .count();
    let constant_generators = generators
        .iter()
        .filter(|g| g.poly.is_nonzero_constant())
        .map(|g| (g.k, g.l))
        .collect();
    IdealPresentation {
        kind,
        w: w.clone(),
        h: h.clone(),
        ambient,
        generators,
        height,
        constant_generators,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PavingCell {
    pub w: Permutation,
    pub length: usize,
    pub height: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Paving {
    pub h: HessenbergFunction,
    pub cells: Vec<PavingCell>,
    /// Coefficient of `q^d` at index `d` in `Σ_w q^{dim}`.
    pub poincare: Vec<usize>,
    pub max_dim: usize,
}

/// Cells `Hess(N, h) ∩ X^w_∘` for `w` in the fixed-point set, each an
/// affine space of dimension `ℓ(w) - Λ_{w,h}`.
pub fn paving(h: &HessenbergFunction) -> Result<Paving, CellsError> {
    if !h.is_indecomposable() {
        return Err(CellsError::Decomposable(h.clone()));
    }
    let positions = generator_positions(h);
    let mut cells = Vec::new();
    for w in fixed_points(h) {
        let v = v_of_w(&w);
        let height = positions
            .iter()
            .filter(|&&(k, l)| v.apply(k) > v.apply(l) + 1)
            .count();
        let length = w.length();
        cells.push(PavingCell {
            dim: length
                .checked_sub(height)
                .expect("cell height never exceeds the Schubert cell dimension"),
            w,
            length,
            height,
        });
    }
    let max_dim = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut poincare = vec![0; max_dim + 1];
    for c in &cells {
        poincare[c.dim] += 1;
    }
    Ok(Paving {
        h: h.clone(),
        cells,
        poincare,
        max_dim,
    })
}
