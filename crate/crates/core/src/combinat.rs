//! Permutations of `[n]`, Hessenberg functions and the fixed-point set of
//! the circle action on a regular nilpotent Hessenberg variety.
//!
//! Permutations are stored in one-line notation with 1-based images. The
//! permutation matrix of `w` has its `j`-th column equal to `e_{w(j)}`, so
//! composition `w.compose(u)` is `w ∘ u` and corresponds to the matrix
//! product `w · u`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("{0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<usize>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid Hessenberg function {values:?}: {reason}")]
    InvalidHessenberg { values: Vec<usize>, reason: String },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A bijection of `[n] = {1, ..., n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, CombinatError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(CombinatError::NotAPermutation(images));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w_0`, with `w_0(j) = n + 1 - j`.
    pub fn longest(n: usize) -> Self {
        Self {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(j)` for `1 <= j <= n`.
    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (j, &v) in self.images.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self, CombinatError> {
        if self.n() != other.n() {
            return Err(CombinatError::SizeMismatch(self.n(), other.n()));
        }
        Ok(Self {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    /// Number of inversions, which is the Coxeter length in type A.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &v)| v == j + 1)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(
            n: usize,
            current: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Permutation>,
        ) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// `v_w = w_0 ∘ w`, so `v_w(j) = n + 1 - w(j)`.
pub fn v_of_w(w: &Permutation) -> Permutation {
    let n = w.n();
    Permutation {
        images: w.images.iter().map(|&v| n + 1 - v).collect(),
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = CombinatError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(w: Permutation) -> Self {
        w.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", join(&self.images))
        }
    }
}

impl FromStr for Permutation {
    type Err = CombinatError;

    /// Accepts `"3421"` (only for `n <= 9`) or `"3,4,2,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = parse_list(s, true)?;
        Self::new(images)
    }
}

fn parse_list(s: &str, allow_digits: bool) -> Result<Vec<usize>, CombinatError> {
    let s = s.trim();
    let err = |reason: &str| CombinatError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty input"));
    }
    if s.contains(',') || !allow_digits {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err("expected integers")))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| err("expected digits"))
            })
            .collect()
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A nondecreasing `h : [n] → [n]` with `h(i) >= i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HessenbergFunction {
    values: Vec<usize>,
    indecomposable: bool,
}

impl HessenbergFunction {
    pub fn new(values: Vec<usize>) -> Result<Self, CombinatError> {
        let n = values.len();
        let invalid = |reason: String| CombinatError::InvalidHessenberg {
            values: values.clone(),
            reason,
        };
        if n == 0 {
            return Err(invalid("empty".into()));
        }
        for (idx, &v) in values.iter().enumerate() {
            let i = idx + 1;
            if v < i || v > n {
                return Err(invalid(format!("h({i}) = {v} is outside [{i}, {n}]")));
            }
            if idx > 0 && v < values[idx - 1] {
                return Err(invalid(format!("h({i}) < h({})", i - 1)));
            }
        }
        let indecomposable = values[..n - 1]
            .iter()
            .enumerate()
            .all(|(idx, &v)| v >= idx + 2);
        Ok(Self {
            values,
            indecomposable,
        })
    }

    /// `h = (n, ..., n)`, the full flag variety.
    pub fn full(n: usize) -> Self {
        Self::new(vec![n; n]).expect("constant n is a Hessenberg function")
    }

    /// `h = (2, 3, ..., n, n)`, the smallest indecomposable function.
    pub fn minimal_indecomposable(n: usize) -> Self {
        Self::new((1..=n).map(|i| (i + 1).min(n)).collect())
            .expect("(2,3,...,n,n) is a Hessenberg function")
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `h(i)` for `1 <= i <= n`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_indecomposable(&self) -> bool {
        self.indecomposable
    }

    /// The partition `λ_h = (n - h(1), ..., n - h(n))` and its size
    /// `n² - Σ h(i)`, which counts the pairs `(k, ℓ)` with `k > h(ℓ)`.
    pub fn lambda(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let parts: Vec<usize> = self.values.iter().map(|&v| n - v).collect();
        let size = parts.iter().sum();
        (parts, size)
    }

    /// Pointwise `self <= other`.
    pub fn le_pointwise(&self, other: &Self) -> bool {
        self.n() == other.n() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Every Hessenberg function on `[n]` in lexicographic order.
    pub fn enumerate(n: usize, indecomposable_only: bool) -> Vec<Self> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut current = Vec::with_capacity(n);
        fn rec(n: usize, indec: bool, current: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
            let i = current.len() + 1;
            if i > n {
                out.push(HessenbergFunction::new(current.clone()).expect("generated valid"));
                return;
            }
            let mut lo = i.max(current.last().copied().unwrap_or(1));
            if indec && i < n {
                lo = lo.max(i + 1);
            }
            for v in lo..=n {
                current.push(v);
                rec(n, indec, current, out);
                current.pop();
            }
        }
        rec(n, indecomposable_only, &mut current, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for HessenbergFunction {
    type Error = CombinatError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<HessenbergFunction> for Vec<usize> {
    fn from(h: HessenbergFunction) -> Self {
        h.values
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.values))
    }
}

impl FromStr for HessenbergFunction {
    type Err = CombinatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_list(s, false)?)
    }
}

/// Whether the permutation flag `w` lies in `Hess(N, h)`:
/// `w⁻¹(w(j) - 1) <= h(j)` for all `j`, skipping `j` with `w(j) = 1`.
pub fn is_fixed_point(w: &Permutation, h: &HessenbergFunction) -> bool {
    assert_eq!(w.n(), h.n(), "permutation and Hessenberg function sizes differ");
    let inv = w.inverse();
    (1..=w.n()).all(|j| {
        let wj = w.apply(j);
        wj == 1 || inv.apply(wj - 1) <= h.at(j)
    })
}

/// `Hess(N, h)^S` as a list in lexicographic order.
pub fn fixed_points(h: &HessenbergFunction) -> Vec<Permutation> {
    Permutation::all(h.n())
        .into_iter()
        .filter(|w| is_fixed_point(w, h))
        .collect()
}
