use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Domain, PolyError, Polynomial};
use crate::combinat::Permutation;

/// Square matrix of polynomials sharing one coefficient domain. Indices in
/// the public API are 1-based to match matrix notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    domain: Domain,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize, domain: Domain) -> Self {
        Self {
            n,
            domain,
            entries: vec![Polynomial::zero(domain); n * n],
        }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        Self::from_fn(n, domain, |i, j| {
            if i == j {
                Polynomial::one(domain)
            } else {
                Polynomial::zero(domain)
            }
        })
    }

    /// The regular nilpotent operator `N`: ones on the superdiagonal.
    pub fn nilpotent(n: usize, domain: Domain) -> Self {
        Self::from_fn(n, domain, |i, j| {
            if j == i + 1 {
                Polynomial::one(domain)
            } else {
                Polynomial::zero(domain)
            }
        })
    }

    /// Permutation matrix with column `j` equal to `e_{w(j)}`.
    pub fn permutation(w: &Permutation, domain: Domain) -> Self {
        Self::from_fn(w.n(), domain, |i, j| {
            if i == w.apply(j) {
                Polynomial::one(domain)
            } else {
                Polynomial::zero(domain)
            }
        })
    }

    /// Builds a matrix from `f(i, j)` with 1-based indices.
    pub fn from_fn(n: usize, domain: Domain, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let e = f(i, j);
                assert_eq!(e.domain(), domain, "entry ({i},{j}) has the wrong domain");
                entries.push(e);
            }
        }
        Self { n, domain, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial) {
        assert_eq!(value.domain(), self.domain);
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn map(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let entries: Vec<Polynomial> = self.entries.iter().map(&mut f).collect();
        let domain = entries.first().map(|e| e.domain()).unwrap_or(self.domain);
        Self {
            n: self.n,
            domain,
            entries,
        }
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&Polynomial) -> Result<Polynomial, E>) -> Result<Self, E> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?;
        let domain = entries.first().map(|e| e.domain()).unwrap_or(self.domain);
        Ok(Self {
            n: self.n,
            domain,
            entries,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.domain)
    }

    /// 1 on the diagonal and 0 above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.first_non_unitriangular().is_none()
    }

    fn first_non_unitriangular(&self) -> Option<(usize, usize)> {
        for i in 1..=self.n {
            for j in i..=self.n {
                let e = self.get(i, j);
                let ok = if i == j {
                    e.constant_value().is_some_and(|c| c.is_one())
                } else {
                    e.is_zero()
                };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.n != other.n {
            return Err(PolyError::SizeMismatch(self.n, other.n));
        }
        if self.domain != other.domain {
            return Err(PolyError::DomainMismatch(self.domain, other.domain));
        }
        let n = self.n;
        Ok(Self::from_fn(n, self.domain, |i, j| {
            let mut acc = Polynomial::zero(self.domain);
            for k in 1..=n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    /// `[w⁻¹ A w]` written as an index shuffle: entry `(k, ℓ)` is
    /// `A[w(k), w(ℓ)]`.
    pub fn conjugate_by_permutation(&self, w: &Permutation) -> Self {
        Self::from_fn(self.n, self.domain, |k, l| self.get(w.apply(k), w.apply(l)).clone())
    }

    /// Inverse of a lower unitriangular matrix by forward substitution.
    pub fn lower_unitriangular_inverse(&self) -> Result<Self, PolyError> {
        if let Some((row, col)) = self.first_non_unitriangular() {
            return Err(PolyError::NotUnitriangular { row, col });
        }
        let n = self.n;
        let mut inv = Self::identity(n, self.domain);
        for j in 1..=n {
            for i in j + 1..=n {
                // X[i][j] = -Σ_{k=j}^{i-1} L[i][k] X[k][j]
                let mut acc = Polynomial::zero(self.domain);
                for k in j..i {
                    let (l, x) = (self.get(i, k), inv.get(k, j));
                    if !l.is_zero() && !x.is_zero() {
                        acc = &acc + &(l * x);
                    }
                }
                inv.set(i, j, acc.scale(&BigInt::from(-1)));
            }
        }
        Ok(inv)
    }

    /// `(wM)⁻¹ = M⁻¹ w⁻¹` for a lower unitriangular `M`. Right
    /// multiplication by `w⁻¹` permutes columns:
    /// `[M⁻¹ w⁻¹]_{i,j} = [M⁻¹]_{i, w⁻¹(j)}`.
    pub fn inverse_unitriangular_conjugate(w: &Permutation, m: &Self) -> Result<Self, PolyError> {
        if w.n() != m.n {
            return Err(PolyError::SizeMismatch(w.n(), m.n));
        }
        let m_inv = m.lower_unitriangular_inverse()?;
        let w_inv = w.inverse();
        Ok(Self::from_fn(m.n, m.domain, |i, j| m_inv.get(i, w_inv.apply(j)).clone()))
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{:>width$}", cells[i * self.n + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
