use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// Which coordinate family a variable belongs to: `x_{i,j}` for entries of
/// `wM` on a patch, `z_{i,j}` for entries of `Ω_w` on a Schubert cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarFamily {
    PatchX,
    CellZ,
}

/// A named indeterminate. The derived order (family, then row, then column)
/// is the canonical storage order, not a monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub family: VarFamily,
    pub row: u16,
    pub col: u16,
}

impl Variable {
    pub const fn x(row: usize, col: usize) -> Self {
        Self {
            family: VarFamily::PatchX,
            row: row as u16,
            col: col as u16,
        }
    }

    pub const fn z(row: usize, col: usize) -> Self {
        Self {
            family: VarFamily::CellZ,
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            VarFamily::PatchX => 'x',
            VarFamily::CellZ => 'z',
        };
        write!(f, "{letter}_{}_{}", self.row, self.col)
    }
}

impl FromStr for Variable {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::Parse(format!("bad variable name {s:?}"));
        let mut parts = s.split('_');
        let family = match parts.next() {
            Some("x") => VarFamily::PatchX,
            Some("z") => VarFamily::CellZ,
            _ => return Err(bad()),
        };
        let row: u16 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let col: u16 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() || row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Self { family, row, col })
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A power product of variables; exponents are positive and the variables
/// are kept sorted, so the empty list is the monomial `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self {
            factors: vec![(v, 1)],
        }
    }

    /// Normalizes arbitrary `(variable, exponent)` pairs: merges repeats and
    /// drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut factors: Vec<(Variable, u32)> = pairs.into_iter().collect();
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Variable, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e > 0);
        Self { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(u, _)| u)
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// `Some(v)` when the monomial is exactly one variable to the first power.
    pub fn as_variable(&self) -> Option<Variable> {
        match self.factors.as_slice() {
            [(v, 1)] => Some(*v),
            _ => None,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { factors: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self {
            factors: self.factors.iter().map(|&(v, k)| (v, k * e)).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Self::from_pairs(
            other
                .factors
                .iter()
                .map(|&(v, e)| (v, e - self.exponent(v))),
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
