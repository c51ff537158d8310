//! Exact sparse multivariate polynomials over `ℤ` or `𝔽_p` and square
//! matrices of them.

mod matrix;
mod monomial;
mod poly;
mod serial;

pub use matrix::PolyMatrix;
pub use monomial::{Monomial, VarFamily, Variable};
pub use poly::{poly_arith, ArithOp, Domain, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("variable {0} is not in the target universe")]
    UnknownVariable(Variable),
    #[error("matrix sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is not lower unitriangular at ({row},{col})")]
    NotUnitriangular { row: usize, col: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
