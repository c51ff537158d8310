//! Lexicographic monomial orders, division, Buchberger verification, the
//! triangular complete-intersection analysis, and a general completion
//! oracle.

mod division;
mod oracle;
mod order;
mod triangular;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polyring::{Domain, PolyError, Variable};

pub use division::{buchberger_check, buchberger_check_polys, reduce, Division};
pub use oracle::{reduced_gb_oracle, DEFAULT_BUDGET};
pub use order::{initial_term, order_n, order_n_w, order_patch, MonomialOrder, Term};
pub use triangular::{solve_triangular, triangular_analysis, triangular_analysis_polys, TriangularReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("the zero polynomial has no initial term")]
    ZeroPolynomial,
    #[error("variable {0} is not covered by the monomial order")]
    UnknownVariable(Variable),
    #[error("variable {0} appears twice in the priority list")]
    DuplicateVariable(Variable),
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(BigInt),
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("reduction budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("generators do not form a triangular system")]
    NotTriangular,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
