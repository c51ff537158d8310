//! Defining ideals of regular nilpotent Hessenberg Schubert cells in type A,
//! together with exact checks of their Gröbner, complete-intersection,
//! Hilbert-series and Frobenius-splitting properties.

pub mod cells;
pub mod cli;
pub mod combinat;
pub mod frobenius;
pub mod grading_hilbert;
pub mod groebner;
pub mod polyring;
