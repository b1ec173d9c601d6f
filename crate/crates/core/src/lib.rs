//! Exact Moyal-product construction of metric operators and Hermitian
//! counterparts for the ten-parameter cubic PT-symmetric Hamiltonian.
//!
//! Symbolic work happens over ℚ(i,√2) with no floating point; the
//! [`fock`] module is the only numeric part.

pub mod config;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod ladder;
pub mod linalg;
pub mod metric_eq;
pub mod moyal;
pub mod parse;
pub mod perturb;
pub mod poly;
pub mod reference;
pub mod scalar;
pub mod series;
pub mod sph;

pub use error::{Error, Result};
pub use poly::{Monomial, PhasePoly, Var};
pub use scalar::{CycloScalar, Rational};
pub use series::GSeries;
