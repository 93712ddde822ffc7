//! Exact computation in Hecke algebras of type A and in the comodule
//! categories of the matrix quantum groups defined by Hecke symmetries.

pub mod error;
pub mod fusion;
pub mod hecke;
pub mod idempotents;
pub mod integral;
pub mod rmatrix;
pub mod scalar;
pub mod symmetric;
pub mod tableaux;
pub mod trace;

pub use error::{Error, Result};
pub use hecke::{Hecke, HeckeElement};
pub use scalar::{q_factorial, q_integer, specialize, QField, Scalar, ScalarQ};
pub use symmetric::Permutation;
