//! Statevector simulation of qubit circuits and of qumodes in a truncated
//! Fock basis, with a shared numeric core, measurement layer and a small
//! text format for circuits.

// `!(x < tol)` is used on purpose so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod kernel;
pub mod measurement;
pub mod numeric;
pub mod qubit;
pub mod qumode;

pub use error::{Result, SimError};
pub use numeric::{ComplexMatrix, StateVector, C64};
