//! Dense complex linear algebra and randomness shared by both engines.

mod expm;
mod matrix;
mod rng;
mod state;

pub use expm::{expm, expm_taylor};
pub use matrix::{kron, ComplexMatrix};
pub use rng::Rng;
pub use state::{angle, distance, equal_up_to_global_phase, StateVector, NORM_TOL};

pub use num_complex::Complex64 as C64;

/// Tolerance for unitarity checks on constructed gates.
pub const UNITARY_TOL: f64 = 1e-10;
