//! Complex amplitude vectors and the geometric quantities defined on them.

use std::ops::Index;

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};

/// Normalization tolerance applied to prepared and evolved states.
pub const NORM_TOL: f64 = 1e-10;

/// Amplitudes over a computational basis of size `basis_dim`.
///
/// Nothing here forces unit norm, because Born-rule probabilities accept
/// unnormalized input; the engines keep their states normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn from_real(amps: &[f64]) -> Self {
        Self { amps: amps.iter().map(|&a| C64::new(a, 0.0)).collect() }
    }

    /// Basis ket `|k⟩` of a `dim`-dimensional space.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    #[inline]
    pub fn basis_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(SimError::ZeroVector);
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { amps: self.amps.iter().map(|&a| a * s).collect() }
    }

    /// `⟨self|other⟩`, conjugating the left argument.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        check_dims(self, other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for &a in &self.amps {
            amps.extend(other.amps.iter().map(|&b| a * b));
        }
        Self { amps }
    }
}

impl Index<usize> for StateVector {
    type Output = C64;
    fn index(&self, k: usize) -> &C64 {
        &self.amps[k]
    }
}

impl From<Vec<C64>> for StateVector {
    fn from(amps: Vec<C64>) -> Self {
        Self { amps }
    }
}

fn check_dims(x: &StateVector, y: &StateVector) -> Result<()> {
    if x.basis_dim() != y.basis_dim() {
        return Err(SimError::DimensionMismatch { expected: x.basis_dim(), found: y.basis_dim() });
    }
    Ok(())
}

/// Euclidean distance `√⟨x−y|x−y⟩`.
pub fn distance(x: &StateVector, y: &StateVector) -> Result<f64> {
    check_dims(x, y)?;
    Ok(x.amps.iter().zip(&y.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
}

/// Angle between two rays, `arccos(|⟨x|y⟩| / (‖x‖‖y‖))`, in `[0, π/2]`.
///
/// The magnitude of the inner product is used so the result is defined for
/// complex overlaps and is invariant under global phase.
pub fn angle(x: &StateVector, y: &StateVector) -> Result<f64> {
    check_dims(x, y)?;
    let (nx, ny) = (x.norm(), y.norm());
    if nx == 0.0 || ny == 0.0 {
        return Err(SimError::ZeroVector);
    }
    let cos = (x.inner(y)?.norm() / (nx * ny)).clamp(0.0, 1.0);
    Ok(cos.acos())
}

/// Whether `x ≈ γ·y` for some unit-modulus `γ`, within `tol` in 2-norm.
///
/// The phase is fixed by aligning the largest-magnitude amplitude of `y` with
/// the matching amplitude of `x`.
pub fn equal_up_to_global_phase(x: &StateVector, y: &StateVector, tol: f64) -> bool {
    if x.basis_dim() != y.basis_dim() {
        return false;
    }
    let Some(k) = (0..y.basis_dim()).max_by(|&a, &b| y[a].norm().total_cmp(&y[b].norm())) else {
        return true;
    };
    let gamma = if y[k].norm() == 0.0 || x[k].norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        let r = x[k] / y[k];
        r / r.norm()
    };
    let diff: f64 = x.amps.iter().zip(&y.amps).map(|(a, b)| (a - gamma * b).norm_sqr()).sum();
    diff.sqrt() < tol
}
