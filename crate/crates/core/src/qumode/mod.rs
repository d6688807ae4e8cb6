//! Continuous-variable simulation in a Fock basis truncated at a cutoff.

mod gates;
mod ladder;
mod squeezed;
mod wigner;

pub use gates::{
    beamsplitter, displacement, interferometer, interferometer_gates, rotation, squeezer, CvGate,
    CvGateKind, MAX_DENSE_INTERFEROMETER,
};
pub use ladder::{ladder_ops, LadderOps, MAX_CUTOFF, MIN_CUTOFF};
pub use squeezed::{prepare_squeezed_vacuum, squeezed_vacuum_series, SqueezedSeries};
pub use wigner::{wigner, wigner_grid, WignerFunction};

use crate::error::{Result, SimError};
use crate::kernel;
use crate::numeric::{ComplexMatrix, StateVector};

pub const MAX_MODES: usize = 4;
/// Upper bound on `cutoff^modes`.
pub const MAX_BASIS: usize = 1 << 20;

/// `cutoff^m_modes` after checking the register bounds.
pub fn register_dim(m_modes: usize, cutoff: usize) -> Result<usize> {
    if !(1..=MAX_MODES).contains(&m_modes) {
        return Err(SimError::Capacity(format!(
            "{m_modes} qumodes requested, supported range is 1..={MAX_MODES}"
        )));
    }
    ladder::check_cutoff(cutoff)?;
    let dim = cutoff.pow(m_modes as u32);
    if dim > MAX_BASIS {
        return Err(SimError::Capacity(format!(
            "cutoff {cutoff} on {m_modes} modes gives {dim} basis states, limit is {MAX_BASIS}"
        )));
    }
    Ok(dim)
}

/// `m` qumodes, each truncated at `cutoff`, holding a `cutoff^m` statevector.
#[derive(Debug, Clone, PartialEq)]
pub struct QumodeRegister {
    m_modes: usize,
    cutoff: usize,
    state: StateVector,
}

impl QumodeRegister {
    /// All modes in vacuum.
    pub fn vacuum(m_modes: usize, cutoff: usize) -> Result<Self> {
        let dim = register_dim(m_modes, cutoff)?;
        Ok(Self { m_modes, cutoff, state: StateVector::basis(dim, 0) })
    }

    pub fn from_state(m_modes: usize, cutoff: usize, state: StateVector) -> Result<Self> {
        let dim = register_dim(m_modes, cutoff)?;
        if state.basis_dim() != dim {
            return Err(SimError::DimensionMismatch { expected: dim, found: state.basis_dim() });
        }
        if !state.is_normalized() {
            return Err(SimError::InvalidArgument(format!(
                "state has squared norm {}",
                state.norm_sqr()
            )));
        }
        Ok(Self { m_modes, cutoff, state })
    }

    /// Product state `ψ₀ ⊗ ψ₁ ⊗ …` of single-mode states sharing a cutoff.
    pub fn product(modes: &[StateVector]) -> Result<Self> {
        let cutoff = modes.first().map_or(0, StateVector::basis_dim);
        if let Some(bad) = modes.iter().find(|m| m.basis_dim() != cutoff) {
            return Err(SimError::DimensionMismatch { expected: cutoff, found: bad.basis_dim() });
        }
        let state = modes[1..].iter().fold(modes[0].clone(), |acc, m| acc.kron(m));
        Self::from_state(modes.len(), cutoff, state)
    }

    /// Fock basis state `|n₀, n₁, …⟩`.
    pub fn fock(occupations: &[usize], cutoff: usize) -> Result<Self> {
        let dim = register_dim(occupations.len(), cutoff)?;
        let mut index = 0;
        for &n in occupations {
            if n >= cutoff {
                return Err(SimError::InvalidArgument(format!(
                    "occupation {n} not below cutoff {cutoff}"
                )));
            }
            index = index * cutoff + n;
        }
        Ok(Self { m_modes: occupations.len(), cutoff, state: StateVector::basis(dim, index) })
    }

    pub fn m_modes(&self) -> usize {
        self.m_modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn into_state(self) -> StateVector {
        self.state
    }

    pub fn apply(&self, gate: &CvGate, targets: &[usize]) -> Result<Self> {
        if gate.cutoff() != self.cutoff {
            return Err(SimError::DimensionMismatch { expected: self.cutoff, found: gate.cutoff() });
        }
        if targets.len() != gate.width() {
            return Err(SimError::Arity {
                gate: format!("{} (modes)", gate.kind()),
                expected: gate.width(),
                found: targets.len(),
            });
        }
        let amps = kernel::apply_local_sparse(
            self.state.amplitudes(),
            self.cutoff,
            self.m_modes,
            targets,
            gate.operator(),
        )?;
        Ok(Self { state: StateVector::new(amps), ..*self })
    }

    /// Applies a dense operator on `targets`.
    pub fn apply_matrix(&self, u: &ComplexMatrix, targets: &[usize]) -> Result<Self> {
        let amps = kernel::apply_local(
            self.state.amplitudes(),
            self.cutoff,
            self.m_modes,
            targets,
            u,
        )?;
        Ok(Self { state: StateVector::new(amps), ..*self })
    }

    /// Occupation numbers of basis index `index`, mode 0 first.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        occupations(index, self.m_modes, self.cutoff)
    }
}

pub(crate) fn occupations(mut index: usize, m_modes: usize, cutoff: usize) -> Vec<usize> {
    let mut occ = vec![0; m_modes];
    for slot in occ.iter_mut().rev() {
        *slot = index % cutoff;
        index /= cutoff;
    }
    occ
}

/// Probability mass on basis states where some mode sits in the top
/// `top_levels` Fock levels, i.e. has occupation `≥ cutoff − top_levels`.
pub fn leakage(reg: &QumodeRegister, top_levels: usize) -> Result<f64> {
    if top_levels == 0 || top_levels >= reg.cutoff {
        return Err(SimError::InvalidArgument(format!(
            "top_levels {top_levels} outside 1..{}",
            reg.cutoff
        )));
    }
    let threshold = reg.cutoff - top_levels;
    let total = reg.state.norm_sqr();
    let mass: f64 = reg
        .state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| reg.occupations(*i).iter().any(|&n| n >= threshold))
        .map(|(_, a)| a.norm_sqr())
        .sum();
    Ok((mass / total).clamp(0.0, 1.0))
}
