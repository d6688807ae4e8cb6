//! Born-rule read-out: probabilities, seeded shot sampling, and per-wire
//! expectation values and variances.
//!
//! Functions that act on a single wire infer the register layout from the
//! observable: a `d×d` observable on a state of size `dⁿ` means `n` wires of
//! local dimension `d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::kernel;
use crate::numeric::{ComplexMatrix, Rng, StateVector, C64};
use crate::qumode::LadderOps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObservableKind {
    PauliX,
    PauliY,
    PauliZ,
    Number,
}

impl ObservableKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::PauliX => "paulix",
            Self::PauliY => "pauliy",
            Self::PauliZ => "pauliz",
            Self::Number => "number",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "paulix" => Self::PauliX,
            "pauliy" => Self::PauliY,
            "pauliz" => Self::PauliZ,
            "number" => Self::Number,
            _ => return None,
        })
    }
}

impl fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Hermitian single-wire observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    kind: ObservableKind,
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn pauli_x() -> Self {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        Self { kind: ObservableKind::PauliX, matrix: ComplexMatrix::from_rows(&[[o, l], [l, o]]) }
    }

    pub fn pauli_y() -> Self {
        let (o, i) = (C64::new(0.0, 0.0), C64::new(0.0, 1.0));
        Self { kind: ObservableKind::PauliY, matrix: ComplexMatrix::from_rows(&[[o, -i], [i, o]]) }
    }

    pub fn pauli_z() -> Self {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        Self { kind: ObservableKind::PauliZ, matrix: ComplexMatrix::from_rows(&[[l, o], [o, -l]]) }
    }

    /// Photon number `n̂` at `cutoff`.
    pub fn number(cutoff: usize) -> Result<Self> {
        Ok(Self { kind: ObservableKind::Number, matrix: LadderOps::new(cutoff)?.number().clone() })
    }

    /// The observable of `kind` on wires of local dimension `local_dim`.
    pub fn of_kind(kind: ObservableKind, local_dim: usize) -> Result<Self> {
        let obs = match kind {
            ObservableKind::PauliX => Self::pauli_x(),
            ObservableKind::PauliY => Self::pauli_y(),
            ObservableKind::PauliZ => Self::pauli_z(),
            ObservableKind::Number => return Self::number(local_dim),
        };
        if local_dim != 2 {
            return Err(SimError::DimensionMismatch { expected: local_dim, found: 2 });
        }
        Ok(obs)
    }

    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn local_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Eigenvalues on the computational basis when the observable is diagonal.
    pub fn diagonal_values(&self) -> Option<Vec<f64>> {
        let d = self.local_dim();
        let off_diagonal =
            (0..d).any(|i| (0..d).any(|j| i != j && self.matrix[(i, j)].norm() != 0.0));
        (!off_diagonal).then(|| (0..d).map(|k| self.matrix[(k, k)].re).collect())
    }
}

/// Born-rule probabilities `|c_k|² / Σ|c_j|²`.
pub fn probabilities(state: &StateVector) -> Result<Vec<f64>> {
    let total = state.norm_sqr();
    if total == 0.0 || !total.is_finite() {
        return Err(SimError::ZeroVector);
    }
    Ok(state.amplitudes().iter().map(|c| c.norm_sqr() / total).collect())
}

/// Number of wires `n` with `local_dim^n == dim`.
fn wire_count(dim: usize, local_dim: usize) -> Result<usize> {
    if local_dim < 2 {
        return Err(SimError::InvalidArgument(format!("local dimension {local_dim}")));
    }
    let mut n = 0;
    let mut size = 1usize;
    while size < dim {
        size = size.saturating_mul(local_dim);
        n += 1;
    }
    if size != dim || n == 0 {
        return Err(SimError::DimensionMismatch { expected: size, found: dim });
    }
    Ok(n)
}

/// How basis indices are rendered as outcome labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Bit strings `b₀b₁…`, wire 0 first.
    Bits { n_qubits: usize },
    /// Occupation tuples `(k₀,k₁,…)`, mode 0 first.
    Occupations { m_modes: usize, cutoff: usize },
}

impl Labeling {
    pub fn label(&self, index: usize) -> String {
        match *self {
            Self::Bits { n_qubits } => format!("{index:0n_qubits$b}"),
            Self::Occupations { m_modes, cutoff } => {
                let occ = crate::qumode::occupations(index, m_modes, cutoff);
                let parts: Vec<String> = occ.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn basis_dim(&self) -> usize {
        match *self {
            Self::Bits { n_qubits } => 1 << n_qubits,
            Self::Occupations { m_modes, cutoff } => cutoff.pow(m_modes as u32),
        }
    }

    fn local_dim(&self) -> usize {
        match *self {
            Self::Bits { .. } => 2,
            Self::Occupations { cutoff, .. } => cutoff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountEntry {
    pub index: usize,
    pub label: String,
    pub count: u64,
}

/// Outcome counts of a sampling run, ordered by basis index; outcomes never
/// drawn are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub entries: Vec<CountEntry>,
    pub shots: u64,
    pub seed: u64,
    labeling: Labeling,
}

impl Counts {
    pub fn get(&self, label: &str) -> u64 {
        self.entries.iter().find(|e| e.label == label).map_or(0, |e| e.count)
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    /// Empirical distribution over the full basis.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut f = vec![0.0; self.labeling.basis_dim()];
        for e in &self.entries {
            f[e.index] = e.count as f64 / self.shots as f64;
        }
        f
    }
}

/// Draws `shots` outcomes from the Born distribution of `state`.
///
/// Shot `i` inverts the cumulative distribution at draw `i` of the seeded
/// stream (see [`Rng`]), so the counts depend only on `(state, shots, seed)`.
pub fn sample(state: &StateVector, shots: u64, seed: u64, labeling: Labeling) -> Result<Counts> {
    if shots == 0 {
        return Err(SimError::InvalidArgument("shots must be at least 1".into()));
    }
    if labeling.basis_dim() != state.basis_dim() {
        return Err(SimError::DimensionMismatch {
            expected: labeling.basis_dim(),
            found: state.basis_dim(),
        });
    }
    let probs = probabilities(state)?;
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let dim = probs.len();

    let tally = |start: u64, end: u64| -> Vec<u64> {
        let mut counts = vec![0u64; dim];
        let mut rng = Rng::at(seed, start);
        for _ in start..end {
            let u = rng.next_f64() * total;
            let k = cdf.partition_point(|&c| c <= u).min(dim - 1);
            counts[k] += 1;
        }
        counts
    };

    const CHUNK: u64 = 1 << 16;
    let chunks: Vec<(u64, u64)> =
        (0..shots.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(shots))).collect();
    #[cfg(feature = "parallel")]
    let partial: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        chunks.par_iter().map(|&(a, b)| tally(a, b)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partial: Vec<Vec<u64>> = chunks.iter().map(|&(a, b)| tally(a, b)).collect();

    let mut counts = vec![0u64; dim];
    for part in partial {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    let entries = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(index, count)| CountEntry { index, label: labeling.label(index), count })
        .collect();
    Ok(Counts { entries, shots, seed, labeling })
}

/// `⟨ψ|A_wire|ψ⟩ / ⟨ψ|ψ⟩`.
pub fn expectation(state: &StateVector, obs: &Observable, wire: usize) -> Result<f64> {
    operator_mean(state, obs.matrix(), wire)
}

fn operator_mean(state: &StateVector, op: &ComplexMatrix, wire: usize) -> Result<f64> {
    let n = wire_count(state.basis_dim(), op.rows())?;
    let applied = kernel::apply_local(state.amplitudes(), op.rows(), n, &[wire], op)?;
    let norm = state.norm_sqr();
    if norm == 0.0 {
        return Err(SimError::ZeroVector);
    }
    let value: C64 =
        state.amplitudes().iter().zip(&applied).map(|(a, b)| a.conj() * b).sum();
    Ok(value.re / norm)
}

/// One expectation value per wire.
pub fn expectations(state: &StateVector, obs: &Observable) -> Result<Vec<f64>> {
    let n = wire_count(state.basis_dim(), obs.local_dim())?;
    (0..n).map(|w| expectation(state, obs, w)).collect()
}

/// `⟨A²⟩ − ⟨A⟩²`, floored at zero.
pub fn variance(state: &StateVector, obs: &Observable, wire: usize) -> Result<f64> {
    let mean = expectation(state, obs, wire)?;
    let square = obs.matrix() * obs.matrix();
    let second = operator_mean(state, &square, wire)?;
    Ok((second - mean * mean).max(0.0))
}

pub fn variances(state: &StateVector, obs: &Observable) -> Result<Vec<f64>> {
    let n = wire_count(state.basis_dim(), obs.local_dim())?;
    (0..n).map(|w| variance(state, obs, w)).collect()
}

/// Product of the per-wire expectation values.
pub fn expectation_product(state: &StateVector, obs: &Observable) -> Result<f64> {
    Ok(expectations(state, obs)?.into_iter().product())
}

/// Mean and variance of a diagonal observable estimated from shot counts.
///
/// The variance is the mean squared deviation from the sample mean.
pub fn sampled_moments(counts: &Counts, obs: &Observable, wire: usize) -> Result<(f64, f64)> {
    let values = obs.diagonal_values().ok_or_else(|| {
        SimError::InvalidArgument(format!("{} is not diagonal in the measured basis", obs.kind()))
    })?;
    let d = counts.labeling.local_dim();
    if values.len() != d {
        return Err(SimError::DimensionMismatch { expected: d, found: values.len() });
    }
    let n = wire_count(counts.labeling.basis_dim(), d)?;
    kernel::check_targets(&[wire], n)?;
    let stride = d.pow((n - 1 - wire) as u32);
    let shots = counts.shots as f64;
    let value_of = |index: usize| values[(index / stride) % d];
    let mean = counts.entries.iter().map(|e| e.count as f64 * value_of(e.index)).sum::<f64>() / shots;
    let var = counts
        .entries
        .iter()
        .map(|e| e.count as f64 * (value_of(e.index) - mean).powi(2))
        .sum::<f64>()
        / shots;
    Ok((mean, var))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementKind {
    Expectation,
    Variance,
    Probabilities,
    Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasurementValues {
    Real(Vec<f64>),
    Counts(Vec<u64>),
}

impl MeasurementValues {
    pub fn len(&self) -> usize {
        match self {
            Self::Real(v) => v.len(),
            Self::Counts(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Self::Real(v) => Some(v),
            Self::Counts(_) => None,
        }
    }
}

/// Labelled read-out of one circuit execution.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementResult {
    pub kind: MeasurementKind,
    pub labels: Vec<String>,
    pub values: MeasurementValues,
    pub shots: Option<u64>,
    pub seed: u64,
}
