//! Gaussian gates in the truncated Fock basis.
//!
//! Every gate is the exact exponential of its truncated anti-Hermitian
//! generator, so it is unitary at the working cutoff. Amplitudes close to the
//! cutoff differ from the untruncated gate; see [`super::leakage`].

use std::fmt;

use super::ladder::{check_cutoff, LadderOps};
use crate::error::{Result, SimError};
use crate::kernel::SparseMatrix;
use crate::numeric::{expm, ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CvGateKind {
    Squeezer,
    Rotation,
    Displacement,
    Beamsplitter,
}

impl CvGateKind {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Squeezer => "S",
            Self::Rotation => "R",
            Self::Displacement => "D",
            Self::Beamsplitter => "BS",
        }
    }
}

impl fmt::Display for CvGateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A qumode gate at a fixed cutoff, held in sparse form.
#[derive(Debug, Clone, PartialEq)]
pub struct CvGate {
    kind: CvGateKind,
    params: Vec<f64>,
    cutoff: usize,
    op: SparseMatrix,
}

impl CvGate {
    pub fn kind(&self) -> CvGateKind {
        self.kind
    }

    /// Real parameters; complex ones are stored as `re, im`.
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Number of modes the gate acts on.
    pub fn width(&self) -> usize {
        match self.kind {
            CvGateKind::Beamsplitter => 2,
            _ => 1,
        }
    }

    pub fn operator(&self) -> &SparseMatrix {
        &self.op
    }

    /// Dense matrix, `d×d` or `d²×d²`.
    pub fn matrix(&self) -> ComplexMatrix {
        self.op.to_dense()
    }
}

fn dense_gate(kind: CvGateKind, params: Vec<f64>, cutoff: usize, u: &ComplexMatrix) -> CvGate {
    let op = SparseMatrix::from_dense(u).expect("gate matrices are square");
    CvGate { kind, params, cutoff, op }
}

/// `S(z) = exp((z*·â² − z·â†²)/2)`.
pub fn squeezer(z: C64, cutoff: usize) -> Result<CvGate> {
    let ops = LadderOps::new(cutoff)?;
    let a2 = ops.annihilate() * ops.annihilate();
    let ad2 = ops.create() * ops.create();
    let mut generator = a2.scale(z.conj() * 0.5);
    generator.add_scaled(-z * 0.5, &ad2);
    let u = expm(&generator)?;
    Ok(dense_gate(CvGateKind::Squeezer, vec![z.re, z.im], cutoff, &u))
}

/// `R(φ) = exp(iφ·n̂) = diag(e^{iφk})`.
pub fn rotation(phi: f64, cutoff: usize) -> Result<CvGate> {
    check_cutoff(cutoff)?;
    let diag: Vec<C64> = (0..cutoff).map(|k| C64::from_polar(1.0, phi * k as f64)).collect();
    let rows = diag.iter().enumerate().map(|(k, &v)| vec![(k, v)]).collect();
    Ok(CvGate {
        kind: CvGateKind::Rotation,
        params: vec![phi],
        cutoff,
        op: SparseMatrix::from_rows(cutoff, rows),
    })
}

/// `D(α) = exp(α·â† − α*·â)`.
pub fn displacement(alpha: C64, cutoff: usize) -> Result<CvGate> {
    let ops = LadderOps::new(cutoff)?;
    let mut generator = ops.create().scale(alpha);
    generator.add_scaled(-alpha.conj(), ops.annihilate());
    let u = expm(&generator)?;
    Ok(dense_gate(CvGateKind::Displacement, vec![alpha.re, alpha.im], cutoff, &u))
}

/// `BS(θ, φ) = exp(θ(e^{iφ}·â†b̂ − e^{−iφ}·âb̂†))` on modes `a ⊗ b`.
///
/// The truncated generator only couples `|j,k⟩` with `|j±1,k∓1⟩`, so it is
/// block diagonal over total photon number `j + k`. Each block is at most
/// `d×d` and is exponentiated separately.
pub fn beamsplitter(theta: f64, phi: f64, cutoff: usize) -> Result<CvGate> {
    check_cutoff(cutoff)?;
    let d = cutoff;
    let fwd = C64::from_polar(theta, phi);
    let back = -fwd.conj();
    let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); d * d];

    for total in 0..=2 * (d - 1) {
        let j_lo = total.saturating_sub(d - 1);
        let j_hi = total.min(d - 1);
        let size = j_hi - j_lo + 1;
        let mut block = ComplexMatrix::zeros(size, size);
        for t in 0..size {
            let j = j_lo + t;
            let k = total - j;
            // â†b̂ |j,k⟩ = √(j+1)√k |j+1,k−1⟩
            if j + 1 < d && k >= 1 {
                block[(t + 1, t)] += fwd * ((j + 1) as f64).sqrt() * (k as f64).sqrt();
            }
            // âb̂† |j,k⟩ = √j√(k+1) |j−1,k+1⟩
            if j >= 1 && k + 1 < d {
                block[(t - 1, t)] += back * (j as f64).sqrt() * ((k + 1) as f64).sqrt();
            }
        }
        let u = expm(&block)?;
        for r in 0..size {
            let row_index = (j_lo + r) * d + (total - j_lo - r);
            for c in 0..size {
                let v = u[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    rows[row_index].push(((j_lo + c) * d + (total - j_lo - c), v));
                }
            }
        }
    }
    for row in &mut rows {
        row.sort_by_key(|&(c, _)| c);
    }
    Ok(CvGate {
        kind: CvGateKind::Beamsplitter,
        params: vec![theta, phi],
        cutoff,
        op: SparseMatrix::from_rows(d * d, rows),
    })
}

/// The gate sequence of an interferometer over `m` adjacent modes, in
/// application order: beamsplitters on `(0,1), (1,2), …, (m−2,m−1)`, then one
/// rotation per mode.
pub fn interferometer_gates(
    bs_params: &[(f64, f64)],
    rot_params: &[f64],
    m_modes: usize,
    cutoff: usize,
) -> Result<Vec<(CvGate, Vec<usize>)>> {
    if m_modes == 0 {
        return Err(SimError::InvalidArgument("interferometer needs at least one mode".into()));
    }
    if bs_params.len() != m_modes - 1 {
        return Err(SimError::Arity {
            gate: "INTERF beamsplitters".into(),
            expected: m_modes - 1,
            found: bs_params.len(),
        });
    }
    if rot_params.len() != m_modes {
        return Err(SimError::Arity {
            gate: "INTERF rotations".into(),
            expected: m_modes,
            found: rot_params.len(),
        });
    }
    let mut seq = Vec::with_capacity(2 * m_modes - 1);
    for (j, &(theta, phi)) in bs_params.iter().enumerate() {
        seq.push((beamsplitter(theta, phi, cutoff)?, vec![j, j + 1]));
    }
    for (j, &phi) in rot_params.iter().enumerate() {
        seq.push((rotation(phi, cutoff)?, vec![j]));
    }
    Ok(seq)
}

/// Largest basis size for which [`interferometer`] builds a dense matrix.
pub const MAX_DENSE_INTERFEROMETER: usize = 1 << 10;

/// Dense `d^m × d^m` interferometer `(⊗R) · BS_{m−2} ⋯ BS_0`.
pub fn interferometer(
    bs_params: &[(f64, f64)],
    rot_params: &[f64],
    m_modes: usize,
    cutoff: usize,
) -> Result<ComplexMatrix> {
    let gates = interferometer_gates(bs_params, rot_params, m_modes, cutoff)?;
    let dim = super::register_dim(m_modes, cutoff)?;
    if dim > MAX_DENSE_INTERFEROMETER {
        return Err(SimError::Capacity(format!(
            "dense interferometer of dimension {dim} exceeds {MAX_DENSE_INTERFEROMETER}"
        )));
    }
    // Push each basis column through the sequence; column c of U is U|c⟩.
    let mut u = ComplexMatrix::zeros(dim, dim);
    for c in 0..dim {
        let mut col = vec![C64::new(0.0, 0.0); dim];
        col[c] = C64::new(1.0, 0.0);
        for (gate, targets) in &gates {
            col = crate::kernel::apply_local_sparse(
                &col,
                cutoff,
                m_modes,
                targets,
                gate.operator(),
            )?;
        }
        for (r, v) in col.into_iter().enumerate() {
            u[(r, c)] = v;
        }
    }
    Ok(u)
}
