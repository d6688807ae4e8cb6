//! Local-operator kernels over registers of equal-dimension wires.
//!
//! Basis indices are big-endian: wire 0 is the most significant digit, so the
//! stride of wire `w` in an `n`-wire register of local dimension `d` is
//! `d^(n-1-w)`. A `k`-wire operator is indexed the same way over its targets,
//! `targets[0]` being its most significant digit.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::numeric::ComplexMatrix;

/// Checks that `targets` are distinct and in range.
pub fn check_targets(targets: &[usize], n_wires: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_wires {
            return Err(SimError::WireOutOfRange { wire: t, wires: n_wires });
        }
        if targets[..i].contains(&t) {
            return Err(SimError::DuplicateWire(t));
        }
    }
    Ok(())
}

fn checked_pow(d: usize, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| d.checked_pow(n))
        .ok_or_else(|| SimError::Capacity(format!("{d}^{n} basis states")))
}

struct Layout {
    local_dim: usize,
    target_strides: Vec<usize>,
}

impl Layout {
    fn new(local_dim: usize, n_wires: usize, targets: &[usize]) -> Self {
        let target_strides =
            targets.iter().map(|&t| local_dim.pow((n_wires - 1 - t) as u32)).collect();
        Self { local_dim, target_strides }
    }

    /// Local operator index of global basis index `i`.
    #[inline]
    fn local_index(&self, i: usize) -> usize {
        self.target_strides
            .iter()
            .fold(0, |acc, &s| acc * self.local_dim + (i / s) % self.local_dim)
    }

    /// Global offset contributed by local index `l`.
    #[inline]
    fn offset(&self, mut l: usize) -> usize {
        let mut off = 0;
        for &s in self.target_strides.iter().rev() {
            off += (l % self.local_dim) * s;
            l /= self.local_dim;
        }
        off
    }
}

fn check_operator(
    u: &ComplexMatrix,
    local_dim: usize,
    n_wires: usize,
    targets: &[usize],
) -> Result<usize> {
    check_targets(targets, n_wires)?;
    let block = checked_pow(local_dim, targets.len())?;
    if !u.is_square() {
        return Err(SimError::NotSquare { rows: u.rows(), cols: u.cols() });
    }
    if u.rows() != block {
        return Err(SimError::DimensionMismatch { expected: block, found: u.rows() });
    }
    Ok(block)
}

/// Square operator stored as per-row lists of nonzero `(column, value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseMatrix {
    pub fn from_rows(dim: usize, rows: Vec<Vec<(usize, C64)>>) -> Self {
        assert_eq!(rows.len(), dim);
        debug_assert!(rows.iter().flatten().all(|&(c, _)| c < dim));
        Self { dim, rows }
    }

    pub fn from_dense(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(SimError::NotSquare { rows: u.rows(), cols: u.cols() });
        }
        let rows = (0..u.rows())
            .map(|r| {
                u.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != C64::new(0.0, 0.0))
                    .map(|(c, &v)| (c, v))
                    .collect()
            })
            .collect();
        Ok(Self { dim: u.rows(), rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, C64)] {
        &self.rows[r]
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] = v;
            }
        }
        m
    }
}

/// Applies `u` to `targets` of a state, returning the new amplitudes.
pub fn apply_local(
    amps: &[C64],
    local_dim: usize,
    n_wires: usize,
    targets: &[usize],
    u: &ComplexMatrix,
) -> Result<Vec<C64>> {
    check_operator(u, local_dim, n_wires, targets)?;
    apply_local_sparse(amps, local_dim, n_wires, targets, &SparseMatrix::from_dense(u)?)
}

/// Sparse counterpart of [`apply_local`].
///
/// Each output amplitude is computed independently from the input, so the
/// result does not depend on how the work is split across threads.
pub fn apply_local_sparse(
    amps: &[C64],
    local_dim: usize,
    n_wires: usize,
    targets: &[usize],
    u: &SparseMatrix,
) -> Result<Vec<C64>> {
    check_targets(targets, n_wires)?;
    let block = checked_pow(local_dim, targets.len())?;
    if u.dim() != block {
        return Err(SimError::DimensionMismatch { expected: block, found: u.dim() });
    }
    let dim = checked_pow(local_dim, n_wires)?;
    if amps.len() != dim {
        return Err(SimError::DimensionMismatch { expected: dim, found: amps.len() });
    }
    let layout = Layout::new(local_dim, n_wires, targets);
    let offsets: Vec<usize> = (0..block).map(|l| layout.offset(l)).collect();
    let rows: Vec<Vec<(usize, C64)>> = (0..block)
        .map(|r| u.row(r).iter().map(|&(c, v)| (offsets[c], v)).collect())
        .collect();

    let kernel = |(i, out): (usize, &mut C64)| {
        let l = layout.local_index(i);
        let base = i - offsets[l];
        *out = rows[l].iter().map(|&(off, v)| v * amps[base + off]).sum();
    };
    let mut next = vec![C64::new(0.0, 0.0); dim];

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if dim >= 1 << 14 {
            next.par_iter_mut().enumerate().for_each(kernel);
            return Ok(next);
        }
    }
    next.iter_mut().enumerate().for_each(kernel);
    Ok(next)
}

/// Dense `d^n × d^n` matrix acting as `u` on `targets` and identity elsewhere.
pub fn embed(
    u: &ComplexMatrix,
    local_dim: usize,
    n_wires: usize,
    targets: &[usize],
) -> Result<ComplexMatrix> {
    check_operator(u, local_dim, n_wires, targets)?;
    let dim = checked_pow(local_dim, n_wires)?;
    let layout = Layout::new(local_dim, n_wires, targets);
    let rest = |i: usize| i - layout.offset(layout.local_index(i));
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        if rest(i) == rest(j) {
            u[(layout.local_index(i), layout.local_index(j))]
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}
