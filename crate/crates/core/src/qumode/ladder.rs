use crate::error::{Result, SimError};
use crate::numeric::{ComplexMatrix, C64};

pub const MIN_CUTOFF: usize = 2;
pub const MAX_CUTOFF: usize = 64;

pub(crate) fn check_cutoff(cutoff: usize) -> Result<()> {
    if !(MIN_CUTOFF..=MAX_CUTOFF).contains(&cutoff) {
        return Err(SimError::InvalidArgument(format!(
            "cutoff {cutoff} outside {MIN_CUTOFF}..={MAX_CUTOFF}"
        )));
    }
    Ok(())
}

/// Creation, annihilation and number operators truncated at a cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderOps {
    cutoff: usize,
    create: ComplexMatrix,
    annihilate: ComplexMatrix,
    number: ComplexMatrix,
}

impl LadderOps {
    pub fn new(cutoff: usize) -> Result<Self> {
        check_cutoff(cutoff)?;
        let annihilate = ComplexMatrix::from_fn(cutoff, cutoff, |i, j| {
            if j == i + 1 {
                C64::new((j as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let create = annihilate.dagger();
        // √k·√k is not always exactly k in floating point, so the diagonal is
        // written out rather than taken from the product.
        let number = ComplexMatrix::diagonal(
            &(0..cutoff).map(|k| C64::new(k as f64, 0.0)).collect::<Vec<_>>(),
        );
        Ok(Self { cutoff, create, annihilate, number })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// `â†`: `â†|k⟩ = √(k+1)|k+1⟩`, with `â†|d−1⟩ = 0` under truncation.
    pub fn create(&self) -> &ComplexMatrix {
        &self.create
    }

    /// `â`: `â|k⟩ = √k|k−1⟩`, `â|0⟩ = 0`.
    pub fn annihilate(&self) -> &ComplexMatrix {
        &self.annihilate
    }

    /// `n̂ = â†â = diag(0, 1, …, d−1)`.
    pub fn number(&self) -> &ComplexMatrix {
        &self.number
    }
}

pub fn ladder_ops(cutoff: usize) -> Result<LadderOps> {
    LadderOps::new(cutoff)
}
