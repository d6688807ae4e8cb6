use super::ladder::check_cutoff;
use crate::error::Result;
use crate::numeric::StateVector;

/// Closed-form squeezed vacuum truncated at a cutoff, before renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezedSeries {
    /// Fock amplitudes `c_k`, `k < cutoff`; odd entries are zero.
    pub coefficients: Vec<f64>,
    /// `1 − Σ c_k²`: probability lost to the truncation.
    pub norm_deficit: f64,
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Evaluates `c_{2n} = √((2n)!) / (2ⁿ n!) · tanhⁿ z / √cosh z` for `2n < cutoff`.
///
/// The magnitude is accumulated in log space so large `n` stays finite.
pub fn squeezed_vacuum_series(z: f64, cutoff: usize) -> Result<SqueezedSeries> {
    check_cutoff(cutoff)?;
    let t = z.tanh();
    let ln_prefactor = -0.5 * z.cosh().ln();
    let mut coefficients = vec![0.0; cutoff];
    for n in 0..=(cutoff - 1) / 2 {
        let value = if n == 0 {
            ln_prefactor.exp()
        } else if t == 0.0 {
            0.0
        } else {
            let ln_mag = 0.5 * ln_factorial(2 * n) - n as f64 * 2f64.ln() - ln_factorial(n)
                + n as f64 * t.abs().ln()
                + ln_prefactor;
            let sign = if t < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * ln_mag.exp()
        };
        coefficients[2 * n] = value;
    }
    let norm_deficit = 1.0 - coefficients.iter().map(|c| c * c).sum::<f64>();
    Ok(SqueezedSeries { coefficients, norm_deficit })
}

/// Squeezed vacuum from the closed-form series, renormalized after truncation.
pub fn prepare_squeezed_vacuum(z: f64, cutoff: usize) -> Result<StateVector> {
    let series = squeezed_vacuum_series(z, cutoff)?;
    StateVector::from_real(&series.coefficients).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_squeezing_is_vacuum() {
        let v = prepare_squeezed_vacuum(0.0, 8).unwrap();
        assert_eq!(v, StateVector::basis(8, 0));
    }

    #[test]
    fn second_coefficient() {
        let z: f64 = 0.5;
        let series = squeezed_vacuum_series(z, 10).unwrap();
        // n = 1 term: √2! / (2·1!) · tanh z / √cosh z
        let expected = 2f64.sqrt() / 2.0 * z.tanh() / z.cosh().sqrt();
        assert!((series.coefficients[2] - expected).abs() < 1e-15);
        assert!((series.coefficients[2] - 0.3077).abs() < 1e-4);
    }

    #[test]
    fn odd_levels_are_exactly_zero() {
        for z in [-0.7, 0.25, 1.0] {
            let v = prepare_squeezed_vacuum(z, 21).unwrap();
            for k in (1..21).step_by(2) {
                assert_eq!(v[k].re, 0.0);
                assert_eq!(v[k].im, 0.0);
            }
        }
    }

    #[test]
    fn stays_finite_at_largest_cutoff() {
        let s = squeezed_vacuum_series(2.5, 64).unwrap();
        assert!(s.coefficients.iter().all(|c| c.is_finite()));
        assert!(s.norm_deficit > 0.0 && s.norm_deficit < 1.0);
        assert!(prepare_squeezed_vacuum(2.5, 64).unwrap().is_normalized());
    }

    #[test]
    fn negative_squeezing_alternates_sign() {
        let s = squeezed_vacuum_series(-0.5, 8).unwrap();
        assert!(s.coefficients[2] < 0.0);
        assert!(s.coefficients[4] > 0.0);
    }
}
