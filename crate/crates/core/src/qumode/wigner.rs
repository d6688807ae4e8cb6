//! Wigner quasi-probability of a single qumode, in units with ħ = 1:
//!
//! ```text
//! W(x, p) = 1/(2π) ∫ e^{−ipy} ψ(x + y/2) ψ*(x − y/2) dy
//! ```
//!
//! `ψ` is the position wavefunction `Σ c_n φ_n(x)` over normalized Hermite
//! functions. The integral runs over the window where `ψ` is non-negligible
//! and is evaluated with adaptive Gauss–Kronrod (7/15) quadrature.

use std::f64::consts::PI;

use super::QumodeRegister;
use crate::error::{Result, SimError};
use crate::numeric::C64;

// Kronrod nodes on [0, 1] (descending) and weights; the Gauss 7-point rule
// uses the odd-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Absolute error target for one `W(x, p)` evaluation.
const QUAD_TOL: f64 = 1e-12;
const MAX_DEPTH: u32 = 40;
/// Distance past the outermost classical turning point beyond which every
/// Hermite function in range is below ~1e-15 relative.
const TAIL_MARGIN: f64 = 9.0;

/// Position-space view of a single-mode Fock state.
#[derive(Debug, Clone)]
pub struct WignerFunction {
    coeffs: Vec<C64>,
    reach: f64,
}

impl WignerFunction {
    /// From single-mode Fock amplitudes `c_0 … c_{d−1}`.
    pub fn new(amplitudes: &[C64]) -> Self {
        let used = amplitudes.iter().rposition(|c| c.norm() != 0.0).map_or(0, |k| k + 1);
        let reach = (2.0 * used as f64 + 1.0).sqrt() + TAIL_MARGIN;
        Self { coeffs: amplitudes[..used].to_vec(), reach }
    }

    /// `ψ(u) = Σ c_n φ_n(u)` with `φ_n` the normalized Hermite functions.
    pub fn wavefunction(&self, u: f64) -> C64 {
        let mut prev = 0.0;
        let mut cur = PI.powf(-0.25) * (-0.5 * u * u).exp();
        let mut acc = C64::new(0.0, 0.0);
        for (n, &c) in self.coeffs.iter().enumerate() {
            acc += c * cur;
            let nf = n as f64;
            let next = (2.0 / (nf + 1.0)).sqrt() * u * cur - (nf / (nf + 1.0)).sqrt() * prev;
            prev = cur;
            cur = next;
        }
        acc
    }

    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let half = 2.0 * (self.reach - x.abs());
        if half <= 0.0 || self.coeffs.is_empty() {
            return 0.0;
        }
        let integrand = |y: f64| {
            let v = C64::from_polar(1.0, -p * y)
                * self.wavefunction(x + 0.5 * y)
                * self.wavefunction(x - 0.5 * y).conj();
            v.re
        };
        // Start from pieces short enough to resolve both the e^{−ipy}
        // oscillation and the wavefunction nodes.
        let waves = half * (p.abs() + self.reach) / PI;
        let pieces = 8 + waves.ceil() as usize;
        let width = 2.0 * half / pieces as f64;
        let tol = QUAD_TOL / pieces as f64;
        let total: f64 = (0..pieces)
            .map(|k| {
                let a = -half + k as f64 * width;
                adaptive(&integrand, a, a + width, tol, 0)
            })
            .sum();
        total / (2.0 * PI)
    }
}

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * half, (k - g).abs() * half)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = kronrod(f, a, b);
    if err <= tol || depth >= MAX_DEPTH {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, 0.5 * tol, depth + 1) + adaptive(f, mid, b, 0.5 * tol, depth + 1)
}

fn single_mode(reg: &QumodeRegister) -> Result<WignerFunction> {
    if reg.m_modes() != 1 {
        return Err(SimError::InvalidArgument(format!(
            "Wigner function needs a single mode, register has {}",
            reg.m_modes()
        )));
    }
    Ok(WignerFunction::new(reg.state().amplitudes()))
}

pub fn wigner(reg: &QumodeRegister, x: f64, p: f64) -> Result<f64> {
    Ok(single_mode(reg)?.eval(x, p))
}

/// `W` over the Cartesian grid `xs × ps`, `x` varying slowest.
pub fn wigner_grid(reg: &QumodeRegister, xs: &[f64], ps: &[f64]) -> Result<Vec<f64>> {
    let w = single_mode(reg)?;
    let points: Vec<(f64, f64)> =
        xs.iter().flat_map(|&x| ps.iter().map(move |&p| (x, p))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        return Ok(points.par_iter().map(|&(x, p)| w.eval(x, p)).collect());
    }
    #[allow(unreachable_code)]
    Ok(points.iter().map(|&(x, p)| w.eval(x, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::StateVector;
    use crate::qumode::prepare_squeezed_vacuum;

    #[test]
    fn vacuum_and_single_photon_at_origin() {
        let vac = QumodeRegister::fock(&[0], 6).unwrap();
        assert!((wigner(&vac, 0.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-6);
        let one = QumodeRegister::fock(&[1], 6).unwrap();
        assert!((wigner(&one, 0.0, 0.0).unwrap() + 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        // midpoint rule on a wide grid; exact enough for smooth Gaussians
        let h = 0.01;
        let grid: Vec<f64> = (-2000..=2000).map(|k| k as f64 * h).collect();
        for n in 0..5 {
            for m in 0..5 {
                let wn = WignerFunction::new(StateVector::basis(5, n).amplitudes());
                let wm = WignerFunction::new(StateVector::basis(5, m).amplitudes());
                let overlap: f64 =
                    grid.iter().map(|&u| (wn.wavefunction(u) * wm.wavefunction(u)).re).sum::<f64>()
                        * h;
                let expected = if n == m { 1.0 } else { 0.0 };
                assert!((overlap - expected).abs() < 1e-10, "⟨{n}|{m}⟩ = {overlap}");
            }
        }
    }

    #[test]
    fn squeezed_state_is_stretched_along_x() {
        let reg = QumodeRegister::from_state(1, 30, prepare_squeezed_vacuum(0.5, 30).unwrap())
            .unwrap();
        let along_x = wigner(&reg, 1.0, 0.0).unwrap();
        let along_p = wigner(&reg, 0.0, 1.0).unwrap();
        assert!(along_x > along_p);
    }

    #[test]
    fn far_field_vanishes_and_multimode_rejected() {
        let vac = QumodeRegister::fock(&[0], 4).unwrap();
        assert_eq!(wigner(&vac, 50.0, 0.0).unwrap(), 0.0);
        let two = QumodeRegister::vacuum(2, 4).unwrap();
        assert!(wigner(&two, 0.0, 0.0).is_err());
        assert!(wigner_grid(&two, &[0.0], &[0.0]).is_err());
    }
}
