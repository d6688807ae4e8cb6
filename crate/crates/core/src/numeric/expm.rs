//! Matrix exponential.
//!
//! [`expm`] uses scaling and squaring around diagonal Padé approximants of
//! degree 3, 5, 7, 9 or 13, choosing the lowest degree whose backward error
//! bound holds for the matrix 1-norm (Higham, "The scaling and squaring method
//! for the matrix exponential revisited", 2005). [`expm_taylor`] is the plain
//! truncated power series, kept as a reference route.

use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;
use crate::error::{Result, SimError};

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm thresholds below which the degree-m approximant is accurate to unit
// roundoff in double precision.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539_398_330_063_23e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068e0;
const THETA13: f64 = 5.371920351148152e0;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Matrix exponential `e^m` by scaling and squaring.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(SimError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(ComplexMatrix::identity(0));
    }
    let norm = m.norm_one();
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    if !norm.is_finite() {
        return Err(SimError::InvalidArgument("matrix has non-finite entries".into()));
    }

    let a2 = m * m;
    if norm <= THETA3 {
        return pade_low(m, &a2, &PADE3);
    }
    if norm <= THETA5 {
        return pade_low(m, &a2, &PADE5);
    }
    if norm <= THETA7 {
        return pade_low(m, &a2, &PADE7);
    }
    if norm <= THETA9 {
        return pade_low(m, &a2, &PADE9);
    }

    let s = (norm / THETA13).log2().ceil().max(0.0) as i32;
    let (scaled, scaled_a2) = if s > 0 {
        let f = 0.5f64.powi(s);
        (m.scale(re(f)), a2.scale(re(f * f)))
    } else {
        (m.clone(), a2)
    };
    let mut r = pade13(&scaled, &scaled_a2)?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

/// Degree 3..9 approximant: `U = A·Σ b_{2j+1} A^{2j}`, `V = Σ b_{2j} A^{2j}`.
fn pade_low(a: &ComplexMatrix, a2: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let ident = ComplexMatrix::identity(n);
    let mut u = ident.scale(re(b[1]));
    let mut v = ident.scale(re(b[0]));
    let mut power = ident;
    for j in 1..b.len() / 2 {
        power = &power * a2;
        u.add_scaled(re(b[2 * j + 1]), &power);
        v.add_scaled(re(b[2 * j]), &power);
    }
    let u = a * &u;
    pade_solve(&u, &v)
}

fn pade13(a: &ComplexMatrix, a2: &ComplexMatrix) -> Result<ComplexMatrix> {
    let b = &PADE13;
    let n = a.rows();
    let ident = ComplexMatrix::identity(n);
    let a4 = a2 * a2;
    let a6 = &a4 * a2;

    let mut inner_u = a6.scale(re(b[13]));
    inner_u.add_scaled(re(b[11]), &a4);
    inner_u.add_scaled(re(b[9]), a2);
    let mut u = &a6 * &inner_u;
    u.add_scaled(re(b[7]), &a6);
    u.add_scaled(re(b[5]), &a4);
    u.add_scaled(re(b[3]), a2);
    u.add_scaled(re(b[1]), &ident);
    let u = a * &u;

    let mut inner_v = a6.scale(re(b[12]));
    inner_v.add_scaled(re(b[10]), &a4);
    inner_v.add_scaled(re(b[8]), a2);
    let mut v = &a6 * &inner_v;
    v.add_scaled(re(b[6]), &a6);
    v.add_scaled(re(b[4]), &a4);
    v.add_scaled(re(b[2]), a2);
    v.add_scaled(re(b[0]), &ident);

    pade_solve(&u, &v)
}

/// `(V − U)⁻¹ (V + U)`.
fn pade_solve(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = v + u;
    let q = v - u;
    q.solve(&p)
}

/// Partial Taylor sum `Σ_{k=0}^{terms−1} m^k / k!`.
pub fn expm_taylor(m: &ComplexMatrix, terms: usize) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(SimError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if terms == 0 {
        return Err(SimError::InvalidArgument("Taylor sum needs at least one term".into()));
    }
    let n = m.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..terms {
        term = (&term * m).scale(re(1.0 / k as f64));
        sum.add_scaled(re(1.0), &term);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[re(0.0), re(1.0)], [re(1.0), re(0.0)]])
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let z = ComplexMatrix::zeros(5, 5);
        assert_eq!(expm(&z).unwrap(), ComplexMatrix::identity(5));
    }

    #[test]
    fn diagonal_is_entrywise() {
        let phi = 0.37;
        let d = 9;
        let gen = ComplexMatrix::diagonal(
            &(0..d).map(|k| C64::new(0.0, phi * k as f64)).collect::<Vec<_>>(),
        );
        let expected = ComplexMatrix::diagonal(
            &(0..d).map(|k| C64::from_polar(1.0, phi * k as f64)).collect::<Vec<_>>(),
        );
        assert!(expm(&gen).unwrap().max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn half_pi_x_rotation() {
        let gen = pauli_x().scale(C64::new(0.0, -FRAC_PI_2));
        let got = expm(&gen).unwrap();
        let expected = pauli_x().scale(C64::new(0.0, -1.0));
        assert!(got.max_abs_diff(&expected) < 1e-12);
        let oracle = expm_taylor(&gen, 64).unwrap();
        assert!(got.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn every_pade_degree_matches_taylor() {
        // scalings chosen to land in each norm bracket, including squaring
        for scale in [0.005, 0.1, 0.5, 1.5, 4.0, 20.0] {
            let m = ComplexMatrix::from_fn(4, 4, |i, j| {
                C64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0)
            });
            let m = m.scale(re(scale / m.norm_one()));
            let got = expm(&m).unwrap();
            // A long Taylor sum cancels badly at norm 20, so the reference
            // sums the series on m/2^s and squares back up.
            let s = (scale / 0.5f64).log2().ceil().max(0.0) as i32;
            let mut oracle = expm_taylor(&m.scale(re(0.5f64.powi(s))), 40).unwrap();
            for _ in 0..s {
                oracle = &oracle * &oracle;
            }
            let rel = got.max_abs_diff(&oracle) / oracle.max_abs();
            assert!(rel < 1e-12, "scale {scale}: rel err {rel:e}");
        }
    }

    #[test]
    fn taylor_small_cases() {
        let anything = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64, j as f64));
        assert_eq!(expm_taylor(&anything, 1).unwrap(), ComplexMatrix::identity(3));
        let d = ComplexMatrix::diagonal(&[C64::new(0.0, 1.0); 2]);
        let three = expm_taylor(&d, 3).unwrap();
        // 1 + i + i²/2
        assert!((three[(0, 0)] - C64::new(0.5, 1.0)).norm() < 1e-15);
        assert!((three[(1, 1)] - C64::new(0.5, 1.0)).norm() < 1e-15);
        assert_eq!(three[(0, 1)], re(0.0));
    }

    #[test]
    fn rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(expm(&m), Err(SimError::NotSquare { .. })));
        assert!(matches!(expm_taylor(&m, 3), Err(SimError::NotSquare { .. })));
    }
}
