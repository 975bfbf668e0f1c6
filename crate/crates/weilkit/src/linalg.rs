//! Small dense-matrix helpers shared across the crate: symmetry checks, the
//! standard symplectic form, a scaling-and-squaring matrix exponential, and
//! branch-tracked square-root continuation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, WeilError};

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ‖m − mᵀ‖_F / max(1, ‖m‖_F).
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).norm() / m.norm().max(1.0)
}

pub fn asymmetry_c(m: &DMatrix<Complex64>) -> f64 {
    (m - m.transpose()).norm() / m.norm().max(1.0)
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub fn symmetrize_c(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.transpose()) * c64(0.5, 0.0)
}

/// Symmetrize after checking the asymmetry is below `tol`.
pub fn checked_symmetrize(m: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let asym = asymmetry(m);
    if asym > tol {
        return Err(WeilError::Asymmetry(asym, tol));
    }
    Ok(symmetrize(m))
}

/// The standard form J = [[0, E], [-E, 0]] on 2n-dimensional phase space.
pub fn standard_j(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| c64(x, 0.0))
}

pub fn real_part(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub fn imag_part(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    m.map(|z| z.im)
}

/// Smallest eigenvalue of a (symmetrized) real matrix.
pub fn min_symmetric_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let sym = symmetrize(m);
    let eig = sym.symmetric_eigen();
    eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Signature (#positive − #negative eigenvalues) of a symmetric real matrix.
/// Eigenvalues with |λ| ≤ tol count as zero.
pub fn symmetric_signature(m: &DMatrix<f64>, tol: f64) -> i32 {
    let eig = symmetrize(m).symmetric_eigen();
    let mut sig = 0i32;
    for &l in eig.eigenvalues.iter() {
        if l > tol {
            sig += 1;
        } else if l < -tol {
            sig -= 1;
        }
    }
    sig
}

pub fn complex_inverse(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| WeilError::SingularMatrix(m.determinant().norm()))
}

pub fn real_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| WeilError::SingularMatrix(m.determinant().abs()))
}

/// Crude condition estimate ‖M‖_F · ‖M⁻¹‖_F; +∞ when singular.
pub fn condition_estimate(m: &DMatrix<Complex64>) -> f64 {
    match m.clone().try_inverse() {
        Some(inv) => m.norm() * inv.norm(),
        None => f64::INFINITY,
    }
}

/// Wrap an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(std::f64::consts::TAU);
    if y > std::f64::consts::PI {
        y -= std::f64::consts::TAU;
    }
    y
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        let s: f64 = (0..m.nrows()).map(|i| m[(i, j)].abs()).sum();
        best = best.max(s);
    }
    best
}

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant; the scaling threshold keeps the backward error at the
/// double-precision unit roundoff, well inside 1e-13.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    const THETA_13: f64 = 5.371_920_351_148_152;
    #[rustfmt::skip]
    const B: [f64; 14] = [
        64_764_752_532_480_000.0, 32_382_376_266_240_000.0, 7_771_770_303_897_600.0,
        1_187_353_796_428_800.0, 129_060_195_264_000.0, 10_559_470_521_600.0,
        670_442_572_800.0, 33_522_128_640.0, 1_323_241_920.0, 40_840_800.0,
        960_960.0, 16_380.0, 182.0, 1.0,
    ];
    let dim = a.nrows();
    assert_eq!(dim, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 2f64.powi(-s);
    let id = DMatrix::<f64>::identity(dim, dim);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_inner = &a6 * (&a6 * B[13] + &a4 * B[11] + &a2 * B[9])
        + &a6 * B[7]
        + &a4 * B[5]
        + &a2 * B[3]
        + &id * B[1];
    let u = &scaled * u_inner;
    let v = &a6 * (&a6 * B[12] + &a4 * B[10] + &a2 * B[8])
        + &a6 * B[6]
        + &a4 * B[4]
        + &a2 * B[2]
        + &id * B[0];
    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut r = lhs
        .lu()
        .solve(&rhs)
        .expect("Padé denominator singular; input matrix not representable");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Continue the square root of `value_along(t)` from a known value at t = 0
/// to t = 1 by adaptive bisection, keeping every phase step below π/2.
///
/// `sqrt_at_start` must square to `value_along(0.0)`. Fails with
/// [`WeilError::Continuation`] once the step underflows 2^-max_depth, which
/// happens only when the path runs into a zero of `value_along`.
pub fn continue_sqrt<F>(value_along: F, sqrt_at_start: Complex64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut t = 0.0f64;
    let mut current = value_along(0.0);
    if current.norm() == 0.0 {
        return Err(WeilError::Continuation { depth: 0 });
    }
    let mut sqrt = sqrt_at_start;
    let mut step = 1.0f64;
    let min_step = 2f64.powi(-(max_depth as i32));
    let mut depth = 0u32;
    while t < 1.0 {
        let tn = (t + step).min(1.0);
        let next = value_along(tn);
        let ratio = next / current;
        let accept = ratio.re.is_finite()
            && ratio.im.is_finite()
            && ratio.norm() > 0.0
            && ratio.arg().abs() < std::f64::consts::FRAC_PI_2;
        if accept {
            sqrt *= ratio.sqrt();
            current = next;
            t = tn;
            step = (step * 2.0).min(1.0);
        } else {
            step *= 0.5;
            depth += 1;
            if step < min_step {
                return Err(WeilError::Continuation { depth });
            }
        }
    }
    Ok(sqrt)
}

/// Square root of `det(pathᵀ = (1-t)·from + t·to)` continued from a known
/// root at the start matrix.
pub fn continue_sqrt_det_segment(
    from: &DMatrix<Complex64>,
    to: &DMatrix<Complex64>,
    sqrt_at_start: Complex64,
    max_depth: u32,
) -> Result<Complex64> {
    continue_sqrt(
        |t| {
            let m = from * c64(1.0 - t, 0.0) + to * c64(t, 0.0);
            m.determinant()
        },
        sqrt_at_start,
        max_depth,
    )
}

/// Quadratic form xᵀ M x for a real matrix and real vector.
pub fn quadratic_form(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    (x.transpose() * m * x)[(0, 0)]
}
