//! Closed-form Gaussian states λ·exp((i/2) xᵀZx) with Z in the Siegel upper
//! half-plane, the exact metaplectic action on them, Gaussian inner
//! products, and annihilation-system residuals.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, WeilError};
use crate::linalg::{self, c64};
use crate::siegel::{self, MetaplecticElement, SiegelPoint, CONTINUATION_DEPTH};

/// λ·ψ_Z with λ ≠ 0 and Im Z positive definite, so the state is Schwartz.
#[derive(Debug, Clone)]
pub struct GaussianState {
    amplitude: Complex64,
    z: SiegelPoint,
}

impl GaussianState {
    pub fn new(amplitude: Complex64, z: SiegelPoint) -> Result<Self> {
        if amplitude.norm() == 0.0 {
            return Err(WeilError::ZeroAmplitude);
        }
        Ok(Self { amplitude, z })
    }

    /// Unit-amplitude state at the base point, x ↦ exp(−|x|²/2).
    pub fn standard(n: usize) -> Self {
        Self {
            amplitude: c64(1.0, 0.0),
            z: SiegelPoint::base_point(n),
        }
    }

    pub fn n(&self) -> usize {
        self.z.n()
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn z(&self) -> &SiegelPoint {
        &self.z
    }

    /// Rescale the amplitude; `None` is the zero state, which the type
    /// deliberately does not represent.
    pub fn scaled(&self, factor: Complex64) -> Option<Self> {
        let amplitude = self.amplitude * factor;
        (amplitude.norm() > 0.0).then(|| Self {
            amplitude,
            z: self.z.clone(),
        })
    }

    /// λ·exp((i/2) xᵀZx).
    pub fn evaluate(&self, x: &DVector<f64>) -> Complex64 {
        let xc = x.map(|v| c64(v, 0.0));
        let q = (xc.transpose() * self.z.matrix() * &xc)[(0, 0)];
        self.amplitude * (c64(0.0, 0.5) * q).exp()
    }
}

/// Exact metaplectic action: Z ↦ gZ and λ ↦ λ/ε(Z) with ε the continued
/// branch of √det(CZ+D).
pub fn mp_act(m: &MetaplecticElement, s: &GaussianState) -> Result<GaussianState> {
    let eps = siegel::branch_continue(m, s.z())?;
    let z = siegel::siegel_action(m.symplectic(), s.z())?;
    GaussianState::new(s.amplitude() / eps, z)
}

/// ∫ conj(s1) s2 dx = conj(λ₁) λ₂ (2π)^{n/2} det(−i(Z₂ − conj(Z₁)))^{−1/2},
/// the square-root branch continued from the positive-real value at the base
/// point.
pub fn inner_product(s1: &GaussianState, s2: &GaussianState) -> Result<Complex64> {
    if s1.n() != s2.n() {
        return Err(WeilError::DimensionMismatch {
            expected: s1.n(),
            got: s2.n(),
        });
    }
    let n = s1.n();
    let w_end = (s2.z().matrix() - s1.z().matrix().conjugate()) * c64(0.0, -1.0);
    let w_start = DMatrix::from_diagonal_element(n, n, c64(2.0, 0.0));
    let sqrt_det = linalg::continue_sqrt_det_segment(
        &w_start,
        &w_end,
        c64(2f64.powf(n as f64 / 2.0), 0.0),
        CONTINUATION_DEPTH,
    )?;
    let tau = std::f64::consts::TAU;
    Ok(s1.amplitude().conj() * s2.amplitude() * c64(tau.powf(n as f64 / 2.0), 0.0) / sqrt_det)
}

/// Max over `samples` of |(v·x + w·i∂)(λψ_Z)(x)|, using the closed-form
/// derivative ∂ψ = i(Zx)ψ. Vanishes identically iff v = Zw.
pub fn annihilation_residual(
    s: &GaussianState,
    v: &DVector<Complex64>,
    w: &DVector<Complex64>,
    samples: &[DVector<f64>],
) -> f64 {
    let z = s.z().matrix();
    let mut worst = 0.0f64;
    for x in samples {
        let xc = x.map(|t| c64(t, 0.0));
        let zx = z * &xc;
        // (v·x)ψ + i w·(i Zx)ψ = [(v − Zw)·x] ψ
        let coeff = v.dot(&xc) - w.dot(&zx);
        let val = (coeff * s.evaluate(x)).norm();
        worst = worst.max(val);
    }
    worst
}
