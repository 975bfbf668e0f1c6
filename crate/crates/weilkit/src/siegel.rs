//! The Siegel upper half-plane, its real boundary chart, and the metaplectic
//! two-fold cover realized as pairs (symplectic matrix, branch of
//! √det(CZ+D)).
//!
//! Branches are anchored at the base point Z = iE, the fixed point of the
//! unitary stabilizer, and transported by adaptive continuation along
//! straight segments; the half-plane is simply connected and the cocycle
//! determinant never vanishes on it, so the transported value is
//! path-independent.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WeilError};
use crate::linalg::{self, c64};
use crate::symplectic::{self, QuadraticHamiltonian, SymplecticMatrix};

/// Maximum bisection depth for branch continuation.
pub const CONTINUATION_DEPTH: u32 = 40;

/// A complex symmetric matrix with positive-definite imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    n: usize,
    z: DMatrix<Complex64>,
}

impl SiegelPoint {
    pub fn new(z: DMatrix<Complex64>) -> Result<Self> {
        if z.nrows() != z.ncols() {
            return Err(WeilError::DimensionMismatch {
                expected: z.nrows(),
                got: z.ncols(),
            });
        }
        let asym = linalg::asymmetry_c(&z);
        if asym > symplectic::SYMMETRY_TOL {
            return Err(WeilError::Asymmetry(asym, symplectic::SYMMETRY_TOL));
        }
        let z = linalg::symmetrize_c(&z);
        let im = linalg::imag_part(&z);
        let min_eig = linalg::min_symmetric_eigenvalue(&im);
        if min_eig <= 1e-12 * im.norm().max(1.0) {
            return Err(WeilError::NotSiegelInterior(min_eig));
        }
        Ok(Self { n: z.nrows(), z })
    }

    pub fn from_real_imag(re: &DMatrix<f64>, im: &DMatrix<f64>) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(WeilError::DimensionMismatch {
                expected: re.nrows(),
                got: im.nrows(),
            });
        }
        let z = DMatrix::from_fn(re.nrows(), re.ncols(), |i, j| c64(re[(i, j)], im[(i, j)]));
        Self::new(z)
    }

    /// The base point iE.
    pub fn base_point(n: usize) -> Self {
        Self {
            n,
            z: DMatrix::from_diagonal_element(n, n, c64(0.0, 1.0)),
        }
    }

    /// Scalar point (n = 1).
    pub fn scalar(z: Complex64) -> Result<Self> {
        Self::new(DMatrix::from_element(1, 1, z))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.z
    }

    pub fn re(&self) -> DMatrix<f64> {
        linalg::real_part(&self.z)
    }

    pub fn im(&self) -> DMatrix<f64> {
        linalg::imag_part(&self.z)
    }

    pub fn im_min_eigenvalue(&self) -> f64 {
        linalg::min_symmetric_eigenvalue(&self.im())
    }
}

/// A real symmetric matrix: a point of the boundary chart.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryChartPoint {
    n: usize,
    a: DMatrix<f64>,
}

impl BoundaryChartPoint {
    pub fn new(a: &DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(WeilError::DimensionMismatch {
                expected: a.nrows(),
                got: a.ncols(),
            });
        }
        Ok(Self {
            n: a.nrows(),
            a: linalg::checked_symmetrize(a, symplectic::SYMMETRY_TOL)?,
        })
    }

    pub fn scalar(a: f64) -> Self {
        Self {
            n: 1,
            a: DMatrix::from_element(1, 1, a),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    /// Lift into the half-plane as a + iyE.
    pub fn lift(&self, y: f64) -> Result<SiegelPoint> {
        let im = DMatrix::from_diagonal_element(self.n, self.n, y);
        SiegelPoint::from_real_imag(&self.a, &im)
    }
}

/// det(CZ + D) for a symplectic matrix and half-plane point.
pub fn cocycle_det(g: &SymplecticMatrix, z: &SiegelPoint) -> Complex64 {
    let c = linalg::to_complex(&g.block_c());
    let d = linalg::to_complex(&g.block_d());
    (c * z.matrix() + d).determinant()
}

/// Fractional linear action Z ↦ (AZ + B)(CZ + D)⁻¹.
pub fn siegel_action(g: &SymplecticMatrix, z: &SiegelPoint) -> Result<SiegelPoint> {
    if g.n() != z.n() {
        return Err(WeilError::DimensionMismatch {
            expected: g.n(),
            got: z.n(),
        });
    }
    let a = linalg::to_complex(&g.block_a());
    let b = linalg::to_complex(&g.block_b());
    let c = linalg::to_complex(&g.block_c());
    let d = linalg::to_complex(&g.block_d());
    let denom = &c * z.matrix() + &d;
    let cond = linalg::condition_estimate(&denom);
    if !cond.is_finite() || cond > 1e12 {
        return Err(WeilError::NearSingularCocycle(cond));
    }
    let w = (&a * z.matrix() + &b) * linalg::complex_inverse(&denom)?;
    // Symmetric in exact arithmetic; scrub roundoff before validating.
    SiegelPoint::new(linalg::symmetrize_c(&w))
}

/// A symplectic matrix together with a branch value of √det(C·iE + D) at the
/// base point. The two lifts of a given matrix differ by the sign of `eps0`;
/// the identity lift is (E, +1) and (E, −1) is the nontrivial center element.
#[derive(Debug, Clone)]
pub struct MetaplecticElement {
    g: SymplecticMatrix,
    eps0: Complex64,
}

impl MetaplecticElement {
    pub fn new(g: SymplecticMatrix, eps0: Complex64) -> Result<Self> {
        if eps0.norm() == 0.0 || !eps0.re.is_finite() || !eps0.im.is_finite() {
            return Err(WeilError::InvalidBranchValue(f64::INFINITY));
        }
        let target = cocycle_det(&g, &SiegelPoint::base_point(g.n()));
        let rel = (eps0 * eps0 - target).norm() / target.norm().max(1e-300);
        if rel > 1e-10 {
            return Err(WeilError::InvalidBranchValue(rel));
        }
        Ok(Self { g, eps0 })
    }

    /// Lift with the principal square root at the base point.
    pub fn from_symplectic_principal(g: SymplecticMatrix) -> Result<Self> {
        let eps0 = cocycle_det(&g, &SiegelPoint::base_point(g.n())).sqrt();
        Self::new(g, eps0)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            g: SymplecticMatrix::identity(n),
            eps0: c64(1.0, 0.0),
        }
    }

    /// The nontrivial central element (E, −1).
    pub fn center(n: usize) -> Self {
        Self {
            g: SymplecticMatrix::identity(n),
            eps0: c64(-1.0, 0.0),
        }
    }

    /// Multiplication by exp((i/2) xᵀBx): the lift of [[E, B], [0, E]] with
    /// eps0 = +1.
    pub fn shear(b: &DMatrix<f64>) -> Result<Self> {
        Ok(Self {
            g: symplectic::generator_shear(b)?,
            eps0: c64(1.0, 0.0),
        })
    }

    /// The quarter-turn with principal branch; for n = 1 this is
    /// eps0 = √(−i) = e^{−iπ/4}.
    pub fn fourier(n: usize) -> Self {
        let g = symplectic::generator_fourier(n);
        Self::from_symplectic_principal(g).expect("principal branch of the quarter-turn")
    }

    /// Point transformation lift with principal branch.
    pub fn gl(a: &DMatrix<f64>) -> Result<Self> {
        Self::from_symplectic_principal(symplectic::generator_gl(a)?)
    }

    /// Oscillator rotation at angle θ with the branch continued from the
    /// identity along the rotation path: eps0 = e^{inθ/2}.
    pub fn rotation(n: usize, theta: f64) -> Self {
        let e = DMatrix::identity(n, n);
        let g = SymplecticMatrix::from_blocks(
            &(&e * theta.cos()),
            &(&e * (-theta.sin())),
            &(&e * theta.sin()),
            &(&e * theta.cos()),
        )
        .expect("rotation blocks are symplectic");
        Self {
            g,
            eps0: Complex64::from_polar(1.0, 0.5 * n as f64 * theta),
        }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn symplectic(&self) -> &SymplecticMatrix {
        &self.g
    }

    pub fn eps0(&self) -> Complex64 {
        self.eps0
    }

    /// Same symplectic part, opposite sheet of the cover.
    pub fn other_sheet(&self) -> Self {
        Self {
            g: self.g.clone(),
            eps0: -self.eps0,
        }
    }
}

/// The branch of √det(CZ + D) fixed by `m.eps0()` at the base point,
/// transported to `z` along the straight segment from iE.
pub fn branch_continue(m: &MetaplecticElement, z: &SiegelPoint) -> Result<Complex64> {
    if m.n() != z.n() {
        return Err(WeilError::DimensionMismatch {
            expected: m.n(),
            got: z.n(),
        });
    }
    let c = linalg::to_complex(&m.symplectic().block_c());
    let d = linalg::to_complex(&m.symplectic().block_d());
    let base = SiegelPoint::base_point(m.n());
    let path = |t: f64| {
        let zt = base.matrix() * c64(1.0 - t, 0.0) + z.matrix() * c64(t, 0.0);
        (&c * zt + &d).determinant()
    };
    linalg::continue_sqrt(path, m.eps0(), CONTINUATION_DEPTH)
}

/// Metaplectic product: symplectic parts multiply and the branch composes
/// through the cocycle, eps0(m1·m2) = ε₁(g₂·iE) · eps0(m2).
pub fn mp_mul(m1: &MetaplecticElement, m2: &MetaplecticElement) -> Result<MetaplecticElement> {
    if m1.n() != m2.n() {
        return Err(WeilError::DimensionMismatch {
            expected: m1.n(),
            got: m2.n(),
        });
    }
    let g12 = symplectic::compose(m1.symplectic(), m2.symplectic())?;
    let mid = siegel_action(m2.symplectic(), &SiegelPoint::base_point(m1.n()))?;
    let eps0 = branch_continue(m1, &mid)? * m2.eps0();
    MetaplecticElement::new(g12, eps0)
}

/// Metaplectic inverse: the unique lift of g⁻¹ with m · m⁻¹ = (E, +1).
pub fn mp_inv(m: &MetaplecticElement) -> Result<MetaplecticElement> {
    let g_inv = symplectic::inverse(m.symplectic());
    let mid = siegel_action(&g_inv, &SiegelPoint::base_point(m.n()))?;
    let eps0 = c64(1.0, 0.0) / branch_continue(m, &mid)?;
    MetaplecticElement::new(g_inv, eps0)
}

/// Lift of the classical flow of `h` continued from the identity along the
/// time path.
pub fn metaplectic_flow(h: &QuadraticHamiltonian, t: f64) -> Result<MetaplecticElement> {
    let base = SiegelPoint::base_point(h.n());
    let along = |s: f64| {
        let g = symplectic::hamiltonian_flow(h, s * t);
        cocycle_det(&g, &base)
    };
    let eps0 = linalg::continue_sqrt(along, c64(1.0, 0.0), CONTINUATION_DEPTH)?;
    MetaplecticElement::new(symplectic::hamiltonian_flow(h, t), eps0)
}

/// Boundary limit of 1/√det(CZ+D) at a chart point: modulus, quarter-turn
/// count and diagnostics.
#[derive(Debug, Clone)]
pub struct MaslovPhase {
    /// |det(Ca + D)|^{-1/2}.
    pub modulus: f64,
    /// k in the boundary phase e^{iπk/2}, reduced mod 4.
    pub quarter_turns: i32,
    /// |extrapolated phase − kπ/2| in radians.
    pub snap_residual: f64,
    /// Relative gap between the extrapolated modulus and |det(Ca+D)|^{-1/2}.
    pub modulus_agreement: f64,
}

/// Evaluate 1/ε(a + iyE) for y = 1e-2, 1e-3, 1e-4 and extrapolate to the
/// boundary. At a regular chart point the limiting phase is a quarter turn.
pub fn maslov_boundary_phase(
    m: &MetaplecticElement,
    a: &BoundaryChartPoint,
) -> Result<MaslovPhase> {
    if m.n() != a.n() {
        return Err(WeilError::DimensionMismatch {
            expected: m.n(),
            got: a.n(),
        });
    }
    let c = m.symplectic().block_c();
    let d = m.symplectic().block_d();
    let det_boundary = (c * a.matrix() + d).determinant();
    if det_boundary.abs() <= 1e-8 {
        return Err(WeilError::BoundaryCaustic(det_boundary.abs()));
    }
    let modulus = det_boundary.abs().powf(-0.5);

    let ys = [1e-2, 1e-3, 1e-4];
    let mut vals = [c64(0.0, 0.0); 3];
    for (slot, &y) in vals.iter_mut().zip(ys.iter()) {
        let z = a.lift(y)?;
        *slot = c64(1.0, 0.0) / branch_continue(m, &z)?;
    }
    // Unwrap phases against the first sample, then extrapolate linearly in y
    // from the two smallest.
    let phi0 = vals[0].arg();
    let mut phis = [phi0, 0.0, 0.0];
    for i in 1..3 {
        let raw = vals[i].arg();
        phis[i] = raw + ((phis[i - 1] - raw) / std::f64::consts::TAU).round() * std::f64::consts::TAU;
    }
    // y3 = y2/10: linear model f(y) = f0 + c y gives f0 = f3 + (f3 - f2)/9.
    let phase = phis[2] + (phis[2] - phis[1]) / 9.0;
    let mod_extrap = vals[2].norm() + (vals[2].norm() - vals[1].norm()) / 9.0;

    let k = (phase / std::f64::consts::FRAC_PI_2).round();
    let snap_residual = (phase - k * std::f64::consts::FRAC_PI_2).abs();
    let quarter_turns = (k as i64).rem_euclid(4) as i32;
    Ok(MaslovPhase {
        modulus,
        quarter_turns,
        snap_residual,
        modulus_agreement: (mod_extrap - modulus).abs() / modulus,
    })
}
