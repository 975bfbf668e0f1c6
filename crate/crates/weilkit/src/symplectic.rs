//! Real symplectic matrices, quadratic Hamiltonians and their classical
//! flows, and Heisenberg coefficient vectors.
//!
//! Phase-space points are column vectors `(p; x)` with `p` on top, and a
//! symplectic matrix is stored in block form `[[A, B], [C, D]]` acting on
//! such columns. A [`QuadraticHamiltonian`] `(a, b, c)` denotes the classical
//! function `H(x, p) = ½ xᵀa x + xᵀb p + ½ pᵀc p`; its quantization (with
//! `p = -i ∂/∂x` and the symmetric ordering of the cross term) is what the
//! grid-side evolution operators realize.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, WeilError};
use crate::linalg;

/// Default tolerance for symmetry checks at construction.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// A 2n×2n real matrix preserving the standard symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    n: usize,
    mat: DMatrix<f64>,
}

/// Residual ‖MᵀJM − J‖_F; errors on odd-dimensional input.
pub fn symplectic_residual(m: &DMatrix<f64>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(WeilError::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    if m.nrows() % 2 != 0 {
        return Err(WeilError::Dimension(m.nrows()));
    }
    let n = m.nrows() / 2;
    let j = linalg::standard_j(n);
    Ok((m.transpose() * &j * m - &j).norm())
}

/// Membership test: returns whether the residual is within `tol`, and the
/// residual itself.
pub fn is_symplectic(m: &DMatrix<f64>, tol: f64) -> Result<(bool, f64)> {
    let r = symplectic_residual(m)?;
    Ok((r <= tol, r))
}

impl SymplecticMatrix {
    /// Wrap a 2n×2n matrix, requiring the symplectic residual ≤ `tol`.
    pub fn from_matrix(mat: DMatrix<f64>, tol: f64) -> Result<Self> {
        let (ok, res) = is_symplectic(&mat, tol)?;
        if !ok {
            return Err(WeilError::NotSymplectic(res));
        }
        let det = mat.determinant();
        if (det - 1.0).abs() > 1e-8 * mat.norm().max(1.0) {
            return Err(WeilError::NotSymplectic((det - 1.0).abs()));
        }
        Ok(Self {
            n: mat.nrows() / 2,
            mat,
        })
    }

    /// Assemble from blocks `[[A, B], [C, D]]`.
    pub fn from_blocks(
        a: &DMatrix<f64>,
        b: &DMatrix<f64>,
        c: &DMatrix<f64>,
        d: &DMatrix<f64>,
    ) -> Result<Self> {
        let n = a.nrows();
        for blk in [a, b, c, d] {
            if blk.nrows() != n || blk.ncols() != n {
                return Err(WeilError::DimensionMismatch {
                    expected: n,
                    got: blk.nrows().max(blk.ncols()),
                });
            }
        }
        let mut mat = DMatrix::zeros(2 * n, 2 * n);
        mat.view_mut((0, 0), (n, n)).copy_from(a);
        mat.view_mut((0, n), (n, n)).copy_from(b);
        mat.view_mut((n, 0), (n, n)).copy_from(c);
        mat.view_mut((n, n), (n, n)).copy_from(d);
        Self::from_matrix(mat, 1e-10)
    }

    pub(crate) fn from_matrix_unchecked(mat: DMatrix<f64>) -> Self {
        debug_assert!(symplectic_residual(&mat).map_or(false, |r| r < 1e-6 * mat.norm().max(1.0)));
        Self {
            n: mat.nrows() / 2,
            mat,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mat: DMatrix::identity(2 * n, 2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn block_a(&self) -> DMatrix<f64> {
        self.mat.view((0, 0), (self.n, self.n)).into()
    }

    pub fn block_b(&self) -> DMatrix<f64> {
        self.mat.view((0, self.n), (self.n, self.n)).into()
    }

    pub fn block_c(&self) -> DMatrix<f64> {
        self.mat.view((self.n, 0), (self.n, self.n)).into()
    }

    pub fn block_d(&self) -> DMatrix<f64> {
        self.mat.view((self.n, self.n), (self.n, self.n)).into()
    }

    pub fn residual(&self) -> f64 {
        symplectic_residual(&self.mat).expect("stored matrix has even dimension")
    }
}

/// Group product `m1 · m2`.
pub fn compose(m1: &SymplecticMatrix, m2: &SymplecticMatrix) -> Result<SymplecticMatrix> {
    if m1.n != m2.n {
        return Err(WeilError::DimensionMismatch {
            expected: m1.n,
            got: m2.n,
        });
    }
    Ok(SymplecticMatrix::from_matrix_unchecked(&m1.mat * &m2.mat))
}

/// Inverse via M⁻¹ = −J Mᵀ J, exact for symplectic input.
pub fn inverse(m: &SymplecticMatrix) -> SymplecticMatrix {
    let j = linalg::standard_j(m.n);
    SymplecticMatrix::from_matrix_unchecked(-(&j * m.mat.transpose() * &j))
}

/// Upper shear `[[E, B], [0, E]]` for symmetric B.
pub fn generator_shear(b: &DMatrix<f64>) -> Result<SymplecticMatrix> {
    let b = linalg::checked_symmetrize(b, SYMMETRY_TOL)?;
    let n = b.nrows();
    let mut mat = DMatrix::identity(2 * n, 2 * n);
    mat.view_mut((0, n), (n, n)).copy_from(&b);
    Ok(SymplecticMatrix::from_matrix_unchecked(mat))
}

/// The quarter-turn `[[0, E], [-E, 0]]` that acts by Fourier transform up to
/// a constant factor.
pub fn generator_fourier(n: usize) -> SymplecticMatrix {
    SymplecticMatrix::from_matrix_unchecked(linalg::standard_j(n))
}

/// Point transformation `[[A, 0], [0, (Aᵀ)⁻¹]]` for invertible A.
pub fn generator_gl(a: &DMatrix<f64>) -> Result<SymplecticMatrix> {
    let n = a.nrows();
    let det = a.determinant();
    if det.abs() < 1e-12 {
        return Err(WeilError::SingularMatrix(det.abs()));
    }
    let a_inv_t = linalg::real_inverse(&a.transpose())?;
    let mut mat = DMatrix::zeros(2 * n, 2 * n);
    mat.view_mut((0, 0), (n, n)).copy_from(a);
    mat.view_mut((n, n), (n, n)).copy_from(&a_inv_t);
    Ok(SymplecticMatrix::from_matrix_unchecked(mat))
}

/// Coefficients of a quadratic Hamiltonian ½ xᵀa x + xᵀb p + ½ pᵀc p.
/// `a` and `c` are symmetrized at construction; `b` is arbitrary.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    n: usize,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        for blk in [a, b, c] {
            if blk.nrows() != n || blk.ncols() != n {
                return Err(WeilError::DimensionMismatch {
                    expected: n,
                    got: blk.nrows().max(blk.ncols()),
                });
            }
        }
        Ok(Self {
            n,
            a: linalg::checked_symmetrize(a, SYMMETRY_TOL)?,
            b: b.clone(),
            c: linalg::checked_symmetrize(c, SYMMETRY_TOL)?,
        })
    }

    /// Isotropic harmonic oscillator `½(|x|² + |p|²)`.
    pub fn oscillator(n: usize) -> Self {
        Self {
            n,
            a: DMatrix::identity(n, n),
            b: DMatrix::zeros(n, n),
            c: DMatrix::identity(n, n),
        }
    }

    /// Free motion `½|p|²`.
    pub fn free(n: usize) -> Self {
        Self {
            n,
            a: DMatrix::zeros(n, n),
            b: DMatrix::zeros(n, n),
            c: DMatrix::identity(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }
}

/// Infinitesimal generator of the classical flow on `(p; x)` columns:
/// ṗ = −a x − b p and ẋ = bᵀ x + c p, i.e. X = [[−b, −a], [c, bᵀ]].
///
/// Equivalently, X is the unique matrix for which the commutator of the
/// quantized Hamiltonian's flow generator with a Heisenberg operator
/// `v·x + w·i∂` is again a Heisenberg operator with coefficients `X (v; w)`;
/// the grid-side commutator test pins this convention.
pub fn flow_generator(h: &QuadraticHamiltonian) -> DMatrix<f64> {
    let n = h.n;
    let mut x = DMatrix::zeros(2 * n, 2 * n);
    x.view_mut((0, 0), (n, n)).copy_from(&(-&h.b));
    x.view_mut((0, n), (n, n)).copy_from(&(-&h.a));
    x.view_mut((n, 0), (n, n)).copy_from(&h.c);
    x.view_mut((n, n), (n, n)).copy_from(&h.b.transpose());
    x
}

/// Classical flow of `h` at time `t`, computed as exp(t X).
pub fn hamiltonian_flow(h: &QuadraticHamiltonian, t: f64) -> SymplecticMatrix {
    let x = flow_generator(h);
    SymplecticMatrix::from_matrix_unchecked(linalg::expm(&(x * t)))
}

/// Coefficients `(v, w)` of the first-order operator `v·x + w·i∂/∂x`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergVector {
    pub v: DVector<f64>,
    pub w: DVector<f64>,
}

impl HeisenbergVector {
    pub fn new(v: DVector<f64>, w: DVector<f64>) -> Result<Self> {
        if v.len() != w.len() {
            return Err(WeilError::DimensionMismatch {
                expected: v.len(),
                got: w.len(),
            });
        }
        Ok(Self { v, w })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }
}

/// Push a Heisenberg coefficient vector forward: `(v'; w') = M (v; w)`.
pub fn heisenberg_transform(m: &SymplecticMatrix, h: &HeisenbergVector) -> Result<HeisenbergVector> {
    if m.n != h.n() {
        return Err(WeilError::DimensionMismatch {
            expected: m.n,
            got: h.n(),
        });
    }
    let n = m.n;
    let mut col = DVector::zeros(2 * n);
    col.rows_mut(0, n).copy_from(&h.v);
    col.rows_mut(n, n).copy_from(&h.w);
    let out = &m.mat * col;
    Ok(HeisenbergVector {
        v: out.rows(0, n).into(),
        w: out.rows(n, n).into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::dmatrix;

    fn dm(rows: usize, cols: usize, vals: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(rows, cols, vals)
    }

    #[test]
    fn identity_is_symplectic() {
        let (ok, res) = is_symplectic(&DMatrix::identity(6, 6), 1e-12).unwrap();
        assert!(ok);
        assert_eq!(res, 0.0);
    }

    #[test]
    fn standard_form_is_symplectic() {
        let (ok, res) = is_symplectic(&linalg::standard_j(2), 1e-12).unwrap();
        assert!(ok);
        assert_eq!(res, 0.0);
    }

    #[test]
    fn diagonal_stretch_is_not_symplectic() {
        // MᵀJM − J = [[0,1],[−1,0]] for M = diag(2,1), so the residual is √2.
        let m = dm(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let (ok, res) = is_symplectic(&m, 1e-10).unwrap();
        assert!(!ok);
        assert_relative_eq!(res, 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn odd_dimension_is_rejected() {
        let m = DMatrix::<f64>::identity(3, 3);
        assert!(matches!(symplectic_residual(&m), Err(WeilError::Dimension(3))));
    }

    #[test]
    fn compose_with_identity() {
        let b = dm(2, 2, &[0.3, -0.1, -0.1, 0.8]);
        let m = generator_shear(&b).unwrap();
        let id = SymplecticMatrix::identity(2);
        assert_relative_eq!(compose(&id, &m).unwrap().matrix(), m.matrix(), epsilon = 1e-15);
    }

    #[test]
    fn inverse_of_quarter_turn() {
        let f = generator_fourier(2);
        let inv = inverse(&f);
        let expect = -linalg::standard_j(2);
        assert_relative_eq!(inv.matrix(), &expect, epsilon = 1e-15);
        let prod = compose(&f, &inv).unwrap();
        assert_relative_eq!(prod.matrix(), &DMatrix::identity(4, 4), epsilon = 1e-12);
    }

    #[test]
    fn shears_add() {
        let b1 = dm(2, 2, &[0.5, 0.2, 0.2, -0.3]);
        let b2 = dm(2, 2, &[-0.1, 0.7, 0.7, 0.4]);
        let lhs = compose(&generator_shear(&b1).unwrap(), &generator_shear(&b2).unwrap()).unwrap();
        let rhs = generator_shear(&(&b1 + &b2)).unwrap();
        assert_relative_eq!(lhs.matrix(), rhs.matrix(), epsilon = 1e-14);
    }

    #[test]
    fn generators_are_symplectic() {
        let b = dm(2, 2, &[0.5, 0.2, 0.2, -0.3]);
        let a = dm(2, 2, &[1.4, 0.3, -0.2, 0.9]);
        for g in [
            generator_shear(&b).unwrap(),
            generator_fourier(2),
            generator_gl(&a).unwrap(),
        ] {
            assert!(g.residual() < 1e-12);
        }
        assert_relative_eq!(
            generator_shear(&DMatrix::zeros(2, 2)).unwrap().matrix(),
            &DMatrix::identity(4, 4),
            epsilon = 1e-15
        );
    }

    #[test]
    fn gl_example_blocks() {
        let a = dm(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        let g = generator_gl(&a).unwrap();
        let expect = dmatrix![
            2.0, 0.0, 0.0, 0.0;
            0.0, 3.0, 0.0, 0.0;
            0.0, 0.0, 0.5, 0.0;
            0.0, 0.0, 0.0, 1.0/3.0;
        ];
        assert_relative_eq!(g.matrix(), &expect, epsilon = 1e-14);
    }

    #[test]
    fn gl_rejects_singular() {
        let a = dm(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(generator_gl(&a), Err(WeilError::SingularMatrix(_))));
    }

    #[test]
    fn hamiltonian_rejects_asymmetric_blocks() {
        let a = dm(2, 2, &[1.0, 0.5, -0.5, 1.0]);
        let z = DMatrix::zeros(2, 2);
        assert!(matches!(
            QuadraticHamiltonian::new(&a, &z, &z),
            Err(WeilError::Asymmetry(_, _))
        ));
    }

    #[test]
    fn flow_at_zero_time_is_identity() {
        let h = QuadraticHamiltonian::oscillator(2);
        assert_relative_eq!(
            hamiltonian_flow(&h, 0.0).matrix(),
            &DMatrix::identity(4, 4),
            epsilon = 1e-15
        );
    }

    #[test]
    fn oscillator_flow_is_a_rotation() {
        let h = QuadraticHamiltonian::oscillator(1);
        for &t in &[0.3, 0.7, 2.0] {
            let m = hamiltonian_flow(&h, t);
            let expect = dm(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
            assert_relative_eq!(m.matrix(), &expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn free_flow_is_a_lower_shear() {
        let h = QuadraticHamiltonian::free(1);
        let t = 1.3;
        let m = hamiltonian_flow(&h, t);
        let expect = dm(2, 2, &[1.0, 0.0, t, 1.0]);
        assert_relative_eq!(m.matrix(), &expect, epsilon = 1e-13);
    }

    #[test]
    fn flows_compose_in_time() {
        let a = dm(2, 2, &[1.0, 0.3, 0.3, 0.7]);
        let b = dm(2, 2, &[0.2, -0.4, 0.1, 0.5]);
        let c = dm(2, 2, &[0.9, 0.1, 0.1, 1.2]);
        let h = QuadraticHamiltonian::new(&a, &b, &c).unwrap();
        let m1 = hamiltonian_flow(&h, 0.6);
        let m2 = hamiltonian_flow(&h, 0.9);
        let m12 = hamiltonian_flow(&h, 1.5);
        let prod = compose(&m1, &m2).unwrap();
        assert!((prod.matrix() - m12.matrix()).norm() < 1e-9);
        assert!(m12.residual() < 1e-11);
    }

    #[test]
    fn flow_derivative_matches_generator_to_first_order() {
        let a = dm(1, 1, &[0.8]);
        let b = dm(1, 1, &[0.5]);
        let c = dm(1, 1, &[1.1]);
        let h = QuadraticHamiltonian::new(&a, &b, &c).unwrap();
        let x = flow_generator(&h);
        let err_at = |eps: f64| {
            let m = hamiltonian_flow(&h, eps);
            ((m.matrix() - DMatrix::identity(2, 2)) / eps - &x).norm()
        };
        let e3 = err_at(1e-3);
        let e4 = err_at(1e-4);
        assert!(e3 < 2e-3, "first-order error too large: {e3}");
        // First-order convergence: error shrinks ~10x when eps does.
        let ratio = e3 / e4;
        assert!((5.0..20.0).contains(&ratio), "ratio {ratio} not first order");
    }

    #[test]
    fn heisenberg_examples() {
        let h = HeisenbergVector::new(DVector::from_vec(vec![1.0]), DVector::from_vec(vec![0.0]))
            .unwrap();
        let id = SymplecticMatrix::identity(1);
        assert_eq!(heisenberg_transform(&id, &h).unwrap(), h);

        let f = generator_fourier(1);
        let out = heisenberg_transform(&f, &h).unwrap();
        assert_relative_eq!(out.v[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(out.w[0], -1.0, epsilon = 1e-15);

        let a = dm(2, 2, &[1.2, 0.3, 0.0, 0.8]);
        let g = generator_gl(&a).unwrap();
        let v = DVector::from_vec(vec![0.4, -0.7]);
        let w = DVector::from_vec(vec![1.0, 0.25]);
        let hv = HeisenbergVector::new(v.clone(), w.clone()).unwrap();
        let out = heisenberg_transform(&g, &hv).unwrap();
        assert_relative_eq!(out.v, &a * v, epsilon = 1e-14);
        assert_relative_eq!(out.w, linalg::real_inverse(&a.transpose()).unwrap() * w, epsilon = 1e-14);
    }

    #[test]
    fn heisenberg_transform_respects_composition() {
        let b = dm(2, 2, &[0.5, 0.2, 0.2, -0.3]);
        let m1 = generator_shear(&b).unwrap();
        let m2 = generator_fourier(2);
        let hv = HeisenbergVector::new(
            DVector::from_vec(vec![0.3, -1.0]),
            DVector::from_vec(vec![0.7, 0.2]),
        )
        .unwrap();
        let lhs = heisenberg_transform(&compose(&m1, &m2).unwrap(), &hv).unwrap();
        let rhs = heisenberg_transform(&m1, &heisenberg_transform(&m2, &hv).unwrap()).unwrap();
        assert_relative_eq!(lhs.v, rhs.v, epsilon = 1e-14);
        assert_relative_eq!(lhs.w, rhs.w, epsilon = 1e-14);
    }
}
