//! Numerics for the metaplectic (Weil) representation.
//!
//! The crate is organized around a small set of carriers:
//!
//! * [`symplectic`] — real symplectic matrices, quadratic Hamiltonians and
//!   their classical flows, Heisenberg coefficient vectors;
//! * [`siegel`] — the Siegel upper half-plane, its real boundary chart, and
//!   the two-fold metaplectic cover with branch-tracked square roots;
//! * [`gaussian`] — closed-form Gaussian states and the exact metaplectic
//!   action on them;
//! * [`grid`] — sampled functions on uniform cell-centered boxes, the unitary
//!   Fourier transform, Hermite states, and spectral resampling;
//! * [`evolution`] — the quadratic-Hamiltonian evolution operator on grid
//!   functions, built from its chirp/Fourier/rescale factorization;
//! * [`transform`] — the Gaussian integral transform, its equivariance and
//!   PDE diagnostics, growth probes, and the invariant half-plane norm;
//! * [`propagator`] — exact quasiclassical kernels and a split-step
//!   reference integrator used to cross-validate everything else.
//!
//! Conventions used throughout: phase-space points are column vectors
//! `(p; x)`; a quadratic Hamiltonian `(a, b, c)` means the classical function
//! `H(x, p) = ½ xᵀa x + xᵀb p + ½ pᵀc p`, quantized with `p = -i ∂/∂x` and
//! symmetric ordering of the cross term.

pub mod error;
pub mod linalg;
pub mod symplectic;
pub mod siegel;
pub mod gaussian;
pub mod grid;
pub mod nufft;
pub mod evolution;
pub mod transform;
pub mod propagator;
pub mod io;
pub mod report;
pub mod suites;

pub use error::{Result, WeilError};
pub use gaussian::GaussianState;
// pub use grid::GridFunction;
pub use siegel::{BoundaryChartPoint, MetaplecticElement, SiegelPoint};
pub use symplectic::{HeisenbergVector, QuadraticHamiltonian, SymplecticMatrix};
