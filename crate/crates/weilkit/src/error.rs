//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeilError {
    #[error("matrix dimension {0} is odd; phase space needs an even dimension")]
    Dimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular or near-singular (|det| = {0:.3e})")]
    SingularMatrix(f64),
    #[error("matrix asymmetry {0:.3e} exceeds tolerance {1:.1e}")]
    Asymmetry(f64, f64),
    #[error("matrix is not symplectic (residual {0:.3e})")]
    NotSymplectic(f64),
    #[error("Im Z is not positive definite (smallest eigenvalue {0:.3e})")]
    NotSiegelInterior(f64),
    #[error("branch value does not square to the cocycle determinant (relative error {0:.3e})")]
    InvalidBranchValue(f64),
    #[error("zero amplitude is not a valid Gaussian state")]
    ZeroAmplitude,
    #[error("cocycle matrix CZ+D is near-singular (condition estimate {0:.3e})")]
    NearSingularCocycle(f64),
    #[error("square-root continuation stalled: phase step above pi/2 at depth {depth}")]
    Continuation { depth: u32 },
    #[error("boundary chart caustic: |det(Ca+D)| = {0:.3e}")]
    BoundaryCaustic(f64),
    #[error("|det C| = {0:.3e} too small for the integral form; use the factored evolution")]
    SingularC(f64),
    #[error("no rotation factor produced a well-conditioned C block")]
    Factorization,
    #[error("focal point: det C vanishes near t = {t}")]
    SingularFocalPoint { t: f64 },
    #[error("split-step integrator unstable: norm drift {0:.3e}")]
    Integrator(f64),
    #[error("finite-difference step {step:.3e} too large for margin {margin:.3e}")]
    Step { step: f64, margin: f64 },
    #[error("tail extrapolation did not converge (spread {0:.3e})")]
    Tail(f64),
    #[error("Hermite index {0} outside the stable range (max 12)")]
    HermiteRange(usize),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("unsupported source for this operation: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WeilError>;
