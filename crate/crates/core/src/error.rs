use thiserror::Error;

/// Failures raised by the kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A value type invariant (Lorentz condition, antisymmetry, unit
    /// normalisation, ...) does not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("singular frame: basis determinant {0:e}")]
    SingularFrame(f64),

    /// `P·u` vanishes, so the projector along `P` onto `u^⊥` is undefined.
    #[error("degenerate observer: P·u = {0:e}")]
    DegenerateObserver(f64),

    /// Total momentum is not timelike (energy dominance fails).
    #[error("momentum is not timelike: η(P,P) = {0:e}")]
    NonTimelikeMomentum(f64),

    #[error("body support is unbounded on the slice")]
    UnboundedSupport,

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },

    #[error("stress-energy evaluator failed: {0}")]
    Evaluator(String),

    /// The operation needs a smooth field but the body is a point-particle
    /// distribution.
    #[error("not applicable to distributional body: {0}")]
    NotApplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
