use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not unitary (‖M†M − I‖_F = {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("unsupported Hilbert-space dimension {0} (expected 2 or 4)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("invalid density operator: {0}")]
    InvalidDensity(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("too few points for a fit: need {needed}, have {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),
    #[error("no halted trials in ensemble")]
    NoHaltedTrials,
}

impl Error {
    /// True for failures of the numerical machinery itself, as opposed to
    /// rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::DegenerateFit(_) | Error::NoHaltedTrials
        )
    }
}
