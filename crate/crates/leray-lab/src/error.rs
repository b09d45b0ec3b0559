use thiserror::Error;

/// Errors shared across the laboratory.
#[derive(Debug, Clone, Error)]
pub enum LabError {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A gauge was paired with an incompatible μ.
    #[error("gauge mismatch: {0}")]
    GaugeMismatch(String),

    /// An iterative solver stopped before reaching its tolerance. The
    /// payload carries the best value and the residual actually achieved.
    #[error("no convergence: {what} (value {value}, residual {residual})")]
    NoConvergence {
        what: String,
        value: f64,
        residual: f64,
    },

    /// Both ends of a bisection bracket classified identically.
    #[error("bracket failure: {0}")]
    BracketFailure(String),

    /// A bump or support left the admissible region.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Rearrangement was handed a sign-changing profile.
    #[error("negative input: {0}")]
    NegativeInput(String),

    /// A weight that must be nonincreasing increased beyond roundoff.
    #[error("monotonicity violation: {0}")]
    MonotonicityViolation(String),

    /// The inner Maz'ya integral diverges at every grid point.
    #[error("divergent factor: {0}")]
    DivergentFactor(String),

    /// The denominator of a ratio is numerically zero.
    #[error("zero denominator")]
    ZeroDenominator,

    /// The top angular mode carries too much energy for the requested cut.
    #[error("alias warning: {0}")]
    AliasWarning(String),

    /// No admissible freeze radius exists for the envelope construction.
    #[error("no freeze radius: {0}")]
    NoHatR(String),

    /// A structural invariant failed; carries diagnostics.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl LabError {
    pub fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }
}
