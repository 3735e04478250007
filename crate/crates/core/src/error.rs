use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pole proximity at x = {x}: |1 + q e^(2 alpha x)| = {magnitude:e}")]
    PoleProximity { x: f64, magnitude: f64 },

    #[error("argument error: {0}")]
    Argument(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error(
        "radicand is not a perfect square for the supplied k (relative residual {residual:e})"
    )]
    NotPerfectSquare { residual: f64 },

    #[error("branch index {index} out of range ({available} branches)")]
    BranchIndex { index: usize, available: usize },

    #[error("secant iteration did not converge after {iterations} steps (last iterate {last}, |residual| = {residual:e})")]
    Convergence {
        last: Complex64,
        residual: f64,
        iterations: usize,
    },

    #[error("unsupported sigma: {0}")]
    UnsupportedSigma(String),

    #[error("polynomial degree {n} exceeds the supported maximum {max}")]
    DegreeTooHigh { n: usize, max: usize },

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("degenerate Jacobi parameters at recurrence step {step} (denominator magnitude {denominator:e})")]
    DegenerateJacobi { step: usize, denominator: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point s = {s}: {reason}")]
    SingularPoint { s: Complex64, reason: String },

    #[error("normalization impossible: integral of |psi|^2 is {integral:e}")]
    NormalizationImpossible { integral: f64 },

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no branch closes the quantization condition (smallest |residual| = {residual:e})")]
    NoConsistentBranch { residual: f64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
