use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary: |M M^dagger - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("sigma is not a normalized traceless hermitian matrix: |sigma^2 - I| = {residual:e}")]
    BadSigma { residual: f64 },

    #[error("root refinement did not reach tolerance {tol:e} in {iterations} iterations (bracket [{lo}, {hi}])")]
    NonConvergence { lo: f64, hi: f64, tol: f64, iterations: usize },

    #[error("energy {energy} is not an eigenvalue (smallest singular value {residual:e})")]
    NotAnEigenvalue { energy: f64, residual: f64 },

    #[error("grid is not symmetric about the origin")]
    AsymmetricGrid,

    #[error("invalid box configuration: {0}")]
    InvalidBox(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cycle does not close: |U(first) - U(last)| = {residual:e}")]
    OpenCycle { residual: f64 },

    #[error("level tracking is ambiguous at step {step}: mismatch {mismatch:e} exceeds half the local gap {gap:e}")]
    TrackingAmbiguity { step: usize, mismatch: f64, gap: f64 },

    #[error("tracked band comes within {gap:e} of a neighbouring level at step {step}")]
    DegeneracyOnPath { step: usize, gap: f64 },

    #[error("overlap between steps {step} and {next} collapsed to {overlap}")]
    OverlapCollapse { step: usize, next: usize, overlap: f64 },

    #[error("operation requires a {expected} cycle")]
    WrongCycleKind { expected: &'static str },

    #[error("at node (theta_plus = {theta_plus}, theta_minus = {theta_minus}): {source}")]
    AtNode {
        theta_plus: f64,
        theta_minus: f64,
        #[source]
        source: Box<Error>,
    },
}
