use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Near-collision of eigenvalues in a triangular solve.
    #[error("resonance building J_{lambda} against m_{mu}: |eval difference| = {gap:e}")]
    Resonance { lambda: String, mu: String, gap: f64 },

    #[error("singular interpolation system after {attempts} attempts")]
    SingularInterpolation { attempts: usize },

    #[error("quadrature tolerance {requested:e} not reached; achieved {achieved:e}")]
    Quadrature { requested: f64, achieved: f64 },

    #[error("sampler failure: {0}")]
    Sampler(String),

    /// Non-finite state inside an SDE path.
    #[error("integration failure on path {path} at t = {time}: {detail}")]
    Integration { path: usize, time: f64, detail: String },

    #[error("operation requires floating-point arithmetic: {0}")]
    Inexact(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
