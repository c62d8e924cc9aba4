use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tree degree must be at least 2, got {0}")]
    InvalidDegree(u32),

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("branch ratio {b} outside [0, 1/{d}]")]
    InvalidBranchRatio { b: f64, d: u32 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("numeric guard tripped: {0}")]
    NumericGuard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
