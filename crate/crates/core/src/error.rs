use thiserror::Error;

use crate::fixpoint::FixedPointDiagnostics;

#[derive(Debug, Error)]
pub enum Error {
    #[error("equation parameter c must satisfy c != 0, +1, -1 (got c = {0})")]
    InvalidCoupling(i64),

    #[error("identity {label}: {reason}")]
    InvalidIdentity { label: String, reason: String },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("maximum degree must be at least 2 (got {0})")]
    DegreeTooSmall(u32),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid is not closed under dilation by 2^{0}: no point x has 2^j x on the grid")]
    GridNotClosed(i32),

    #[error("Lipschitz constant must lie in (0, 1) (got {0})")]
    LipschitzOutOfRange(f64),

    #[error("invalid control function: {0}")]
    InvalidControl(String),

    #[error("branch j = {j} with p = {p} gives (p - 2) * j >= 0, so T is not a contraction")]
    BranchMismatch { p: f64, j: i32 },

    #[error("bound formulas disagree: general route {general}, closed form {closed}")]
    BoundMismatch { general: f64, closed: f64 },

    #[error("iteration did not converge within {max_iter} steps (last distance {last})")]
    NotConverged {
        max_iter: u32,
        last: String,
        diagnostics: FixedPointDiagnostics,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
