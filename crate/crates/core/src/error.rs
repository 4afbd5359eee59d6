use std::path::PathBuf;

use thiserror::Error;

use crate::arith::ArithError;
use crate::chern::ChernError;
use crate::poly::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    /// The prime is too small for the scaled class to be integral (`g <= 2k`).
    #[error("inapplicable: prime {g} does not exceed 2k = {}", 2 * k)]
    Inapplicable { k: u32, g: u64 },
    #[error("expected dimension {e} is negative for (g, k) = ({g}, {k})")]
    NegativeExpectedDimension { g: u32, k: u32, e: i64 },
    #[error("degree condition violated: {0}")]
    DegreeCondition(String),
    #[error("certificate rejected: {0}")]
    Verification(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
