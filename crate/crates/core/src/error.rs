use thiserror::Error;

use crate::grid::GridShape;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grid shape {rows}x{cols}: need 1 <= rows <= cols")]
    InvalidShape { rows: usize, cols: usize },

    #[error("variable x[{row},{col}] is outside the {shape} grid")]
    OutOfBounds {
        shape: GridShape,
        row: usize,
        col: usize,
    },

    #[error("window ({k},{l}) is invalid for the {shape} grid: need 1 <= k < l <= cols and l - k + 1 >= rows")]
    WindowConstraint {
        shape: GridShape,
        k: usize,
        l: usize,
    },

    #[error("windows must be sorted in both bounds; window {position} breaks the order")]
    WindowOrder { position: usize },

    #[error("invalid column selection: {0}")]
    Selection(String),

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: GridShape, right: GridShape },

    #[error("{0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("S-pair limit {limit} exceeded after {processed} pairs (basis size {basis_len}, {pending} pairs pending)")]
    SpairLimit {
        limit: usize,
        processed: usize,
        basis_len: usize,
        pending: usize,
    },

    #[error("characteristic {0} is neither 0 nor a prime below 2^62")]
    Characteristic(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Resource exhaustion, as opposed to a malformed input or a failed check.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::SpairLimit { .. })
    }
}
