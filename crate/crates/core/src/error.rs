use thiserror::Error;

use crate::quandle::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree {0} is outside the supported range 1..=64")]
    UnsupportedDegree(usize),

    #[error("group exceeded the element cap of {limit}")]
    ResourceLimit { limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// `entry` is 0-based; messages number entries from 1.
    #[error("entry {}: {violation}", .entry + 1)]
    LibraryEntry { entry: usize, violation: Violation },

    #[error("{0}")]
    Axiom(#[from] Violation),

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("invalid family parameters: {0}")]
    Family(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error("time budget exceeded")]
    BudgetExceeded,

    #[error("order {0} is too large for this operation")]
    OrderTooLarge(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
