use thiserror::Error;

use crate::verify::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch, left operand is {}x{}, right operand is {}x{}", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("block at ({row_start}, {col_start}) of size {row_count}x{col_count} exceeds a {rows}x{cols} matrix")]
    BlockOutOfRange {
        row_start: usize,
        row_count: usize,
        col_start: usize,
        col_count: usize,
        rows: usize,
        cols: usize,
    },

    #[error("index ({row}, {col}) is out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("{0:?} is not a permutation")]
    InvalidPermutation(Vec<usize>),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("rank parameter must be at least 1, got {0}")]
    InvalidRankParameter(usize),

    #[error("not a Hadamard factorization of the identity: {0}")]
    NotHfi(Violation),

    #[error("fooling set repeats {axis} index {index}")]
    DuplicateIndex { axis: &'static str, index: usize },

    #[error(
        "search space holds an estimated {estimate} candidates, above the ceiling of {ceiling}"
    )]
    SearchTooLarge { estimate: u128, ceiling: u64 },

    #[error("invalid search space: {0}")]
    InvalidSpace(String),
}
