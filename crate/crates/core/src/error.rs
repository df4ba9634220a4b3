use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid parameter n = {n} is too small; the construction needs n >= {min}")]
    Config { n: usize, min: usize },

    #[error("{stage} selection collision: target {target} maps to grid index {index}, which is already taken")]
    Selection {
        stage: &'static str,
        target: f64,
        index: usize,
    },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular to working precision (pivot {pivot})")]
    Singular { pivot: usize },

    #[error("KKT matrix is numerically singular (condition number {kappa:e})")]
    IllConditioned { kappa: f64 },

    #[error("abscissa {x} lies outside [-1, 1]")]
    Domain { x: f64 },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("order {order} is out of range (allowed 0..={max})")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}
