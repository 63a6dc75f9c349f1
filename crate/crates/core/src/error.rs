use thiserror::Error;

use crate::persmod::GridInterval;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    BadMatrixData { rows: usize, cols: usize, got: usize },

    #[error("matrix is not invertible")]
    Singular,

    #[error("subspace containment violated in {0}")]
    NotContained(&'static str),

    #[error("grid index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid interval [{start},{end}] on grid 1..={n}")]
    InvalidInterval { start: usize, end: usize, n: usize },

    #[error("grid {t} is not inside interval {interval}")]
    NotInInterval { t: usize, interval: GridInterval },

    #[error("shape mismatch at grid {t}: {what}")]
    Shape { t: usize, what: String },

    #[error("naturality fails at grid {t}")]
    Naturality { t: usize },

    #[error("grid length mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    #[error("shift {eps} out of range for grid of length {n}")]
    ShiftOutOfRange { eps: usize, n: usize },

    #[error("morphism is not injective at grid {t}")]
    NotInjective { t: usize },

    #[error("morphism is not surjective at grid {t}")]
    NotSurjective { t: usize },

    #[error("partial matching inequality violated for {interval} ({total} > {multiplicity})")]
    MatchingInequality {
        interval: GridInterval,
        total: usize,
        multiplicity: usize,
    },

    #[error("not a representation: {0}")]
    BadRepresentation(String),

    #[error("unknown ladder code {0}")]
    UnknownLadderCode(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
