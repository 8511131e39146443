use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot substitute zero for {symbol}: q and p must be invertible")]
    ZeroSubstitution { symbol: &'static str },

    #[error("{0} is not a unit of the Laurent ring")]
    NotUnit(String),

    #[error("operator is not invertible: {0}")]
    NotInvertible(String),

    #[error("basis index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("invalid window: lo {lo} > hi {hi}")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
