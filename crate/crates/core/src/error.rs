use thiserror::Error;

/// Errors raised by calculators, generators and estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("singular measure: {0}")]
    SingularMeasure(String),

    #[error("unsupported alphabet: {0}")]
    UnsupportedAlphabet(String),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("not normalizable: {0}")]
    NotNormalizable(String),

    #[error("unclassifiable schedule: {0}")]
    Unclassifiable(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("compressor failed: {0}")]
    Compressor(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = core::result::Result<T, Error>;
