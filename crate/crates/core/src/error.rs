use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("series has zero constant term and is not invertible")]
    NotInvertible,

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(i64),

    #[error("interpolation needs at least one point")]
    NoPoints,

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid independence system: {0}")]
    InvalidSystem(String),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("bad prime {p}: {detail}")]
    BadPrime { p: u64, detail: String },

    #[error("special set {special:?} is not contained in supp(m) = {support:?}")]
    SpecialOutsideSupport { special: Vec<usize>, support: Vec<usize> },

    #[error("budget exceeded: estimated {estimate} work items, limit {limit}")]
    Budget { estimate: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
    }
}
