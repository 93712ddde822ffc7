use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: i64, bound: usize },
    #[error("cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("size mismatch: |gamma| = {gamma} but |lambda| + |mu| = {sum}")]
    SizeMismatch { gamma: usize, sum: usize },
    #[error("length {length} exceeds rank {rank}")]
    LengthExceedsRank { length: usize, rank: usize },
    #[error("denominator vanishes at v = {0}")]
    DenominatorVanishes(String),
    #[error("invalid specialization point v = {0}: need v > 0 and v != 1")]
    InvalidPoint(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Yang-Baxter equation fails at {} entries", .0.len())]
    NotYangBaxter(Vec<Residual>),
    #[error("Hecke relation (R+1)(R-q) = 0 fails at {} entries", .0.len())]
    NotHecke(Vec<Residual>),
    #[error("symmetry is not closed: {0}")]
    NotClosed(String),
    #[error("symmetry is not even of rank <= {cutoff}")]
    NotEven { cutoff: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("cache i/o: {0}")]
    Io(String),
}

/// One non-zero entry of a residual matrix, given by its row and column
/// multi-indices and the residual value as canonical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: String,
}

impl Error {
    /// Stable machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::LengthExceedsRank { .. } => "LengthExceedsRank",
            Error::DenominatorVanishes(_) => "DenominatorVanishes",
            Error::InvalidPoint(_) => "InvalidPoint",
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse(_) => "ParseError",
            Error::NotYangBaxter(_) => "NotYangBaxter",
            Error::NotHecke(_) => "NotHecke",
            Error::NotClosed(_) => "NotClosed",
            Error::NotEven { .. } => "NotEven",
            Error::Invalid(_) => "InvalidArgument",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
