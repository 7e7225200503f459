use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a non-empty word")]
    EmptyWord,

    #[error("alphabet must be non-empty with pairwise distinct labels: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0} is not in the alphabet")]
    InvalidSymbol(String),

    #[error("words are over incompatible alphabets")]
    IncompatibleAlphabets,

    #[error("malformed cell {0:?}: expected '1' followed by zero or more '0'")]
    MalformedCell(String),

    #[error("chain length {n} out of range for {cells} cells")]
    ChainLengthOutOfRange { n: usize, cells: usize },

    #[error("anomaly is a power of the period word; the sequence is periodic")]
    DegeneratePeriodic,

    #[error("invalid index range [{0}, {1}]")]
    InvalidRange(i64, i64),

    #[error("{0} and {1} are not relatively prime")]
    NotCoprime(u64, u64),

    #[error("arguments must be positive")]
    NonPositive,

    #[error("integer overflow")]
    Overflow,

    #[error("invalid Sturmian spec: {0}")]
    InvalidSpec(String),

    #[error("generated sequence disagrees with its construction: {0}")]
    InternalMismatch(String),

    #[error("expected the binary alphabet {{0,1}}")]
    WrongAlphabet,

    #[error("sequences are not conjugate (least period {n_x} / {n_y}, anomaly size {a_x} / {a_y})")]
    NotConjugate {
        n_x: usize,
        n_y: usize,
        a_x: usize,
        a_y: usize,
    },

    #[error("no consistent block map with radius up to {0}")]
    WindowExhausted(usize),

    #[error("block {0} is not in the code table")]
    MissingBlock(String),

    #[error("image under the code is periodic")]
    DegenerateImage,

    #[error("symbol {0} does not occur in the sequence")]
    SymbolAbsent(String),

    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyWord => "EmptyWord",
            Error::InvalidAlphabet(_) => "InvalidAlphabet",
            Error::InvalidSymbol(_) => "InvalidSymbol",
            Error::IncompatibleAlphabets => "IncompatibleAlphabets",
            Error::MalformedCell(_) => "MalformedCell",
            Error::ChainLengthOutOfRange { .. } => "ChainLengthOutOfRange",
            Error::DegeneratePeriodic => "DegeneratePeriodic",
            Error::InvalidRange(..) => "InvalidRange",
            Error::NotCoprime(..) => "NotCoprime",
            Error::NonPositive => "NonPositive",
            Error::Overflow => "Overflow",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::InternalMismatch(_) => "InternalMismatch",
            Error::WrongAlphabet => "WrongAlphabet",
            Error::NotConjugate { .. } => "NotConjugate",
            Error::WindowExhausted(_) => "WindowExhausted",
            Error::MissingBlock(_) => "MissingBlock",
            Error::DegenerateImage => "DegenerateImage",
            Error::SymbolAbsent(_) => "SymbolAbsent",
            Error::PostconditionFailed(_) => "PostconditionFailed",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
