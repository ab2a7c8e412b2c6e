use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position {0} carries more than one symbol")]
    OverlappingSymbols(i64),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("interval ({b}, {a}) is empty or reversed: need b < a")]
    BadInterval { b: i64, a: i64 },

    #[error("position {0} does not carry a cross")]
    NotACross(i64),

    #[error("position {0} does not carry a circle")]
    NotACircle(i64),

    #[error("operator sigma_{i} needs atypicality at least {i}, found {found}")]
    AtypicalityTooSmall { i: usize, found: usize },

    #[error("diagram has core symbols; a core-free diagram is required")]
    NotCoreFree,

    #[error("diagrams lie in different blocks (core or atypicality differ)")]
    CoreMismatch,

    #[error("path starts are not strictly increasing")]
    NotIncreasing,

    #[error("path is regular; the involution is only defined on irregular paths")]
    NotIrregular,

    #[error("bit vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("decomposition target {0} lies outside the matrix index")]
    NotClosed(String),

    #[error("matrix is not unitriangular: {0}")]
    NotUnitriangular(String),

    #[error("closure exceeded {0} diagrams")]
    ClosureTooLarge(usize),

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("weight has an empty side (m = {m}, n = {n})")]
    EmptyWeight { m: usize, n: usize },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Stable variant name, used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OverlappingSymbols(_) => "OverlappingSymbols",
            Error::Parse { .. } => "ParseError",
            Error::BadInterval { .. } => "BadInterval",
            Error::NotACross(_) => "NotACross",
            Error::NotACircle(_) => "NotACircle",
            Error::AtypicalityTooSmall { .. } => "AtypicalityTooSmall",
            Error::NotCoreFree => "NotCoreFree",
            Error::CoreMismatch => "CoreMismatch",
            Error::NotIncreasing => "NotIncreasing",
            Error::NotIrregular => "NotIrregular",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotClosed(_) => "NotClosed",
            Error::NotUnitriangular(_) => "NotUnitriangular",
            Error::ClosureTooLarge(_) => "ClosureTooLarge",
            Error::NotDominant(_) => "NotDominant",
            Error::EmptyWeight { .. } => "EmptyWeight",
            Error::InvariantViolation(_) => "InvariantViolation",
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
