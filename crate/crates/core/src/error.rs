use thiserror::Error;

use crate::order::Id;
use crate::stream::OracleName;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation has a cycle through distinct elements {0} and {1}")]
    Cycle(Id, Id),
    #[error("relation references unknown element {0}")]
    UnknownId(Id),
    #[error("element {0} listed more than once")]
    DuplicateId(Id),
    #[error("lexicographic sum has no part for index element {0}")]
    MissingPart(Id),
    #[error("element id overflow while pairing ({0}, {1})")]
    IdOverflow(u64, u64),
    #[error("stream is exhausted after {0} elements")]
    FiniteDomainEnd(usize),
    #[error("stream comparison is not a partial order on its first {0} elements")]
    InvalidStream(usize),
    #[error("the {0} oracle is not provided by this stream")]
    OracleMissing(OracleName),
    #[error("the {oracle} oracle has no finite answer for element {element}")]
    OracleUndefined { oracle: OracleName, element: Id },
    #[error("side classifier is inconsistent: {upper} is below {lower}")]
    ClassifierInconsistent { lower: Id, upper: Id },
    #[error("rank of element {0} is not final in this truncation")]
    NotStabilized(Id),
    #[error("element {0} is not in the domain")]
    NotInDomain(Id),
    #[error("order is not a linear extension of the gadget: {0}")]
    NotAnExtension(String),
    #[error("function is not injective: value {value} repeats")]
    NotInjective { value: u64 },
    #[error("horizon {horizon} is smaller than the requested stage count {stages}")]
    HorizonTooSmall { horizon: usize, stages: usize },
    #[error("function prefix of length {have} is shorter than the required {need}")]
    PrefixTooShort { have: usize, need: usize },
    #[error("poset with {size} elements exceeds the enumeration guard of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Cycle(..) => "CycleError",
            Error::UnknownId(_) => "UnknownIdError",
            Error::DuplicateId(_) => "DuplicateIdError",
            Error::MissingPart(_) => "MissingPartError",
            Error::IdOverflow(..) => "IdOverflow",
            Error::FiniteDomainEnd(_) => "FiniteDomainEnd",
            Error::InvalidStream(_) => "InvalidStream",
            Error::OracleMissing(_) => "OracleMissing",
            Error::OracleUndefined { .. } => "OracleUndefined",
            Error::ClassifierInconsistent { .. } => "ClassifierInconsistent",
            Error::NotStabilized(_) => "NotStabilized",
            Error::NotInDomain(_) => "NotInDomain",
            Error::NotAnExtension(_) => "NotAnExtension",
            Error::NotInjective { .. } => "NotInjective",
            Error::HorizonTooSmall { .. } => "HorizonTooSmall",
            Error::PrefixTooShort { .. } => "PrefixTooShort",
            Error::TooLarge { .. } => "TooLarge",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
