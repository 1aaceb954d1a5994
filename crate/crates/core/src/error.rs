use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("matrix is not copositive")]
    NotCopositive,

    #[error("two independent zeros share the minimal support {support}")]
    DuplicateMinimalSupport { support: String },

    #[error("matrix does not have unit diagonal")]
    NotUnitDiagonal,

    #[error("minimal zero support {support} does not have cardinality two")]
    SupportCardinalityNotTwo { support: String },

    #[error("structure graph has {bipartite_count} bipartite components, expected exactly one")]
    AmbiguousPattern { bipartite_count: usize },

    #[error("diagonal entries are not all in one parity class of the bipartite component")]
    InconsistentDiagonal,

    #[error("scaling entry {index} is not strictly positive")]
    NonPositiveScaling { index: usize },

    #[error("matrix is not a diagonal scaling of a {{-1,0,1}} pattern")]
    ScalingConditionFails,

    #[error("input matrix is not extremal")]
    NotExtremalInput,

    #[error("order {order} outside the supported range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("census needs {required} candidates, budget is {budget}")]
    ResourceGuard { required: u64, budget: u64 },

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("{0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotCopositive => "NotCopositive",
            Error::DuplicateMinimalSupport { .. } => "DuplicateMinimalSupport",
            Error::NotUnitDiagonal => "NotUnitDiagonal",
            Error::SupportCardinalityNotTwo { .. } => "SupportCardinalityNotTwo",
            Error::AmbiguousPattern { .. } => "AmbiguousPattern",
            Error::InconsistentDiagonal => "InconsistentDiagonal",
            Error::NonPositiveScaling { .. } => "NonPositiveScaling",
            Error::ScalingConditionFails => "ScalingConditionFails",
            Error::NotExtremalInput => "NotExtremalInput",
            Error::OrderOutOfRange { .. } => "OrderOutOfRange",
            Error::ResourceGuard { .. } => "ResourceGuard",
            Error::LemmaViolation(_) => "LemmaViolation",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
