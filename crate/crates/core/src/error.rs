//! Shared error type for the whole library.
//!
//! Every fallible operation distinguishes *mathematical* negatives (returned
//! as ordinary values such as `None` or a `false` verdict) from *resource*
//! failures (caps and budgets), which always surface as errors.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),

    #[error("malformed graph input: {0}")]
    MalformedGraph(String),

    #[error("malformed group file: {0}")]
    MalformedGroupFile(String),

    #[error("group has no generators")]
    EmptyGenerators,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("group order exceeds cap {cap} (at least {order_at_least} elements)")]
    OrderExceedsCap { order_at_least: u64, cap: u64 },

    #[error("search budget {budget} exhausted")]
    SearchBudgetExceeded { budget: u64 },

    #[error("enumeration budget {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("{count} subsets exceed cap {cap}")]
    TooManySubsets { count: u128, cap: u64 },

    #[error("operation needs a nontrivial group")]
    TrivialGroup,

    #[error("generator {index} does not lie in the ambient group")]
    NotASubgroup { index: usize },

    #[error("unknown family name: {0}")]
    UnknownFamily(String),

    #[error("malformed element word: {0}")]
    MalformedWord(String),

    #[error("malformed point: {0}")]
    MalformedPoint(String),

    #[error("malformed coloring: {0}")]
    MalformedColoring(String),

    #[error("no admissible point within the first {bound} candidates at step {step}")]
    MotionEvidenceExhausted { step: usize, bound: usize },

    #[error("family {0} does not assert infinite motion")]
    InfiniteMotionNotAsserted(&'static str),

    #[error("scalar has multiplicative order {order} but dimension {dim} needs more than {needed}")]
    OrderTooSmall { order: u32, dim: usize, needed: u64 },

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("vector {index} is zero")]
    ZeroVector { index: usize },

    #[error("degree {got} exceeds supported bound {max}")]
    UnsupportedDegree { got: usize, max: usize },
}

impl Error {
    /// Stable short name, used verbatim in CLI reports.
    pub fn code_name(&self) -> &'static str {
        match self {
            Error::MalformedCycles(_) => "MalformedCycles",
            Error::MalformedGraph(_) => "MalformedGraph",
            Error::MalformedGroupFile(_) => "MalformedGroupFile",
            Error::EmptyGenerators => "EmptyGenerators",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::OrderExceedsCap { .. } => "OrderExceedsCap",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::TooManySubsets { .. } => "TooManySubsets",
            Error::TrivialGroup => "TrivialGroup",
            Error::NotASubgroup { .. } => "NotASubgroup",
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::MalformedWord(_) => "MalformedWord",
            Error::MalformedPoint(_) => "MalformedPoint",
            Error::MalformedColoring(_) => "MalformedColoring",
            Error::MotionEvidenceExhausted { .. } => "MotionEvidenceExhausted",
            Error::InfiniteMotionNotAsserted(_) => "InfiniteMotionNotAsserted",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::BadDimension(_) => "BadDimension",
            Error::ZeroVector { .. } => "ZeroVector",
            Error::UnsupportedDegree { .. } => "UnsupportedDegree",
        }
    }

    /// True for cap/budget exhaustion, false for malformed or invalid input.
    /// The CLI maps the former to exit code 2 and the latter to exit code 1.
    pub fn is_resource_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::OrderExceedsCap { .. }
                | Error::SearchBudgetExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::TooManySubsets { .. }
                | Error::MotionEvidenceExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
