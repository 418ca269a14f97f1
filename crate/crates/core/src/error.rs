use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or unsupported input.
    Input,
    /// A configured size cap was hit.
    Resource,
    /// A verified theorem failed on concrete data. Always a kernel bug.
    Violation,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order exceeds the configured cap of {cap} elements")]
    OrderCap { cap: usize },

    #[error("permutation degree {degree} exceeds the configured point cap of {cap}")]
    PointCap { degree: usize, cap: usize },

    #[error("subgroup count exceeds the configured limit of {limit}")]
    SubgroupLimit { limit: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported field GF({p}^{n}); supported fields: {supported}")]
    UnsupportedField { p: u32, n: u32, supported: String },

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("division by zero in GF({0})")]
    ZeroInverse(u32),

    #[error("{line}:{column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
        /// Byte range in the source text.
        span: (usize, usize),
    },

    #[error("{line}:{column}: {source}")]
    Spanned {
        source: Box<Error>,
        line: usize,
        column: usize,
        span: (usize, usize),
    },

    #[error("theorem violation ({theorem}) on {group}: {detail}")]
    TheoremViolation {
        theorem: &'static str,
        group: String,
        detail: String,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OrderCap { .. } | Error::PointCap { .. } | Error::SubgroupLimit { .. } => {
                ErrorClass::Resource
            }
            Error::TheoremViolation { .. } => ErrorClass::Violation,
            Error::Spanned { source, .. } => source.class(),
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn violation(theorem: &'static str, group: &str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            theorem,
            group: group.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
