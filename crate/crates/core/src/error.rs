use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {0} occurs more than once")]
    DuplicateEntry(u32),

    #[error("not a primed permutation (expected the values 0..={n} with 0 last)")]
    NotPrimed { n: usize },

    #[error("{what} {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("mapping is not a linear extension of the diagram")]
    NotLinearExtension,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what} guard exceeded: requested {requested}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
