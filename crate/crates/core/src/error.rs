use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid characteristic: {0}")]
    InvalidConfig(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("list must have exactly q = {expected} entries, found {found}")]
    ListLength { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("groebner pair queue exceeded the cap of {cap} pairs")]
    ResourceLimit { cap: usize },

    #[error("no stabilization before e = {e_cap}; last two terms: {previous:?} and {last:?}")]
    NoStabilization {
        e_cap: u32,
        previous: Vec<String>,
        last: Vec<String>,
    },

    /// Raised when a computed object fails a self-check; always an arithmetic bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
