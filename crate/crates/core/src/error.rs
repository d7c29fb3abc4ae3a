use thiserror::Error;

/// Errors surfaced by the public API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("user index {user} out of range [1..{n}]")]
    UserOutOfRange { user: usize, n: usize },

    #[error("matrix has {got} columns, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("infeasible instance (m={m} odd, g=1, s={s}): the privacy constraint cannot be met")]
    Infeasible { m: usize, s: usize },

    #[error("no scheme is defined for s = 0 (users hold no side information)")]
    UnsupportedZeroS,

    #[error("message set {0:?} is not a 1-factor of the network topology hypergraph")]
    NotOneFactor(Vec<usize>),

    #[error("{what} supports {cap} at most, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },

    #[error("no valid code of the required length was found by exhaustive search")]
    NoSchemeFound,
}

pub type Result<T> = std::result::Result<T, Error>;
