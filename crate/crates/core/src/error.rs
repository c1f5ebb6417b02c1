use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undeclared symbol `{0}`")]
    UnknownSymbol(String),
    #[error("line {line}: duplicate transition from state {state} on `{symbol}`")]
    DuplicateTransition { line: usize, state: usize, symbol: String },
    #[error("transition function is not total: state {state} has no move on `{symbol}`")]
    NotTotal { state: usize, symbol: String },
    #[error("eps not allowed in dfa")]
    EpsilonInDfa,
    #[error("automaton has epsilon transitions")]
    EpsilonPresent,
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {what} ({count} > {cap})")]
    ResourceLimit {
        what: &'static str,
        count: usize,
        cap: usize,
    },
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            msg: msg.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
