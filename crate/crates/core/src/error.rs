use alloc::string::String;

/// Errors raised by the core library.
///
/// Everything is a pure function of its inputs, so errors only ever report
/// malformed arguments, violated preconditions or exceeded size caps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rational with zero denominator")]
    ZeroDenominator,
    #[error("type error: expected {expected}, found {found}")]
    Type {
        expected: &'static str,
        found: &'static str,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} exceeds cap: {got} > {limit}")]
    Cap {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn check_cap(what: &'static str, limit: usize, got: usize) -> Result<(), Self> {
        if got > limit {
            Err(Error::Cap { what, limit, got })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
