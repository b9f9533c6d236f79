use std::fmt;

/// Errors produced by the library.
///
/// `Parse` covers malformed expansion or fraction syntax; everything else is a
/// domain violation of an otherwise well-formed request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input (expansion syntax, fraction syntax).
    Parse(String),
    /// A value lies outside the domain of the requested operation.
    Domain(String),
    /// The operation requires membership in the bifurcation set and the input
    /// is not a member.
    NotAMember(String),
    /// A partial quotient does not fit in the machine word used to store it.
    QuotientOverflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NotAMember(msg) => write!(f, "membership error: {msg}"),
            Error::QuotientOverflow => write!(f, "partial quotient exceeds u64"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
