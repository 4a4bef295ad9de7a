use thiserror::Error;

/// Errors surfaced by the public API.
///
/// Broken internal invariants (an operator producing an invalid column, an
/// ambiguous case split) are not represented here; they panic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closure computation exceeded its node budget.
    #[error("node budget of {budget} exceeded while generating {what}")]
    Budget { budget: usize, what: String },

    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
