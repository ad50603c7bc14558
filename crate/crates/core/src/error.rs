use thiserror::Error;

/// Errors produced by the decomposition library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined
    /// (range or parity violation).
    #[error("domain error: {0}")]
    Domain(String),

    /// The radial integral of `p^n` on channel `ell` diverges (`n > ell`).
    #[error("divergent: radial integral of p^{n} diverges on channel l={ell} (requires n <= l)")]
    Divergent { n: i64, ell: u32 },

    /// The radial integral of `p^n` on channel `ell` is not integrable at
    /// the origin (`n <= -(ell + 3)`).
    #[error("not integrable: p^{n} is not integrable at the origin on channel l={ell} (requires n > -(l+3))")]
    NotIntegrable { n: i64, ell: u32 },

    /// Input failed a numerical or structural validation check.
    #[error("validation error: {0}")]
    Validation(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
