//! Error taxonomy shared by every module.

use std::fmt;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// What went wrong, split by who can fix it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation
    /// (negative deformation, wavelength below the minimal one, a pole of a
    /// coefficient formula). The message names the offending quantity.
    Domain(String),
    /// A structurally invalid request: truncation windows that do not fit,
    /// grids too small for the number of levels asked for, and similar.
    Config(String),
    /// A numerical routine ran but could not produce a trustworthy answer
    /// (lost convergence, underflowed to zero). The message carries the
    /// diagnostic.
    Computation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn computation(msg: impl Into<String>) -> Self {
        Error::Computation(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Computation(msg) => write!(f, "computation failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_includes_category_and_message() {
        let e = Error::domain("beta must be positive, got -1");
        assert_eq!(e.to_string(), "domain error: beta must be positive, got -1");
        let e = Error::config("interior window exceeds dimension");
        assert!(e.to_string().starts_with("configuration error:"));
    }
}
