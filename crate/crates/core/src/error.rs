use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematically valid or supported range.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested accuracy cannot be certified.
    #[error("tolerance error: {0}")]
    Tolerance(String),
    /// Exact closed forms need `N` and `nu` of opposite parity.
    #[error("parity error: N = {n} and nu = {nu} have the same parity")]
    Parity { n: i64, nu: i64 },
    /// An exact identity failed; indicates an arithmetic bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn tolerance(msg: impl Into<String>) -> Self {
        Error::Tolerance(msg.into())
    }
}
