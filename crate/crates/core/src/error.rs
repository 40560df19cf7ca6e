use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Values would live in a proper extension of Q_p.
    #[error("unsupported embedding: order {order} does not divide p - 1 = {}", .p - 1)]
    UnsupportedEmbedding { order: u64, p: u64 },

    /// Precision loss exceeded the guard digits.
    #[error("precision exhausted: needed {needed} p-adic digits, only {guaranteed} guaranteed")]
    Precision { needed: i64, guaranteed: i64 },

    /// Operands from incompatible structures (e.g. different cyclotomic orders or primes).
    #[error("structural mismatch: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
