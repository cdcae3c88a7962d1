use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A factor that does not converge in 0 < -Im(z) < Im(tau).
    #[error("domain error: {0}")]
    Domain(String),
    /// A coefficient was requested, or needed, outside the exact window.
    #[error("window error: {0}")]
    Window(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A factor (1 - q^0)^e with e < 0 survived cancellation.
    #[error("uncancelled pole: {0}")]
    Pole(String),
    #[error("not rational: {0}")]
    Rationality(String),
    #[error("series is not y-free: nonzero coefficient at (n24 = {n24}, r = {r})")]
    NotYFree { n24: i64, r: i64 },
    #[error("data error: {0}")]
    Data(String),
    /// The class is one of 3B, 4C, 6B, 12B, 21A, 21B, 23A, 23B.
    #[error("class {0} is excluded")]
    Excluded(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn window(msg: impl Into<String>) -> Self {
        Error::Window(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}
