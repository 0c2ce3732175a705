use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A chain that was required to be of class T is not.
    #[error("chain {chain} has type ({n},{q}), which is not of class T")]
    NotClassT { chain: usize, n: String, q: String },
    /// The requested characteristic is excluded by the construction.
    #[error("characteristic {p} is excluded by {name} (requires char not in {excluded:?})")]
    ExcludedCharacteristic { name: String, p: u64, excluded: Vec<u64> },
    /// Malformed structured input.
    #[error("bad input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
