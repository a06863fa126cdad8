use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("exact division failed: {0}")]
    Divisibility(&'static str),

    #[error("capacity exceeded: {what} = {value} exceeds the limit {limit}")]
    Capacity {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("elimination degenerated to the zero polynomial ({0})")]
    Degenerate(String),

    #[error("certification failed: normalized |R(r)| = {value:e} exceeds {bound:e}")]
    Certification { value: f64, bound: f64 },
}
