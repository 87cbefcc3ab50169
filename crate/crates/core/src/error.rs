use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring order {order} exceeds the configured cap of {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("element index {index} is out of range for a ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
