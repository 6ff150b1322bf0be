use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("heap is empty")]
    Empty,
    #[error("handle does not refer to a live element")]
    DeadHandle,
    #[error("new key is larger than the current key")]
    KeyIncrease,
    #[error("new key is smaller than the current key")]
    KeyDecrease,
    #[error("rank {rank} out of range for a set of size {len}")]
    RankOutOfRange { rank: usize, len: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
