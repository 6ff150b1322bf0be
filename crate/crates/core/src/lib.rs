//! Partition-based priority queues with stable handles.
//!
//! Three heaps share one framework: elements sit in unordered linked sets
//! `S_1 .. S_l`, separated by sorted pivots, and every set only holds keys
//! between its two pivots.
//!
//! - [`LpHeap`]: lazy partition heap. Splits `S_1` at the median on
//!   delete-min and forgets pivots to keep `O(log n)` sets.
//! - [`FhTngHeap`]: sets live in slots with Fibonacci size bands.
//! - [`ExpHeap`]: set `i` holds fewer than `3 * 2^i` elements; overflow
//!   pushes whole sets down, delete-min pulls elements up.
//!
//! All of them implement [`AddressableHeap`]. The [`validation`] module holds
//! the oracle heap, audits and replay driver; [`trace`] holds the workload
//! format and generators.

pub mod arena;
pub mod error;
pub mod exp;
pub mod fhtng;
pub mod heap;
pub mod key;
pub mod lp;
pub mod meter;
pub mod pivot;
pub mod potential;
pub mod select;
pub mod trace;
pub mod validation;

pub use arena::{set_from_keys, Handle, LinkedSet, NodeArena};
pub use error::HeapError;
pub use exp::ExpHeap;
pub use fhtng::FhTngHeap;
pub use heap::{new_heap, AddressableHeap, HeapConfig, HeapKind};
pub use key::{Key, Pivot, UserKey};
pub use lp::LpHeap;
pub use meter::CostMeter;
pub use pivot::{ceil_lg, PivotIndex};
pub use potential::{LedgerOp, LedgerRow, PotentialLedger};
pub use select::{select_rank, split_by_rank, SelectMode, Selector};
