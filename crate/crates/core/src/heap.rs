//! The handle-based interface shared by every heap in this crate.

use std::fmt;
use std::str::FromStr;

use crate::arena::Handle;
use crate::error::HeapError;
use crate::key::{Key, UserKey};
use crate::meter::CostMeter;
use crate::potential::PotentialLedger;
use crate::select::SelectMode;
use crate::validation::AuditReport;

/// Construction options common to all heaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeapConfig {
    pub select: SelectMode,
    /// Record a [`PotentialLedger`] row for every tracked step.
    pub track_potential: bool,
    /// Potential scale of the lazy partition heap. Instrumentation only.
    pub beta: i64,
}

impl Default for HeapConfig {
    fn default() -> Self {
        HeapConfig {
            select: SelectMode::Deterministic,
            track_potential: false,
            beta: 4,
        }
    }
}

impl HeapConfig {
    pub fn tracked() -> Self {
        HeapConfig {
            track_potential: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeapKind {
    Lp,
    Fhtng,
    Exp,
    Oracle,
}

impl HeapKind {
    pub const PARTITION: [HeapKind; 3] = [HeapKind::Lp, HeapKind::Fhtng, HeapKind::Exp];

    pub fn name(&self) -> &'static str {
        match self {
            HeapKind::Lp => "lp",
            HeapKind::Fhtng => "fhtng",
            HeapKind::Exp => "exp",
            HeapKind::Oracle => "oracle",
        }
    }
}

impl fmt::Display for HeapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lp" => Ok(HeapKind::Lp),
            "fhtng" => Ok(HeapKind::Fhtng),
            "exp" => Ok(HeapKind::Exp),
            "oracle" => Ok(HeapKind::Oracle),
            other => Err(format!("unknown heap implementation `{other}`")),
        }
    }
}

/// A min-priority queue with stable handles and decrease-key.
pub trait AddressableHeap<K: UserKey> {
    fn kind(&self) -> HeapKind;

    /// Inserts `key` and returns a handle that stays valid until the element
    /// leaves the heap.
    fn insert(&mut self, key: K) -> Handle;

    /// Removes the minimum and returns its full key (user key plus
    /// insertion sequence number).
    fn pop_min(&mut self) -> Result<Key<K>, HeapError>;

    fn delete_min(&mut self) -> Result<K, HeapError> {
        self.pop_min().map(|k| k.user)
    }

    /// Returns the minimum without removing it. May restructure internally.
    fn find_min(&mut self) -> Result<Key<K>, HeapError>;

    /// Lowers the key of `h` to `key`. Equal keys are accepted.
    fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError>;

    fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn meter(&self) -> &CostMeter;

    fn meter_mut(&mut self) -> &mut CostMeter;

    /// Current total potential (0 for heaps without one).
    fn potential(&self) -> i64;

    fn ledger(&self) -> Option<&PotentialLedger>;

    /// Full structural audit; side-effect free.
    fn audit(&self) -> AuditReport;

    /// Number of sets (or slots) the structure currently keeps.
    fn set_count(&self) -> usize;
}

/// Builds a boxed heap of the given kind.
pub fn new_heap<K: UserKey + 'static>(
    kind: HeapKind,
    config: HeapConfig,
) -> Box<dyn AddressableHeap<K>> {
    match kind {
        HeapKind::Lp => Box::new(crate::lp::LpHeap::with_config(config)),
        HeapKind::Fhtng => Box::new(crate::fhtng::FhTngHeap::with_config(config)),
        HeapKind::Exp => Box::new(crate::exp::ExpHeap::with_config(config)),
        HeapKind::Oracle => Box::new(crate::validation::OracleHeap::new()),
    }
}
