//! Reference heap backed by an ordered set.

use std::collections::BTreeSet;

use crate::arena::Handle;
use crate::error::HeapError;
use crate::heap::{AddressableHeap, HeapKind};
use crate::key::{Key, UserKey};
use crate::meter::CostMeter;
use crate::potential::PotentialLedger;
use crate::validation::AuditReport;

/// Straightforward addressable heap used as the differential oracle. It
/// assigns the same sequence numbers as the partition heaps, so popped keys
/// can be compared field by field.
#[derive(Debug, Clone)]
pub struct OracleHeap<K> {
    set: BTreeSet<Key<K>>,
    /// Current key per insertion ordinal; `None` once removed.
    slots: Vec<Option<Key<K>>>,
    meter: CostMeter,
}

impl<K: UserKey> Default for OracleHeap<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: UserKey> OracleHeap<K> {
    pub fn new() -> Self {
        OracleHeap {
            set: BTreeSet::new(),
            slots: Vec::new(),
            meter: CostMeter::new(),
        }
    }

    fn live(&self, h: Handle) -> Result<Key<K>, HeapError> {
        match self.slots.get(h.idx as usize) {
            Some(Some(k)) if h.gen == 0 => Ok(*k),
            _ => Err(HeapError::DeadHandle),
        }
    }

    /// Sorted snapshot of all live keys.
    pub fn keys(&self) -> Vec<Key<K>> {
        self.set.iter().copied().collect()
    }

    pub fn max(&self) -> Option<Key<K>> {
        self.set.last().copied()
    }
}

impl<K: UserKey> AddressableHeap<K> for OracleHeap<K> {
    fn kind(&self) -> HeapKind {
        HeapKind::Oracle
    }

    fn insert(&mut self, key: K) -> Handle {
        let seq = self.slots.len() as u64;
        let k = Key::new(key, seq);
        self.set.insert(k);
        self.slots.push(Some(k));
        Handle::new(seq as u32, 0)
    }

    fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        let k = self.set.pop_first().ok_or(HeapError::Empty)?;
        self.slots[k.seq as usize] = None;
        Ok(k)
    }

    fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        self.set.first().copied().ok_or(HeapError::Empty)
    }

    fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        let old = self.live(h)?;
        if key > old.user {
            return Err(HeapError::KeyIncrease);
        }
        let new = Key::new(key, old.seq);
        self.set.remove(&old);
        self.set.insert(new);
        self.slots[h.idx as usize] = Some(new);
        Ok(())
    }

    fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        self.live(h)
    }

    fn len(&self) -> usize {
        self.set.len()
    }

    fn meter(&self) -> &CostMeter {
        &self.meter
    }

    fn meter_mut(&mut self) -> &mut CostMeter {
        &mut self.meter
    }

    fn potential(&self) -> i64 {
        0
    }

    fn ledger(&self) -> Option<&PotentialLedger> {
        None
    }

    fn audit(&self) -> AuditReport {
        let mut r = AuditReport::new(HeapKind::Oracle);
        let live = self.slots.iter().filter(|s| s.is_some()).count();
        r.record(
            "element_count",
            if live == self.set.len() {
                Ok(())
            } else {
                Err((None, format!("{live} live slots, {} keys", self.set.len())))
            },
        );
        r.set_digest(&self.set.len());
        r
    }

    fn set_count(&self) -> usize {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_key_then_sequence() {
        let mut o = OracleHeap::new();
        let a = o.insert(5);
        o.insert(3);
        o.insert(5);
        o.decrease_key(a, 3).unwrap();
        assert_eq!(o.pop_min().unwrap(), Key::new(3, 0));
        assert_eq!(o.pop_min().unwrap(), Key::new(3, 1));
        assert_eq!(o.pop_min().unwrap(), Key::new(5, 2));
        assert_eq!(o.pop_min(), Err(HeapError::Empty));
        assert_eq!(o.decrease_key(a, 1), Err(HeapError::DeadHandle));
    }
}
