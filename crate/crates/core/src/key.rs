//! Totally ordered keys and pivot bounds.

use std::cmp::Ordering;
use std::fmt::Debug;

/// Anything usable as a user key.
pub trait UserKey: Ord + Copy + Debug {}
impl<T: Ord + Copy + Debug> UserKey for T {}

/// A user key tagged with the insertion sequence number of its element.
///
/// Ordering is lexicographic on `(user, seq)`, so two live keys never
/// compare equal even when their user keys do. The sequence number is fixed
/// at insertion and survives every key change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Key<K> {
    pub user: K,
    pub seq: u64,
}

impl<K> Key<K> {
    pub fn new(user: K, seq: u64) -> Self {
        Key { user, seq }
    }
}

impl<K: Ord> Ord for Key<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.user
            .cmp(&other.user)
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

impl<K: Ord> PartialOrd for Key<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A pivot value. Pivots are key copies; the element they came from may
/// already be gone. `NegInf`/`PosInf` stand in for the implicit outer pivots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pivot<K> {
    NegInf,
    At(Key<K>),
    PosInf,
}

impl<K: Ord> Pivot<K> {
    /// `self <= key`, i.e. `key` lies at or above this pivot.
    #[inline]
    pub fn admits(&self, key: &Key<K>) -> bool {
        match self {
            Pivot::NegInf => true,
            Pivot::At(p) => p <= key,
            Pivot::PosInf => false,
        }
    }

    /// `key < self`.
    #[inline]
    pub fn is_above(&self, key: &Key<K>) -> bool {
        !self.admits(key)
    }
}

impl<K: Ord> Ord for Pivot<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |p: &Pivot<K>| match p {
            Pivot::NegInf => 0,
            Pivot::At(_) => 1,
            Pivot::PosInf => 2,
        };
        match (self, other) {
            (Pivot::At(a), Pivot::At(b)) => a.cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl<K: Ord> PartialOrd for Pivot<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> From<Key<K>> for Pivot<K> {
    fn from(k: Key<K>) -> Self {
        Pivot::At(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_broken_by_sequence() {
        let a = Key::new(5, 0);
        let b = Key::new(5, 1);
        assert!(a < b);
        assert!(Key::new(4, 9) < a);
    }

    #[test]
    fn pivot_order_has_sentinels_at_the_ends() {
        let k = Key::new(i64::MIN, 0);
        assert!(Pivot::NegInf < Pivot::At(k));
        assert!(Pivot::At(Key::new(i64::MAX, u64::MAX)) < Pivot::PosInf);
        assert!(Pivot::<i64>::NegInf.admits(&k));
        assert!(!Pivot::<i64>::PosInf.admits(&k));
        assert!(Pivot::At(Key::new(10, 0)).admits(&Key::new(10, 3)));
        assert!(Pivot::At(Key::new(10, 3)).is_above(&Key::new(10, 0)));
    }
}
