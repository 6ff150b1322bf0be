//! Sorted pivot array with comparison-counted binary search.

use crate::key::{Key, Pivot};
use crate::meter::CostMeter;

/// Pivots `p_2 <= ... <= p_l` separating sets `S_1 .. S_l`.
///
/// The outer pivots `p_1 = -inf` and `p_{l+1} = +inf` are implicit. Set `i`
/// (0-based) covers `[pivots[i-1], pivots[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotIndex<K> {
    pivots: Vec<Pivot<K>>,
}

impl<K> Default for PivotIndex<K> {
    fn default() -> Self {
        PivotIndex { pivots: Vec::new() }
    }
}

impl<K: Ord + Copy> PivotIndex<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pivots(pivots: Vec<Pivot<K>>) -> Self {
        PivotIndex { pivots }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn as_slice(&self) -> &[Pivot<K>] {
        &self.pivots
    }

    pub(crate) fn as_mut_vec(&mut self) -> &mut Vec<Pivot<K>> {
        &mut self.pivots
    }

    pub fn is_sorted(&self) -> bool {
        self.pivots.windows(2).all(|w| w[0] <= w[1])
    }

    /// 0-based index of the set holding `k`: the number of pivots `<= k`.
    ///
    /// Uses at most `ceil(lg(len + 1))` probes, each charged as one comparison.
    pub fn search(&self, k: &Key<K>, meter: &mut CostMeter) -> usize {
        let (pos, probes) = search_slice(&self.pivots, k);
        meter.record_search(probes);
        pos
    }
}

/// Returns `(number of pivots <= k, probes used)`.
pub(crate) fn search_slice<K: Ord>(pivots: &[Pivot<K>], k: &Key<K>) -> (usize, u64) {
    let mut lo = 0usize;
    let mut hi = pivots.len();
    let mut probes = 0u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        probes += 1;
        if pivots[mid].admits(k) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    (lo, probes)
}

/// `ceil(lg(x))` for `x >= 1`.
pub fn ceil_lg(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(ps: &[i64]) -> PivotIndex<i64> {
        PivotIndex::from_pivots(ps.iter().map(|&p| Pivot::At(Key::new(p, 0))).collect())
    }

    fn linear(ps: &[Pivot<i64>], k: &Key<i64>) -> usize {
        ps.iter().take_while(|p| p.admits(k)).count()
    }

    #[test]
    fn empty_index_is_first_set() {
        let mut m = CostMeter::new();
        assert_eq!(idx(&[]).search(&Key::new(5, 1), &mut m), 0);
        assert_eq!(m.search_comparisons, 0);
    }

    #[test]
    fn boundary_is_inclusive_on_the_left() {
        let mut m = CostMeter::new();
        // A fresh element with key 10 sorts after the pivot copy of 10.
        assert_eq!(idx(&[10]).search(&Key::new(10, 1), &mut m), 1);
        assert_eq!(idx(&[10]).search(&Key::new(10, 0), &mut m), 1);
        assert_eq!(idx(&[10]).search(&Key::new(9, 5), &mut m), 0);
    }

    #[test]
    fn three_pivots() {
        let mut m = CostMeter::new();
        let ix = idx(&[3, 8, 20]);
        let k = Key::new(9, 1);
        assert_eq!(ix.search(&k, &mut m), linear(ix.as_slice(), &k));
        assert_eq!(ix.search(&k, &mut m), 2); // third set
    }

    #[test]
    fn ceil_lg_values() {
        assert_eq!(ceil_lg(1), 0);
        assert_eq!(ceil_lg(2), 1);
        assert_eq!(ceil_lg(3), 2);
        assert_eq!(ceil_lg(8), 3);
        assert_eq!(ceil_lg(9), 4);
        assert_eq!(ceil_lg(41), 6);
    }

    proptest! {
        #[test]
        fn agrees_with_linear_scan(mut ps in proptest::collection::vec(-50i64..50, 0..64), k in -60i64..60, seq in 0u64..3) {
            ps.sort();
            let ix = idx(&ps);
            let key = Key::new(k, seq);
            let mut m = CostMeter::new();
            prop_assert_eq!(ix.search(&key, &mut m), linear(ix.as_slice(), &key));
            prop_assert!(m.search_comparisons <= ceil_lg(ps.len() as u64 + 1) as u64);
        }
    }
}
