//! Lazy partition heap.
//!
//! Elements live in unordered sets `S_1 .. S_l` separated by pivots. Only
//! `delete_min` does real work: it removes the minimum of `S_1`, splits the
//! rest of `S_1` at the larger median and then forgets pivots so that no two
//! adjacent sets `A, B` satisfy `|A| + |B| < s_A`, where `s_A` counts the
//! elements in the sets before `A`. This keeps `l <= 2 lg n + 1`.

use rand::Rng;

use crate::arena::{set_from_keys, Handle, LinkedSet, NodeArena};
use crate::error::HeapError;
use crate::heap::{AddressableHeap, HeapConfig, HeapKind};
use crate::key::{Key, Pivot, UserKey};
use crate::meter::CostMeter;
use crate::pivot::PivotIndex;
use crate::potential::{row, LedgerOp, PotentialLedger};
use crate::select::{min_of, partition_set, split_by_rank, Selector};
use crate::validation::audit::{check_order, check_traversal};
use crate::validation::AuditReport;

pub struct LpHeap<K> {
    arena: NodeArena<K>,
    sets: Vec<LinkedSet>,
    index: PivotIndex<K>,
    n: usize,
    next_seq: u64,
    cached_min: Option<u32>,
    selector: Selector,
    beta: i64,
    ledger: Option<PotentialLedger>,
    /// True while no operation has touched the sets since the last
    /// forget-pivots pass, so the post-pass invariants must hold.
    settled: bool,
}

impl<K: UserKey> Default for LpHeap<K> {
    fn default() -> Self {
        Self::with_config(HeapConfig::default())
    }
}

impl<K: UserKey> LpHeap<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(config: HeapConfig) -> Self {
        LpHeap {
            arena: NodeArena::new(),
            sets: vec![LinkedSet::new()],
            index: PivotIndex::new(),
            n: 0,
            next_seq: 0,
            cached_min: None,
            selector: Selector::new(config.select),
            beta: config.beta,
            ledger: config.track_potential.then(PotentialLedger::new),
            settled: true,
        }
    }

    /// All items go into `S_1`; no pivots. Linear time.
    pub fn build(items: impl IntoIterator<Item = K>, config: HeapConfig) -> (Self, Vec<Handle>) {
        Self::with_layout(vec![items.into_iter().collect()], config)
    }

    /// Builds a heap with the given sets in order. Each set after the first
    /// gets its minimum as pivot, so the caller must supply ordered sets.
    /// Empty sets are kept with a pivot equal to the next key above them.
    pub fn with_layout(layout: Vec<Vec<K>>, config: HeapConfig) -> (Self, Vec<Handle>) {
        let mut h = Self::with_config(config);
        h.sets.clear();
        let mut handles = Vec::new();
        let mut pivots = Vec::new();
        let mut pending_empty = 0usize;
        for (j, keys) in layout.into_iter().enumerate() {
            let keys: Vec<Key<K>> = keys
                .into_iter()
                .map(|u| {
                    let k = Key::new(u, h.next_seq);
                    h.next_seq += 1;
                    k
                })
                .collect();
            let min = keys.iter().min().copied();
            let (set, hs) = set_from_keys(&mut h.arena, keys);
            h.n += set.len();
            handles.extend(hs);
            h.sets.push(set);
            if j == 0 {
                continue;
            }
            match min {
                Some(m) => {
                    for _ in 0..=pending_empty {
                        pivots.push(Pivot::At(m));
                    }
                    pending_empty = 0;
                }
                None => pending_empty += 1,
            }
        }
        for _ in 0..pending_empty {
            pivots.push(Pivot::PosInf);
        }
        if h.sets.is_empty() {
            h.sets.push(LinkedSet::new());
        }
        h.index = PivotIndex::from_pivots(pivots);
        h.settled = false;
        h.refresh_min_cache();
        h.arena.meter.reset();
        (h, handles)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(LinkedSet::len).collect()
    }

    pub fn pivots(&self) -> &[Pivot<K>] {
        self.index.as_slice()
    }

    /// User keys of set `j` (0-based), sorted.
    pub fn set_keys(&self, j: usize) -> Vec<K> {
        let mut v: Vec<K> = self.sets[j]
            .iter(&self.arena)
            .map(|i| self.arena.key(i).user)
            .collect();
        v.sort();
        v
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// `sum_j beta * max(0, |S_j| - s_j)`.
    pub fn potential_phi(&self) -> i64 {
        let mut prefix = 0i64;
        let mut phi = 0i64;
        for s in &self.sets {
            let size = s.len() as i64;
            phi += self.beta * (size - prefix).max(0);
            prefix += size;
        }
        phi
    }

    fn tracking(&self) -> bool {
        self.ledger.is_some()
    }

    fn phi_if_tracked(&self) -> i64 {
        if self.tracking() {
            self.potential_phi()
        } else {
            0
        }
    }

    fn log(&mut self, op: LedgerOp, index: Option<usize>, before: i64, bound: i64, applies: bool) {
        if self.ledger.is_none() {
            return;
        }
        let after = self.potential_phi();
        if let Some(ledger) = &mut self.ledger {
            ledger.push(row(op, index, 0, before, after, bound, applies));
        }
    }

    fn refresh_min_cache(&mut self) {
        self.cached_min = self
            .sets
            .iter()
            .find(|s| !s.is_empty())
            .and_then(|s| min_of(&mut self.arena, &s.clone()))
            .map(|(i, _)| i);
    }

    fn offer_min(&mut self, idx: u32) {
        match self.cached_min {
            None => self.cached_min = Some(idx),
            Some(c) => {
                self.arena.meter.compare(1);
                if self.arena.key(idx) < self.arena.key(c) {
                    self.cached_min = Some(idx);
                }
            }
        }
    }

    /// Places a detached node by pivot search.
    fn place(&mut self, idx: u32) -> usize {
        let k = self.arena.key(idx);
        let j = self.index.search(&k, &mut self.arena.meter);
        self.sets[j].append(&mut self.arena, idx);
        self.settled = false;
        j
    }

    /// Detaches a live node from its set, located by pivot search.
    fn detach(&mut self, idx: u32) -> usize {
        let k = self.arena.key(idx);
        let j = self.index.search(&k, &mut self.arena.meter);
        self.sets[j].remove(&mut self.arena, idx);
        self.settled = false;
        j
    }

    /// Removes empty sets, then concatenates every adjacent pair `A, B` with
    /// `|A| + |B| < s_A` in one left-to-right pass. Rebuilds the pivot array.
    pub fn forget_pivots(&mut self) {
        let old_sets = std::mem::take(&mut self.sets);
        let old_pivots = std::mem::take(self.index.as_mut_vec());
        let mut sets: Vec<LinkedSet> = Vec::with_capacity(old_sets.len());
        let mut pivots = Vec::with_capacity(old_pivots.len());
        let mut before_last = 0usize;
        for (j, set) in old_sets.into_iter().enumerate() {
            if set.is_empty() {
                continue;
            }
            let Some(last) = sets.last_mut() else {
                sets.push(set);
                continue;
            };
            if last.len() + set.len() < before_last {
                last.concat(&mut self.arena, set);
            } else {
                before_last += last.len();
                pivots.push(old_pivots[j - 1]);
                sets.push(set);
            }
        }
        if sets.is_empty() {
            sets.push(LinkedSet::new());
        }
        self.sets = sets;
        *self.index.as_mut_vec() = pivots;
        self.settled = true;
    }

    /// Splits the remaining `S_1` (at least two elements) in place.
    fn split_first(&mut self, remaining_min: u32) {
        let mut s1 = self.sets[0].take();
        let m = s1.len();
        let (low, high, pivot) = if self.selector.is_randomized() {
            // One random partition round around any element but the minimum.
            let mut pick = self.selector.rng().gen_range(0..m - 1);
            let mut pivot_idx = remaining_min;
            for idx in s1.iter(&self.arena) {
                if idx == remaining_min {
                    continue;
                }
                if pick == 0 {
                    pivot_idx = idx;
                    break;
                }
                pick -= 1;
            }
            let pk = self.arena.key(pivot_idx);
            let (low, high) = partition_set(&mut self.arena, s1, &pk);
            (low, high, pk)
        } else {
            split_by_rank(&mut self.arena, &mut s1, m.div_ceil(2), &mut self.selector)
                .expect("rank is in range for two or more elements")
        };
        self.sets[0] = high;
        self.sets.insert(0, low);
        self.index.as_mut_vec().insert(0, Pivot::At(pivot));
    }

    pub fn insert(&mut self, key: K) -> Handle {
        self.arena.meter.begin_op();
        let before = self.phi_if_tracked();
        let k = Key::new(key, self.next_seq);
        self.next_seq += 1;
        let h = self.arena.alloc(k);
        let j = self.place(h.idx);
        self.n += 1;
        self.offer_min(h.idx);
        let beta = self.beta;
        self.log(LedgerOp::Insert, Some(j), before, beta, true);
        h
    }

    pub fn find_min(&self) -> Result<Key<K>, HeapError> {
        self.cached_min
            .map(|i| self.arena.key(i))
            .ok_or(HeapError::Empty)
    }

    pub fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        self.arena.meter.begin_op();
        if self.n == 0 {
            return Err(HeapError::Empty);
        }
        let before = self.phi_if_tracked();
        let ell = self.sets.len() as i64;
        if self.sets[0].is_empty() {
            // Only after decrease-keys emptied S_1 with nothing moving in,
            // which cannot happen, or after a layout with an empty S_1.
            self.forget_pivots();
        }
        let first_size = self.sets[0].len() as i64;

        // Scan S_1 for the two smallest keys.
        let mut best: Option<u32> = None;
        let mut second: Option<u32> = None;
        let mut cmps = 0u64;
        for idx in self.sets[0].iter(&self.arena) {
            let k = self.arena.key(idx);
            match best {
                None => best = Some(idx),
                Some(b) => {
                    cmps += 1;
                    if k < self.arena.key(b) {
                        second = best;
                        best = Some(idx);
                    } else if self.selector.is_randomized() {
                        cmps += 1;
                        if second.is_none_or(|s| k < self.arena.key(s)) {
                            second = Some(idx);
                        }
                    }
                }
            }
        }
        self.arena.meter.compare(cmps);
        let min_idx = best.expect("first set is nonempty");
        let out = self.arena.key(min_idx);
        self.sets[0].remove(&mut self.arena, min_idx);
        self.arena.release(min_idx);
        self.n -= 1;

        if self.sets[0].len() >= 2 {
            self.split_first(second.unwrap_or(min_idx));
        }
        self.forget_pivots();
        self.refresh_min_cache();

        let bound = self.beta * (ell - (first_size - 1) / 2);
        let applies = !self.selector.is_randomized();
        self.log(LedgerOp::DeleteMin, None, before, bound, applies);
        Ok(out)
    }

    pub fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        self.arena.meter.begin_op();
        let idx = self.arena.resolve(h)?;
        let old = self.arena.key(idx);
        if key > old.user {
            return Err(HeapError::KeyIncrease);
        }
        let before = self.phi_if_tracked();
        let from = self.detach(idx);
        self.arena.set_key(idx, Key::new(key, old.seq));
        let to = self.place(idx);
        debug_assert!(to <= from);
        self.offer_min(idx);
        let beta = self.beta;
        self.log(LedgerOp::DecreaseKey, Some(to), before, beta, true);
        Ok(())
    }

    /// Removes the element of `h` and re-establishes the set-count bound.
    pub fn delete(&mut self, h: Handle) -> Result<Key<K>, HeapError> {
        self.arena.meter.begin_op();
        let idx = self.arena.resolve(h)?;
        let out = self.arena.key(idx);
        self.remove_node(idx);
        self.arena.release(idx);
        Ok(out)
    }

    fn remove_node(&mut self, idx: u32) {
        let before = self.phi_if_tracked();
        let ell = self.sets.len() as i64;
        let j = self.detach(idx);
        self.n -= 1;
        self.forget_pivots();
        if self.cached_min == Some(idx) {
            self.cached_min = None;
            self.refresh_min_cache();
        }
        let bound = self.beta * ell;
        self.log(LedgerOp::Delete, Some(j), before, bound, true);
    }

    /// Raises the key of `h`: a delete followed by a re-insert that keeps
    /// the element's sequence number and handle.
    pub fn increase_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        self.arena.meter.begin_op();
        let idx = self.arena.resolve(h)?;
        let old = self.arena.key(idx);
        if key < old.user {
            return Err(HeapError::KeyDecrease);
        }
        self.remove_node(idx);
        let before = self.phi_if_tracked();
        self.arena.set_key(idx, Key::new(key, old.seq));
        let j = self.place(idx);
        self.n += 1;
        self.offer_min(idx);
        let beta = self.beta;
        self.log(LedgerOp::Insert, Some(j), before, beta, true);
        Ok(())
    }

    pub fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        self.arena.resolve(h).map(|i| self.arena.key(i))
    }

    pub fn audit(&self) -> AuditReport {
        let mut r = AuditReport::new(HeapKind::Lp);
        let ell = self.sets.len();
        check_traversal(&mut r, &self.arena, self.sets.iter().enumerate());

        let total: usize = self.sets.iter().map(LinkedSet::len).sum();
        r.record(
            "element_count",
            if total == self.n {
                Ok(())
            } else {
                Err((None, format!("n = {} but sets hold {}", self.n, total)))
            },
        );
        r.record(
            "pivot_count",
            if self.index.len() + 1 == ell {
                Ok(())
            } else {
                Err((
                    None,
                    format!("{} sets but {} pivots", ell, self.index.len()),
                ))
            },
        );
        r.record(
            "pivots_sorted",
            match self.index.as_slice().windows(2).position(|w| w[0] > w[1]) {
                None => Ok(()),
                Some(p) => Err((Some(p + 2), "pivot array decreases".into())),
            },
        );
        if self.index.len() + 1 == ell {
            let bounds: Vec<_> = self
                .sets
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let lo = if j == 0 {
                        Pivot::NegInf
                    } else {
                        self.index.as_slice()[j - 1]
                    };
                    let hi = self
                        .index
                        .as_slice()
                        .get(j)
                        .copied()
                        .unwrap_or(Pivot::PosInf);
                    (j + 1, s, lo, hi)
                })
                .collect();
            check_order(&mut r, &self.arena, &bounds);
        }

        let true_min = self
            .sets
            .iter()
            .flat_map(|s| s.iter(&self.arena))
            .map(|i| self.arena.key(i))
            .min();
        let cached = self.cached_min.map(|i| self.arena.key(i));
        r.record(
            "cached_min",
            if cached == true_min && self.cached_min.is_none_or(|i| self.arena.node(i).alive) {
                Ok(())
            } else {
                Err((
                    None,
                    format!("cached {cached:?} but minimum is {true_min:?}"),
                ))
            },
        );

        // l <= 2 lg n + 1, as 2^(l-1) <= n^2.
        let n = self.n as u128;
        let set_bound = if self.n == 0 {
            Ok(())
        } else if ell > 129 || (1u128 << (ell - 1)) > n * n {
            Err((Some(ell), format!("{ell} sets for n = {n}")))
        } else {
            Ok(())
        };
        r.record("set_count_bound", set_bound);

        // Sigma(j)^2 >= 2^(j-1) for every prefix.
        let mut prefix = 0u128;
        let mut growth = Ok(());
        if self.n > 0 {
            for (j, s) in self.sets.iter().enumerate() {
                prefix += s.len() as u128;
                if j >= 127 || prefix * prefix < (1u128 << j) {
                    growth = Err((
                        Some(j + 1),
                        format!("prefix size {prefix} too small for set {}", j + 1),
                    ));
                    break;
                }
            }
        }
        r.record("prefix_growth", growth);

        if self.settled {
            let empty = if self.n > 0 {
                self.sets.iter().position(LinkedSet::is_empty)
            } else {
                None
            };
            r.record(
                "no_empty_sets",
                match empty {
                    None => Ok(()),
                    Some(j) => Err((Some(j + 1), "empty set after forget-pivots".into())),
                },
            );
            let mut before = 0usize;
            let mut rule = Ok(());
            for (j, w) in self.sets.windows(2).enumerate() {
                if w[0].len() + w[1].len() < before {
                    rule = Err((
                        Some(j + 1),
                        format!("|S_a| + |S_b| = {} < {}", w[0].len() + w[1].len(), before),
                    ));
                    break;
                }
                before += w[0].len();
            }
            r.record("concatenation_rule", rule);
        }
        r.set_digest(&(self.n, self.set_sizes()));
        r
    }

    #[cfg(test)]
    pub(crate) fn corrupt_first_size(&mut self, len: usize) {
        self.sets[0].corrupt_len(len);
    }
}

impl<K: UserKey> AddressableHeap<K> for LpHeap<K> {
    fn kind(&self) -> HeapKind {
        HeapKind::Lp
    }

    fn insert(&mut self, key: K) -> Handle {
        LpHeap::insert(self, key)
    }

    fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        LpHeap::pop_min(self)
    }

    fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        LpHeap::find_min(self)
    }

    fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        LpHeap::decrease_key(self, h, key)
    }

    fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        LpHeap::key_of(self, h)
    }

    fn len(&self) -> usize {
        self.n
    }

    fn meter(&self) -> &CostMeter {
        self.arena.meter()
    }

    fn meter_mut(&mut self) -> &mut CostMeter {
        self.arena.meter_mut()
    }

    fn potential(&self) -> i64 {
        self.potential_phi()
    }

    fn ledger(&self) -> Option<&PotentialLedger> {
        self.ledger.as_ref()
    }

    fn audit(&self) -> AuditReport {
        LpHeap::audit(self)
    }

    fn set_count(&self) -> usize {
        self.sets.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::select::SelectMode;
    use proptest::prelude::*;

    fn layout(sets: &[&[i64]]) -> LpHeap<i64> {
        LpHeap::with_layout(
            sets.iter().map(|s| s.to_vec()).collect(),
            HeapConfig::default(),
        )
        .0
    }

    fn sized(sizes: &[usize]) -> LpHeap<i64> {
        let mut next = 0i64;
        let sets: Vec<Vec<i64>> = sizes
            .iter()
            .map(|&s| {
                let v: Vec<i64> = (next..next + s as i64).collect();
                next += s as i64;
                v
            })
            .collect();
        LpHeap::with_layout(sets, HeapConfig::default()).0
    }

    #[test]
    fn forget_merges_small_middle_pair() {
        let mut h = sized(&[4, 1, 1, 10]);
        h.forget_pivots();
        assert_eq!(h.set_sizes(), vec![4, 2, 10]);
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn forget_leaves_doubling_sizes_alone() {
        let mut h = sized(&[1, 1, 2, 4, 8]);
        h.forget_pivots();
        assert_eq!(h.set_sizes(), vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn forget_drops_empty_first_set() {
        let mut h = sized(&[0, 3]);
        h.forget_pivots();
        assert_eq!(h.set_sizes(), vec![3]);
        assert!(h.pivots().is_empty());
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn delete_min_splits_at_larger_median() {
        let mut h = layout(&[&[5, 1, 3, 9, 7]]);
        assert_eq!(h.pop_min().unwrap().user, 1);
        assert_eq!(h.set_keys(0), vec![3, 5]);
        assert_eq!(h.set_keys(1), vec![7, 9]);
        assert_eq!(h.pivots().len(), 1);
        assert!(matches!(h.pivots()[0], Pivot::At(k) if k.user == 7));
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn single_element_round_trip() {
        let mut h = LpHeap::new();
        h.insert(4);
        assert_eq!(h.len(), 1);
        assert_eq!(h.pop_min().unwrap().user, 4);
        assert!(h.is_empty());
        assert_eq!(h.pop_min(), Err(HeapError::Empty));
        assert_eq!(h.find_min(), Err(HeapError::Empty));
    }

    #[test]
    fn insert_uses_half_open_intervals() {
        let mut h = layout(&[&[1, 2], &[10, 11]]);
        h.insert(12);
        assert_eq!(h.set_sizes(), vec![2, 3]);
        h.insert(10);
        assert_eq!(h.set_sizes(), vec![2, 4]);
        h.insert(9);
        assert_eq!(h.set_sizes(), vec![3, 4]);
    }

    #[test]
    fn decrease_key_moves_down_or_stays() {
        let (mut h, hs) = LpHeap::with_layout(vec![vec![1], vec![10, 12]], HeapConfig::default());
        h.decrease_key(hs[2], 11).unwrap();
        assert_eq!(h.set_sizes(), vec![1, 2]);
        h.decrease_key(hs[2], 3).unwrap();
        assert_eq!(h.set_sizes(), vec![2, 1]);
        assert_eq!(h.decrease_key(hs[2], 4), Err(HeapError::KeyIncrease));
        assert_eq!(h.key_of(hs[2]).unwrap(), Key::new(3, 2));
    }

    #[test]
    fn find_min_follows_updates() {
        let mut h = LpHeap::new();
        h.insert(5);
        h.insert(2);
        let nine = h.insert(9);
        assert_eq!(h.find_min().unwrap().user, 2);
        h.decrease_key(nine, 1).unwrap();
        assert_eq!(h.find_min().unwrap().user, 1);

        let mut g = LpHeap::new();
        for k in [2, 5, 9] {
            g.insert(k);
        }
        g.pop_min().unwrap();
        assert_eq!(g.find_min().unwrap().user, 5);
    }

    #[test]
    fn delete_sole_element_and_emptied_first_set() {
        let mut h = LpHeap::new();
        let a = h.insert(8);
        h.delete(a).unwrap();
        assert!(h.is_empty());
        assert_eq!(h.set_sizes(), vec![0]);
        assert_eq!(h.delete(a), Err(HeapError::DeadHandle));

        let (mut g, hs) = LpHeap::with_layout(
            vec![vec![1], vec![5, 6], vec![20, 21, 22]],
            HeapConfig::default(),
        );
        g.delete(hs[0]).unwrap();
        assert_eq!(g.set_keys(0), vec![5, 6]);
        assert_eq!(g.find_min().unwrap().user, 5);
        assert!(g.audit().passed(), "{}", g.audit());
    }

    #[test]
    fn increase_key_moves_up() {
        let (mut h, hs) =
            LpHeap::with_layout(vec![vec![1, 3], vec![10, 12]], HeapConfig::default());
        h.increase_key(hs[1], 15).unwrap();
        assert_eq!(h.set_keys(1), vec![10, 12, 15]);
        assert_eq!(h.key_of(hs[1]).unwrap(), Key::new(15, 1));
        assert_eq!(h.increase_key(hs[1], 2), Err(HeapError::KeyDecrease));
        h.increase_key(hs[0], 30).unwrap();
        assert_eq!(h.find_min().unwrap().user, 10);
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn build_then_drain_is_sorted() {
        let (mut h, _) = LpHeap::build(Vec::<i64>::new(), HeapConfig::default());
        assert!(h.is_empty());
        let (h2, _) = LpHeap::build([7, 2, 9], HeapConfig::default());
        assert_eq!(h2.set_sizes(), vec![3]);
        assert_eq!(h2.find_min().unwrap().user, 2);
        assert!(h.pop_min().is_err());

        let items: Vec<i64> = (0..200).map(|i| (i * 7919) % 211).collect();
        let (mut h3, _) = LpHeap::build(items.clone(), HeapConfig::default());
        let mut sorted = items;
        sorted.sort();
        let out: Vec<i64> = (0..sorted.len())
            .map(|_| h3.pop_min().unwrap().user)
            .collect();
        assert_eq!(out, sorted);
    }

    #[test]
    fn potential_examples() {
        let h = sized(&[7]);
        assert_eq!(h.potential_phi(), 4 * 7);
        let cfg = HeapConfig {
            beta: 2,
            ..HeapConfig::default()
        };
        let g = LpHeap::with_layout(vec![vec![1, 2], vec![3]], cfg).0;
        assert_eq!(g.potential_phi(), 4);
        assert_eq!(LpHeap::<i64>::new().potential_phi(), 0);
    }

    #[test]
    fn set_count_bound_after_random_mix() {
        let mut h = LpHeap::new();
        let mut hs = Vec::new();
        for i in 0..40i64 {
            hs.push(h.insert((i * 37) % 41));
        }
        for _ in 0..24 {
            h.pop_min().unwrap();
        }
        assert_eq!(h.len(), 16);
        assert!(h.set_sizes().len() <= 9);
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn audit_pinpoints_corrupted_size() {
        let mut h = LpHeap::new();
        for k in 0..10 {
            h.insert(k);
        }
        h.pop_min().unwrap();
        h.corrupt_first_size(99);
        let rep = h.audit();
        let f = rep.first_failure().unwrap();
        assert_eq!(f.name, "size_traversal");
        assert_eq!(f.index, Some(0));
    }

    proptest! {
        #[test]
        fn matches_sorted_order_with_audits(keys in proptest::collection::vec(-100i64..100, 1..120), seed in 0u64..4, randomized in any::<bool>()) {
            let select = if randomized { SelectMode::Randomized { seed } } else { SelectMode::Deterministic };
            let mut h = LpHeap::with_config(HeapConfig { select, track_potential: true, beta: 4 });
            let mut hs = Vec::new();
            for &k in &keys {
                hs.push(h.insert(k));
            }
            for (i, &hd) in hs.iter().enumerate().step_by(3) {
                let k = h.key_of(hd).unwrap().user;
                h.decrease_key(hd, k - (i as i64 % 5)).unwrap();
            }
            let mut expect: Vec<(i64, u64)> = hs.iter().map(|&hd| { let k = h.key_of(hd).unwrap(); (k.user, k.seq) }).collect();
            expect.sort();
            for e in expect {
                let got = h.pop_min().unwrap();
                prop_assert_eq!((got.user, got.seq), e);
                let rep = h.audit();
                prop_assert!(rep.passed(), "{}", rep);
            }
            for r in h.ledger().unwrap().rows() {
                if r.applies {
                    prop_assert!(r.holds(), "{:?}", r);
                }
            }
        }
    }
}
