//! Partition heap with exponentially bounded sets.
//!
//! Set `S_i` (1-based) holds fewer than `3 * 2^i` elements and may be empty.
//! A set reaching the bound is pushed whole into `S_{i+1}`; if that set is
//! already large it is pushed on in turn. Delete-min refills an empty `S_1`
//! by pulling small elements up from the first nonempty set, and keeps
//! `l <= 1 + lg n` by folding the last set into the one before it.

use crate::arena::{set_from_keys, Handle, LinkedSet, NodeArena};
use crate::error::HeapError;
use crate::heap::{AddressableHeap, HeapConfig, HeapKind};
use crate::key::{Key, Pivot, UserKey};
use crate::meter::CostMeter;
use crate::pivot::PivotIndex;
use crate::potential::{row, LedgerOp, PotentialLedger};
use crate::select::{min_of, split_by_rank, Selector};
use crate::validation::audit::{check_order, check_traversal};
use crate::validation::AuditReport;

/// The three potential components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExpPotential {
    pub insert: i64,
    pub push: i64,
    pub pull: i64,
}

impl ExpPotential {
    pub fn total(&self) -> i64 {
        self.insert + self.push + self.pull
    }
}

/// `2^e` as `i64`.
fn pow2(e: usize) -> i64 {
    1i64 << e
}

/// Exclusive size bound of set `i` (1-based).
pub fn capacity(i: usize) -> usize {
    3 << i
}

pub struct ExpHeap<K> {
    arena: NodeArena<K>,
    /// `sets[j]` is `S_{j+1}`.
    sets: Vec<LinkedSet>,
    index: PivotIndex<K>,
    n: usize,
    next_seq: u64,
    selector: Selector,
    ledger: Option<PotentialLedger>,
}

impl<K: UserKey> Default for ExpHeap<K> {
    fn default() -> Self {
        Self::with_config(HeapConfig::default())
    }
}

impl<K: UserKey> ExpHeap<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(config: HeapConfig) -> Self {
        ExpHeap {
            arena: NodeArena::new(),
            sets: vec![LinkedSet::new()],
            index: PivotIndex::new(),
            n: 0,
            next_seq: 0,
            selector: Selector::new(config.select),
            ledger: config.track_potential.then(PotentialLedger::new),
        }
    }

    /// Builds `S_1, S_2, ..` from ordered key groups. Pivots are the set
    /// minima; an empty set takes the pivot of the next nonempty one, or
    /// `+inf` at the top. Size bounds are not enforced.
    pub fn with_layout(layout: Vec<Vec<K>>, config: HeapConfig) -> (Self, Vec<Handle>) {
        let mut h = Self::with_config(config);
        h.sets.clear();
        let mut handles = Vec::new();
        let mut pivots = Vec::new();
        let mut pending = 0usize;
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
                    pivots.extend(std::iter::repeat_n(Pivot::At(m), pending + 1));
                    pending = 0;
                }
                None => pending += 1,
            }
        }
        pivots.extend(std::iter::repeat_n(Pivot::PosInf, pending));
        if h.sets.is_empty() {
            h.sets.push(LinkedSet::new());
        }
        h.index = PivotIndex::from_pivots(pivots);
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

    /// `p_2 ..= p_l`.
    pub fn pivots(&self) -> &[Pivot<K>] {
        self.index.as_slice()
    }

    /// User keys of `S_i` (1-based), sorted.
    pub fn set_keys(&self, i: usize) -> Vec<K> {
        let mut v: Vec<K> = self.sets[i - 1]
            .iter(&self.arena)
            .map(|x| self.arena.key(x).user)
            .collect();
        v.sort();
        v
    }

    pub fn potential(&self) -> ExpPotential {
        let mut p = ExpPotential::default();
        let mut prefix = 0i64;
        for (j, s) in self.sets.iter().enumerate() {
            let i = j + 1;
            let size = s.len() as i64;
            prefix += size;
            p.insert += (size - 5 * pow2(i - 1)).max(0);
            p.push += size / pow2(i);
            p.pull += (pow2(i - 1) - prefix).max(0);
        }
        p
    }

    fn snapshot(&self) -> Option<i64> {
        self.ledger.as_ref().map(|_| self.potential().total())
    }

    fn log(
        &mut self,
        op: LedgerOp,
        index: Option<usize>,
        before: Option<i64>,
        bound: i64,
        applies: bool,
        t0: u64,
    ) {
        if let Some(b) = before {
            let after = self.potential().total();
            let actual = self.arena.meter.element_touches() - t0;
            let r = row(op, index, 0, b, after, bound, applies).with_actual(actual);
            self.ledger.as_mut().unwrap().push(r);
        }
    }

    /// Lower pivot of `S_i`; `-inf` for `S_1`.
    fn lower(&self, i: usize) -> Pivot<K> {
        if i == 1 {
            Pivot::NegInf
        } else {
            self.index.as_slice()[i - 2]
        }
    }

    fn set_lower(&mut self, i: usize, p: Pivot<K>) {
        self.index.as_mut_vec()[i - 2] = p;
    }

    /// Appends a detached node to the set its key falls in; returns `i`.
    fn place(&mut self, idx: u32) -> usize {
        let k = self.arena.key(idx);
        let j = self.index.search(&k, &mut self.arena.meter);
        self.sets[j].append(&mut self.arena, idx);
        j + 1
    }

    /// Pushes a set that reached its bound, logging the chain.
    fn push_if_full(&mut self, i: usize) {
        if self.sets[i - 1].len() >= capacity(i) {
            let before = self.snapshot();
            let t0 = self.arena.meter.element_touches();
            let m = self.push_from(i).expect("a full set can always be pushed");
            let bound = -(m as i64) + i as i64 + 3;
            self.log(
                LedgerOp::Push { from: i, to: m },
                Some(i),
                before,
                bound,
                true,
                t0,
            );
        }
    }

    /// Moves all of `S_i` into `S_{i+1}`, recursively pushing on large sets.
    /// Returns the index `m` of the set where the chain stopped.
    ///
    /// The pushed set takes its old lower pivot along, so each level costs
    /// O(1); only `S_1`, whose lower pivot is `-inf`, is scanned for its
    /// minimum.
    pub fn push_from(&mut self, i: usize) -> Result<usize, HeapError> {
        let len = self.sets.get(i.wrapping_sub(1)).map_or(0, LinkedSet::len);
        if i == 0 || len < pow2(i) as usize || len > capacity(i) {
            return Err(HeapError::Precondition(format!(
                "push_from({i}) needs 2^{i} <= |S_{i}| <= 3*2^{i}, found {len}"
            )));
        }
        let mut x = self.sets[i - 1].take();
        let mut xp = if i == 1 {
            let set = x.clone();
            Pivot::At(
                min_of(&mut self.arena, &set)
                    .expect("pushed set is nonempty")
                    .1,
            )
        } else {
            self.lower(i)
        };
        let mut j = i + 1;
        loop {
            debug_assert!(pow2(j - 1) as usize <= x.len() && x.len() <= 3 * pow2(j - 1) as usize);
            self.arena.meter.linked(1);
            if j == self.sets.len() + 1 {
                self.sets.push(x);
                self.index.as_mut_vec().push(xp);
                return Ok(j);
            }
            let old_p = self.lower(j);
            self.set_lower(j, xp);
            if self.sets[j - 1].len() < pow2(j) as usize {
                self.sets[j - 1].concat(&mut self.arena, x);
                return Ok(j);
            }
            x = std::mem::replace(&mut self.sets[j - 1], x);
            xp = old_p;
            j += 1;
        }
    }

    /// Refills the empty `S_i` from the first nonempty set `S_m` above it.
    /// Returns `m` and the largest `i' < m` with `2^{i'-1} < |S_m|` (0 when
    /// every step is a swap).
    pub fn pull(&mut self, i: usize) -> Result<(usize, usize), HeapError> {
        let m = (i + 1..=self.sets.len()).find(|&m| !self.sets[m - 1].is_empty());
        let (true, Some(m)) = (
            i >= 1 && i <= self.sets.len() && self.sets[i - 1].is_empty(),
            m,
        ) else {
            return Err(HeapError::Precondition(format!(
                "pull({i}) needs an empty S_{i} below a nonempty set"
            )));
        };
        let size_m = self.sets[m - 1].len() as i64;
        let split_at = (1..m).rev().find(|&j| pow2(j - 1) < size_m).unwrap_or(0);
        for j in (i..m).rev() {
            let src = j + 1;
            let want = pow2(j - 1) as usize;
            if self.sets[src - 1].len() <= want {
                let moved = self.sets[src - 1].take();
                self.sets[j - 1] = moved;
                self.arena.meter.linked(1);
                let raised = self
                    .index
                    .as_slice()
                    .get(src - 1)
                    .copied()
                    .unwrap_or(Pivot::PosInf);
                self.set_lower(src, raised);
            } else {
                let mut s = self.sets[src - 1].take();
                let (low, high, p) =
                    split_by_rank(&mut self.arena, &mut s, want, &mut self.selector)?;
                self.sets[j - 1] = low;
                self.sets[src - 1] = high;
                self.set_lower(src, Pivot::At(p));
            }
        }
        Ok((m, split_at))
    }

    fn pull_first(&mut self) {
        let before = self.snapshot();
        let t0 = self.arena.meter.element_touches();
        let (m, i) = self.pull(1).expect("a nonempty heap has a nonempty set");
        let bound = -(m as i64) - if i >= 1 { pow2(i - 1) } else { 0 } + 1;
        self.log(LedgerOp::Pull { i, m }, Some(1), before, bound, i >= 1, t0);
    }

    pub fn insert(&mut self, key: K) -> Handle {
        self.arena.meter.begin_op();
        let before = self.snapshot();
        let t0 = self.arena.meter.element_touches();
        let k = Key::new(key, self.next_seq);
        self.next_seq += 1;
        let h = self.arena.alloc(k);
        let i = self.place(h.idx);
        self.n += 1;
        self.log(LedgerOp::Insert, Some(i), before, 2, true, t0);
        self.push_if_full(i);
        h
    }

    /// Scans `S_1` for the minimum, pulling first if it is empty.
    pub fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        self.first_min().map(|(_, k)| k)
    }

    fn first_min(&mut self) -> Result<(u32, Key<K>), HeapError> {
        if self.n == 0 {
            return Err(HeapError::Empty);
        }
        if self.sets[0].is_empty() {
            self.pull_first();
        }
        let s1 = self.sets[0].clone();
        Ok(min_of(&mut self.arena, &s1).expect("S_1 was refilled"))
    }

    pub fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        self.arena.meter.begin_op();
        let (idx, out) = self.first_min()?;
        let before = self.snapshot();
        let t0 = self.arena.meter.element_touches();
        let ell = self.sets.len();
        self.sets[0].remove(&mut self.arena, idx);
        self.arena.release(idx);
        self.n -= 1;
        // l > 1 + lg n  <=>  2^(l-1) > n
        if ell >= 2 && pow2(ell - 1) as u128 > self.n as u128 {
            let last = self.sets.pop().expect("at least two sets");
            self.sets[ell - 2].concat(&mut self.arena, last);
            self.index.as_mut_vec().pop();
            self.arena.meter.linked(1);
        }
        self.log(LedgerOp::DeleteMin, None, before, ell as i64, true, t0);
        Ok(out)
    }

    pub fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        self.arena.meter.begin_op();
        let idx = self.arena.resolve(h)?;
        let old = self.arena.key(idx);
        if key > old.user {
            return Err(HeapError::KeyIncrease);
        }
        let before = self.snapshot();
        let t0 = self.arena.meter.element_touches();
        let from = self.index.search(&old, &mut self.arena.meter);
        self.sets[from].remove(&mut self.arena, idx);
        self.arena.set_key(idx, Key::new(key, old.seq));
        let i = self.place(idx);
        debug_assert!(i <= from + 1);
        self.log(LedgerOp::DecreaseKey, Some(i), before, 2, true, t0);
        self.push_if_full(i);
        Ok(())
    }

    pub fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        self.arena.resolve(h).map(|i| self.arena.key(i))
    }

    pub fn audit(&self) -> AuditReport {
        let mut r = AuditReport::new(HeapKind::Exp);
        let ell = self.sets.len();
        check_traversal(
            &mut r,
            &self.arena,
            self.sets.iter().enumerate().map(|(j, s)| (j + 1, s)),
        );
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
            let bounds: Vec<_> = (1..=ell)
                .map(|i| {
                    let hi = self
                        .index
                        .as_slice()
                        .get(i - 1)
                        .copied()
                        .unwrap_or(Pivot::PosInf);
                    (i, &self.sets[i - 1], self.lower(i), hi)
                })
                .collect();
            check_order(&mut r, &self.arena, &bounds);
        }
        r.record(
            "size_bound",
            match self
                .sets
                .iter()
                .enumerate()
                .find(|(j, s)| s.len() >= capacity(j + 1))
            {
                None => Ok(()),
                Some((j, s)) => Err((
                    Some(j + 1),
                    format!("|S_{}| = {} >= {}", j + 1, s.len(), capacity(j + 1)),
                )),
            },
        );
        // l <= 1 + lg n, i.e. 2^(l-1) <= n; an empty heap keeps one set.
        let count_ok = if self.n == 0 {
            ell == 1
        } else {
            ell <= 64 && pow2(ell - 1) as u128 <= self.n as u128
        };
        r.record(
            "set_count_bound",
            if count_ok {
                Ok(())
            } else {
                Err((Some(ell), format!("{ell} sets for n = {}", self.n)))
            },
        );
        r.set_digest(&(self.n, self.set_sizes()));
        r
    }

    #[cfg(test)]
    pub(crate) fn corrupt_set_size(&mut self, i: usize, len: usize) {
        self.sets[i - 1].corrupt_len(len);
    }
}

impl<K: UserKey> AddressableHeap<K> for ExpHeap<K> {
    fn kind(&self) -> HeapKind {
        HeapKind::Exp
    }

    fn insert(&mut self, key: K) -> Handle {
        ExpHeap::insert(self, key)
    }

    fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        ExpHeap::pop_min(self)
    }

    fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        ExpHeap::find_min(self)
    }

    fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        ExpHeap::decrease_key(self, h, key)
    }

    fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        ExpHeap::key_of(self, h)
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
        ExpHeap::potential(self).total()
    }

    fn ledger(&self) -> Option<&PotentialLedger> {
        self.ledger.as_ref()
    }

    fn audit(&self) -> AuditReport {
        ExpHeap::audit(self)
    }

    fn set_count(&self) -> usize {
        self.sets.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation::lemma_check;
    use proptest::prelude::*;

    fn layout(sets: &[&[i64]]) -> ExpHeap<i64> {
        ExpHeap::with_layout(
            sets.iter().map(|s| s.to_vec()).collect(),
            HeapConfig::tracked(),
        )
        .0
    }

    fn sized(sizes: &[usize]) -> ExpHeap<i64> {
        let mut next = 0i64;
        let sets = sizes
            .iter()
            .map(|&s| {
                let v: Vec<i64> = (next..next + s as i64).collect();
                next += s as i64 + 100;
                v
            })
            .collect();
        ExpHeap::with_layout(sets, HeapConfig::tracked()).0
    }

    fn pivot_user(p: Pivot<i64>) -> Option<i64> {
        match p {
            Pivot::At(k) => Some(k.user),
            _ => None,
        }
    }

    #[test]
    fn sixth_insert_pushes_first_set() {
        let mut h = ExpHeap::with_config(HeapConfig::tracked());
        for k in [9, 4, 7, 5, 8] {
            h.insert(k);
        }
        assert_eq!(h.set_sizes(), vec![5]);
        h.insert(6);
        assert_eq!(h.set_sizes(), vec![0, 6]);
        assert_eq!(pivot_user(h.pivots()[0]), Some(4));
        let rows = h.ledger().unwrap().rows();
        let push = rows.last().unwrap();
        assert_eq!(push.op, LedgerOp::Push { from: 1, to: 2 });
        assert!(lemma_check(h.ledger().unwrap()).passed());
        assert!(h.audit().passed(), "{}", h.audit());
        h.insert(1);
        assert_eq!(h.set_sizes(), vec![1, 6]);
    }

    #[test]
    fn push_concatenates_into_small_set() {
        let mut h = sized(&[6, 3]);
        assert_eq!(h.push_from(1), Ok(2));
        assert_eq!(h.set_sizes(), vec![0, 9]);
        assert!(9 < capacity(2));
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn push_displaces_large_set() {
        let mut h = sized(&[6, 7]);
        let before = h.potential().total();
        assert_eq!(h.push_from(1), Ok(3));
        assert_eq!(h.set_sizes(), vec![0, 6, 7]);
        assert!(h.potential().total() - before <= -3 + 1 + 3);
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn push_rejects_out_of_range_sizes() {
        let mut h = sized(&[1]);
        assert!(matches!(h.push_from(1), Err(HeapError::Precondition(_))));
        assert!(h.push_from(4).is_err());
    }

    #[test]
    fn pull_selects_smallest_from_next_set() {
        let mut h = layout(&[&[], &[4, 7, 2, 9]]);
        assert_eq!(h.pop_min().unwrap().user, 2);
        assert_eq!(h.set_keys(2), vec![4, 7, 9]);
        assert_eq!(pivot_user(h.pivots()[0]), Some(4));
    }

    #[test]
    fn pull_swaps_single_element() {
        let mut h = layout(&[&[], &[5]]);
        assert_eq!(h.pull(1), Ok((2, 0)));
        assert_eq!(h.set_sizes(), vec![1, 0]);
        assert_eq!(h.pivots()[0], Pivot::PosInf);
        assert!(h.audit().check("pivot_sandwich").unwrap().ok);
    }

    #[test]
    fn pull_recurses_through_empty_sets() {
        let mut h = layout(&[&[], &[], &[10, 11, 12, 13, 14]]);
        assert_eq!(h.pull(1), Ok((3, 2)));
        assert_eq!(h.set_keys(1), vec![10]);
        assert_eq!(h.set_keys(2), vec![11]);
        assert_eq!(h.set_keys(3), vec![12, 13, 14]);
        assert_eq!(pivot_user(h.pivots()[1]), Some(12));
        assert_eq!(pivot_user(h.pivots()[0]), Some(11));
        assert!(h.pull(1).is_err());
    }

    #[test]
    fn delete_min_folds_last_set_when_too_many() {
        // Three sets need 4 elements; after one deletion 3 remain.
        let mut h = sized(&[1, 0, 3]);
        assert_eq!(h.pop_min().unwrap().user, 0);
        assert_eq!(h.set_sizes(), vec![0, 3]);
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn delete_min_scans_first_set() {
        let mut h = layout(&[&[4, 2, 7]]);
        assert_eq!(h.pop_min().unwrap().user, 2);
        assert_eq!(h.set_keys(1), vec![4, 7]);
        h.pop_min().unwrap();
        h.pop_min().unwrap();
        assert_eq!(h.pop_min(), Err(HeapError::Empty));
    }

    #[test]
    fn potential_examples() {
        let h = sized(&[0, 0, 0]);
        assert_eq!(
            h.potential(),
            ExpPotential {
                insert: 0,
                push: 0,
                pull: 7
            }
        );
        let h = sized(&[5]);
        assert_eq!(
            h.potential(),
            ExpPotential {
                insert: 0,
                push: 2,
                pull: 0
            }
        );
        let h = sized(&[0, 11]);
        assert_eq!(
            h.potential(),
            ExpPotential {
                insert: 1,
                push: 2,
                pull: 1
            }
        );
    }

    #[test]
    fn decrease_key_moves_to_first_set() {
        let (mut h, hs) = ExpHeap::with_layout(
            vec![vec![1], vec![10, 11], vec![20, 21, 22]],
            HeapConfig::tracked(),
        );
        h.decrease_key(hs[5], 0).unwrap();
        assert_eq!(h.set_keys(1), vec![0, 1]);
        h.decrease_key(hs[4], 15).unwrap();
        assert_eq!(h.set_keys(2), vec![10, 11, 15]);
        assert_eq!(h.decrease_key(hs[4], 16), Err(HeapError::KeyIncrease));
        assert!(h.audit().passed(), "{}", h.audit());
    }

    #[test]
    fn audit_flags_corrupted_set() {
        let mut h = ExpHeap::new();
        for k in 0..40 {
            h.insert(k);
        }
        h.corrupt_set_size(2, 1);
        let rep = h.audit();
        let f = rep.first_failure().unwrap();
        assert_eq!((f.name, f.index), ("size_traversal", Some(2)));
    }

    proptest! {
        #[test]
        fn random_ops_keep_invariants_and_order(ops in proptest::collection::vec((0u8..4, -1000i64..1000), 1..400)) {
            let mut h = ExpHeap::with_config(HeapConfig::tracked());
            let mut live: Vec<Handle> = Vec::new();
            let mut model = std::collections::BTreeSet::new();
            for (kind, k) in ops {
                match kind {
                    0 | 1 => {
                        let hd = h.insert(k);
                        let key = h.key_of(hd).unwrap();
                        model.insert((key.user, key.seq));
                        live.push(hd);
                    }
                    2 => {
                        let want = model.pop_first();
                        let got = h.pop_min().ok().map(|x| (x.user, x.seq));
                        prop_assert_eq!(got, want);
                    }
                    _ => {
                        if let Some(&hd) = live.get(k.unsigned_abs() as usize % live.len().max(1)) {
                            if let Ok(key) = h.key_of(hd) {
                                model.remove(&(key.user, key.seq));
                                h.decrease_key(hd, key.user - 9).unwrap();
                                model.insert((key.user - 9, key.seq));
                            }
                        }
                    }
                }
                let rep = h.audit();
                prop_assert!(rep.passed(), "{}", rep);
            }
            for r in h.ledger().unwrap().rows() {
                if let LedgerOp::Pull { i, m } = r.op {
                    prop_assert!(r.delta <= pull_sum_bound(i, m), "{:?}", r);
                    prop_assert!(r.holds() || i <= 2, "{:?}", r);
                } else {
                    prop_assert!(r.holds(), "{:?}", r);
                }
            }
        }
    }

    /// Pull potential drop summed level by level: `2^(j-1)` for each selecting
    /// level `j <= i` and at least one for each swapping level below `m`.
    fn pull_sum_bound(i: usize, m: usize) -> i64 {
        -(pow2(i) - 1) - (m as i64 - 1 - i as i64)
    }

    #[test]
    fn smallest_pull_misses_stated_bound_by_one() {
        let mut h = layout(&[&[], &[3, 1, 2]]);
        h.pop_min().unwrap();
        let r = &h.ledger().unwrap().rows()[0];
        assert_eq!(r.op, LedgerOp::Pull { i: 1, m: 2 });
        assert_eq!((r.delta, r.bound), (-1, -2));
        assert_eq!(r.delta, pull_sum_bound(1, 2));
        for i in 3..20 {
            assert!(pull_sum_bound(i, i + 1) <= -(i as i64 + 1) - pow2(i - 1) + 1);
        }
    }
}
