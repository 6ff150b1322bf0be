//! Fibonacci-banded partition heap.
//!
//! Sets live in slots numbered from 3. A nonempty slot `i > 3` holds between
//! `F_i` and `F_{i+3}` elements; slot 3 has no lower bound. At most eight
//! empty slots and at most two nonempty slots may follow each other. A set
//! reaching a band edge is moved or rebalanced with a neighbour, runs of
//! three nonempty slots are merged downward and runs of nine empty slots are
//! refilled by splitting the set above them.

use crate::arena::{set_from_keys, Handle, LinkedSet, NodeArena};
use crate::error::HeapError;
use crate::heap::{AddressableHeap, HeapConfig, HeapKind};
use crate::key::{Key, Pivot, UserKey};
use crate::meter::CostMeter;
use crate::pivot::search_slice;
use crate::potential::{row, LedgerOp, LedgerRow, PotentialLedger};
use crate::select::{min_of, split_by_rank, Selector};
use crate::validation::audit::{check_order, check_traversal};
use crate::validation::AuditReport;

/// Lowest slot index.
pub const FIRST: usize = 3;
const MAX_EMPTY_RUN: usize = 8;
const MAX_NONEMPTY_RUN: usize = 2;

/// `F_0 ..= F_92`, with `F_0 = 0` and `F_1 = F_2 = 1`.
#[derive(Debug, Clone)]
pub struct FibTable {
    f: Vec<u64>,
}

impl Default for FibTable {
    fn default() -> Self {
        let mut f = vec![0u64, 1];
        while f.len() < 93 {
            let n = f.len();
            f.push(f[n - 1] + f[n - 2]);
        }
        FibTable { f }
    }
}

impl FibTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `F_i`; negative indices count as 0.
    pub fn get(&self, i: i64) -> u64 {
        if i < 0 {
            0
        } else {
            self.f[i as usize]
        }
    }

    pub fn at(&self, i: usize) -> usize {
        self.f[i] as usize
    }
}

#[derive(Debug, Clone)]
struct Slot<K> {
    set: LinkedSet,
    /// Lower bound of the set; ignored for slot 3 and for empty slots.
    pivot: Pivot<K>,
}

impl<K> Slot<K> {
    fn empty() -> Self {
        Slot {
            set: LinkedSet::new(),
            pivot: Pivot::NegInf,
        }
    }
}

/// The three potential components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FhPotential {
    pub nonempty: i64,
    pub size: i64,
    pub up: i64,
}

impl FhPotential {
    pub fn total(&self) -> i64 {
        self.nonempty + self.size + self.up
    }
}

pub struct FhTngHeap<K> {
    arena: NodeArena<K>,
    /// Indexed by slot number; entries below `FIRST` are unused.
    slots: Vec<Slot<K>>,
    /// `(slot, pivot)` of every nonempty slot above 3, in slot order.
    index: Vec<(usize, Pivot<K>)>,
    index_pivots: Vec<Pivot<K>>,
    index_dirty: bool,
    n: usize,
    next_seq: u64,
    fib: FibTable,
    selector: Selector,
    ledger: Option<PotentialLedger>,
}

impl<K: UserKey> Default for FhTngHeap<K> {
    fn default() -> Self {
        Self::with_config(HeapConfig::default())
    }
}

impl<K: UserKey> FhTngHeap<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(config: HeapConfig) -> Self {
        FhTngHeap {
            arena: NodeArena::new(),
            slots: (0..=FIRST).map(|_| Slot::empty()).collect(),
            index: Vec::new(),
            index_pivots: Vec::new(),
            index_dirty: false,
            n: 0,
            next_seq: 0,
            fib: FibTable::new(),
            selector: Selector::new(config.select),
            ledger: config.track_potential.then(PotentialLedger::new),
        }
    }

    /// Places each `(slot, keys)` as given, pivots at the set minima. No
    /// invariant is restored; callers build states for the restoring
    /// operations.
    pub fn with_layout(layout: Vec<(usize, Vec<K>)>, config: HeapConfig) -> (Self, Vec<Handle>) {
        let mut h = Self::with_config(config);
        let mut handles = Vec::new();
        for (i, keys) in layout {
            assert!(i >= FIRST, "slots start at {FIRST}");
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
            h.ensure(i);
            h.n += set.len();
            let slot = &mut h.slots[i];
            slot.set.concat(&mut h.arena, set);
            if let (Some(m), true) = (min, i > FIRST) {
                slot.pivot = Pivot::At(m);
            }
            handles.extend(hs);
        }
        h.index_dirty = true;
        h.arena.meter.reset();
        (h, handles)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn fib(&self) -> &FibTable {
        &self.fib
    }

    /// Size of slot `i` (0 when beyond the top).
    pub fn slot_len(&self, i: usize) -> usize {
        self.slots.get(i).map_or(0, |s| s.set.len())
    }

    /// `(slot, size)` of every nonempty slot.
    pub fn occupancy(&self) -> Vec<(usize, usize)> {
        (FIRST..self.slots.len())
            .filter(|&i| !self.slots[i].set.is_empty())
            .map(|i| (i, self.slots[i].set.len()))
            .collect()
    }

    pub fn slot_pivot(&self, i: usize) -> Option<Pivot<K>> {
        self.slots
            .get(i)
            .filter(|s| !s.set.is_empty() && i > FIRST)
            .map(|s| s.pivot)
    }

    /// User keys of slot `i`, sorted.
    pub fn slot_keys(&self, i: usize) -> Vec<K> {
        let mut v: Vec<K> = match self.slots.get(i) {
            Some(s) => s
                .set
                .iter(&self.arena)
                .map(|x| self.arena.key(x).user)
                .collect(),
            None => Vec::new(),
        };
        v.sort();
        v
    }

    fn ensure(&mut self, i: usize) {
        while self.slots.len() <= i {
            self.slots.push(Slot::empty());
        }
    }

    fn occupied(&self, i: usize) -> bool {
        i >= FIRST && i < self.slots.len() && !self.slots[i].set.is_empty()
    }

    fn trim(&mut self) {
        while self.slots.len() > FIRST + 1 && self.slots.last().is_some_and(|s| s.set.is_empty()) {
            self.slots.pop();
        }
    }

    fn fib_nominal(&self, i: usize, back: i64) -> i64 {
        (self.fib.get(i as i64 - back) as i64).max(1)
    }

    pub fn potential(&self) -> FhPotential {
        let mut p = FhPotential::default();
        let mut below = 0i64;
        for i in FIRST..self.slots.len() {
            let s = self.slots[i].set.len() as i64;
            if s > 0 {
                p.nonempty += 1;
                p.size += self.size_potential(i, s);
                p.up += (self.fib.get(i as i64 - 3) as i64 - below).max(0);
            }
            below += s;
        }
        p
    }

    fn size_potential(&self, i: usize, s: i64) -> i64 {
        let f = |d: usize| self.fib.at(i + d) as i64;
        if i == FIRST && s < f(0) {
            0
        } else if s < f(1) {
            f(1) - s
        } else if s <= f(2) {
            0
        } else {
            s - f(2)
        }
    }

    pub fn potential_total(&self) -> i64 {
        self.potential().total()
    }

    fn snapshot(&self) -> Option<FhPotential> {
        self.ledger.as_ref().map(|_| self.potential())
    }

    fn log_step(
        &mut self,
        op: LedgerOp,
        i: usize,
        nominal: i64,
        before: Option<FhPotential>,
        applies: bool,
        touches: u64,
    ) {
        if let Some(b) = before {
            let after = self.potential().total();
            let r = row(op, Some(i), nominal, b.total(), after, 0, applies).with_actual(touches);
            self.ledger.as_mut().unwrap().push(r);
        }
    }

    fn touches(&self) -> u64 {
        self.arena.meter.element_touches()
    }

    fn rebuild_index(&mut self) {
        if !self.index_dirty {
            return;
        }
        self.index.clear();
        for i in FIRST + 1..self.slots.len() {
            if !self.slots[i].set.is_empty() {
                self.index.push((i, self.slots[i].pivot));
            }
        }
        self.index_pivots = self.index.iter().map(|&(_, p)| p).collect();
        self.index_dirty = false;
    }

    /// Slot whose interval contains `k`.
    fn locate(&mut self, k: &Key<K>) -> usize {
        self.rebuild_index();
        let (c, probes) = search_slice(&self.index_pivots, k);
        self.arena.meter.record_search(probes);
        if c == 0 {
            FIRST
        } else {
            self.index[c - 1].0
        }
    }

    fn full(&self, i: usize) -> bool {
        self.slot_len(i) >= self.fib.at(i + 3)
    }

    fn underfull(&self, i: usize) -> bool {
        i > FIRST && self.occupied(i) && self.slot_len(i) <= self.fib.at(i)
    }

    fn set_min_pivot(&mut self, i: usize) {
        let set = self.slots[i].set.clone();
        if let Some((_, k)) = min_of(&mut self.arena, &set) {
            self.slots[i].pivot = Pivot::At(k);
        }
    }

    fn move_slot(&mut self, from: usize, to: usize) {
        let set = self.slots[from].set.take();
        let pivot = self.slots[from].pivot;
        self.ensure(to);
        self.slots[to].set = set;
        self.slots[to].pivot = pivot;
        self.slots[from].pivot = Pivot::NegInf;
        self.arena.meter.linked(1);
        self.index_dirty = true;
    }

    fn precondition(msg: String) -> HeapError {
        HeapError::Precondition(msg)
    }

    /// Moves the full set of slot `i` into the empty slot `i + 1`.
    pub fn overflow_down(&mut self, i: usize) -> Result<(), HeapError> {
        if i < FIRST || !self.occupied(i) || !self.full(i) || self.occupied(i + 1) {
            return Err(Self::precondition(format!(
                "overflow_down({i}) needs a full slot {i} and an empty slot {}",
                i + 1
            )));
        }
        let before = self.snapshot();
        let t0 = self.touches();
        self.move_slot(i, i + 1);
        if i == FIRST {
            // Slot 3 carries no pivot of its own.
            self.set_min_pivot(i + 1);
        }
        let t = self.touches() - t0;
        self.log_step(LedgerOp::OverflowDown, i, 1, before, true, t);
        Ok(())
    }

    /// Combines full slot `i` with nonempty slot `i + 1` and moves the
    /// `|S_i|` largest elements into the empty slot `i + 2`.
    pub fn overflow_thru(&mut self, i: usize) -> Result<(), HeapError> {
        if i < FIRST
            || !self.occupied(i)
            || !self.full(i)
            || !self.occupied(i + 1)
            || self.occupied(i + 2)
        {
            return Err(Self::precondition(format!(
                "overflow_thru({i}) needs a full slot {i}, nonempty slot {} and empty slot {}",
                i + 1,
                i + 2
            )));
        }
        let before = self.snapshot();
        let t0 = self.touches();
        let keep = self.slot_len(i + 1);
        let moved = self.slots[i].set.take();
        self.slots[i].pivot = Pivot::NegInf;
        let mut combined = self.slots[i + 1].set.take();
        combined.concat(&mut self.arena, moved);
        let (low, high, pivot) =
            split_by_rank(&mut self.arena, &mut combined, keep, &mut self.selector)?;
        self.ensure(i + 2);
        self.slots[i + 1].set = low;
        self.set_min_pivot(i + 1);
        self.slots[i + 2].set = high;
        self.slots[i + 2].pivot = Pivot::At(pivot);
        self.index_dirty = true;
        let t = self.touches() - t0;
        let nominal = self.fib_nominal(i, 4);
        self.log_step(LedgerOp::OverflowThru, i, nominal, before, i >= 5, t);
        Ok(())
    }

    /// Moves the underfull set of slot `i` into the empty slot `i - 1`.
    pub fn underflow_up(&mut self, i: usize) -> Result<(), HeapError> {
        if i <= FIRST || !self.underfull(i) || self.occupied(i - 1) {
            return Err(Self::precondition(format!(
                "underflow_up({i}) needs an underfull slot {i} and an empty slot {}",
                i - 1
            )));
        }
        let before = self.snapshot();
        let t0 = self.touches();
        self.move_slot(i, i - 1);
        let t = self.touches() - t0;
        self.log_step(LedgerOp::UnderflowUp, i, 1, before, i >= 6, t);
        Ok(())
    }

    /// Combines underfull slot `i` with nonempty slot `i - 1` and moves the
    /// `|S_i|` smallest elements into the empty slot `i - 2`.
    pub fn underflow_thru(&mut self, i: usize) -> Result<(), HeapError> {
        if i < FIRST + 2 || !self.underfull(i) || !self.occupied(i - 1) || self.occupied(i - 2) {
            return Err(Self::precondition(format!(
                "underflow_thru({i}) needs an underfull slot {i}, nonempty slot {} and empty slot {}",
                i - 1,
                i - 2
            )));
        }
        let before = self.snapshot();
        let t0 = self.touches();
        let take = self.slot_len(i);
        let moved = self.slots[i].set.take();
        self.slots[i].pivot = Pivot::NegInf;
        let mut combined = self.slots[i - 1].set.take();
        combined.concat(&mut self.arena, moved);
        let (low, high, pivot) =
            split_by_rank(&mut self.arena, &mut combined, take, &mut self.selector)?;
        self.slots[i - 1].set = high;
        self.slots[i - 1].pivot = Pivot::At(pivot);
        self.slots[i - 2].set = low;
        if i - 2 > FIRST {
            self.set_min_pivot(i - 2);
        }
        self.index_dirty = true;
        let t = self.touches() - t0;
        let nominal = self.fib_nominal(i, 6);
        self.log_step(LedgerOp::UnderflowThru, i, nominal, before, true, t);
        Ok(())
    }

    /// Slot 4 underfull above a nonempty slot 3: there is no slot 2 to
    /// rebalance into, so slot 4 is appended to slot 3.
    fn underflow_fold(&mut self) {
        let before = self.snapshot();
        let t0 = self.touches();
        let moved = self.slots[FIRST + 1].set.take();
        self.slots[FIRST + 1].pivot = Pivot::NegInf;
        self.slots[FIRST].set.concat(&mut self.arena, moved);
        self.index_dirty = true;
        let t = self.touches() - t0;
        self.log_step(LedgerOp::UnderflowFold, FIRST + 1, 1, before, false, t);
    }

    /// With slots `i - 2`, `i - 1`, `i` nonempty and `i + 1` empty, moves
    /// `S_{i-1}` and `S_i` concatenated into slot `i + 1`.
    pub fn merge_down(&mut self, i: usize) -> Result<(), HeapError> {
        if i < FIRST + 2
            || !self.occupied(i - 2)
            || !self.occupied(i - 1)
            || !self.occupied(i)
            || self.occupied(i + 1)
        {
            return Err(Self::precondition(format!(
                "merge_down({i}) needs nonempty slots {}..={i} and an empty slot {}",
                i - 2,
                i + 1
            )));
        }
        let before = self.snapshot();
        let t0 = self.touches();
        let pivot = self.slots[i - 1].pivot;
        let mut set = self.slots[i - 1].set.take();
        let upper = self.slots[i].set.take();
        set.concat(&mut self.arena, upper);
        self.slots[i - 1].pivot = Pivot::NegInf;
        self.slots[i].pivot = Pivot::NegInf;
        self.ensure(i + 1);
        self.slots[i + 1].set = set;
        self.slots[i + 1].pivot = pivot;
        self.index_dirty = true;
        let t = self.touches() - t0;
        self.log_step(LedgerOp::MergeDown, i, 1, before, true, t);
        Ok(())
    }

    /// Sizes `(a, b)` for slots `i - 2` and `i - 1` when splitting a set of
    /// size `s` out of slot `i`.
    pub fn split_sizes(&self, i: usize, s: usize) -> Option<(usize, usize)> {
        let f = |d: usize| self.fib.at(d);
        let j = (0..3).find(|&j| f(i + j) <= s && s <= f(i + j + 1))?;
        let r = s - f(i + j);
        let b = f(i + j - 1) + r.min(f(i + j - 2));
        Some((s - b, b))
    }

    /// With slots `i - 9 .. i - 1` empty (slot 2 counts as empty), splits
    /// slot `i` into slots `i - 2` (smaller keys) and `i - 1`.
    pub fn split_up(&mut self, i: usize) -> Result<(), HeapError> {
        let lowest_empty = i.saturating_sub(9);
        let gap_ok = i >= 11 && (lowest_empty.max(FIRST)..i).all(|j| !self.occupied(j));
        let sizes = self.split_sizes(i, self.slot_len(i));
        let (Some((a, _)), true, true) = (sizes, gap_ok, self.occupied(i)) else {
            return Err(Self::precondition(format!(
                "split_up({i}) needs nonempty slot {i} within its band and nine empty slots below"
            )));
        };
        let before = self.snapshot();
        let t0 = self.touches();
        let mut set = self.slots[i].set.take();
        self.slots[i].pivot = Pivot::NegInf;
        let (low, high, pivot) = split_by_rank(&mut self.arena, &mut set, a, &mut self.selector)?;
        self.slots[i - 1].set = high;
        self.slots[i - 1].pivot = Pivot::At(pivot);
        self.slots[i - 2].set = low;
        self.set_min_pivot(i - 2);
        self.index_dirty = true;
        let t = self.touches() - t0;
        let nominal = self.fib_nominal(i, 6);
        self.log_step(LedgerOp::SplitUp, i, nominal, before, true, t);
        Ok(())
    }

    /// Next restoring step, lowest slot first: band edges, then runs of
    /// three nonempty slots, then runs of nine empty slots.
    fn next_fix(&self) -> Option<(LedgerOp, usize)> {
        let top = self.slots.len();
        for i in FIRST..top {
            if !self.occupied(i) {
                continue;
            }
            if self.full(i) {
                if !self.occupied(i + 1) {
                    return Some((LedgerOp::OverflowDown, i));
                }
                if !self.occupied(i + 2) {
                    return Some((LedgerOp::OverflowThru, i));
                }
            } else if self.underfull(i) {
                if !self.occupied(i - 1) {
                    return Some((LedgerOp::UnderflowUp, i));
                }
                if i == FIRST + 1 {
                    return Some((LedgerOp::UnderflowFold, i));
                }
                if !self.occupied(i - 2) {
                    return Some((LedgerOp::UnderflowThru, i));
                }
            }
        }
        let mut run = 0;
        for i in FIRST..=top {
            if self.occupied(i) {
                run += 1;
            } else {
                if run > MAX_NONEMPTY_RUN {
                    return Some((LedgerOp::MergeDown, i - 1));
                }
                run = 0;
            }
        }
        // The leading run includes the nonexistent slot 2.
        let mut empties = 1;
        for i in FIRST..top {
            if self.occupied(i) {
                if empties > MAX_EMPTY_RUN {
                    return Some((LedgerOp::SplitUp, i));
                }
                empties = 0;
            } else {
                empties += 1;
            }
        }
        None
    }

    /// Applies restoring steps until both structural invariants and all
    /// size bands hold.
    pub fn restore(&mut self) {
        let cap = 4 * self.slots.len() + 16;
        let mut steps = 0;
        while let Some((op, i)) = self.next_fix() {
            steps += 1;
            assert!(
                steps <= cap,
                "restore did not converge after {cap} steps at slot {i}"
            );
            let r = match op {
                LedgerOp::OverflowDown => self.overflow_down(i),
                LedgerOp::OverflowThru => self.overflow_thru(i),
                LedgerOp::UnderflowUp => self.underflow_up(i),
                LedgerOp::UnderflowThru => self.underflow_thru(i),
                LedgerOp::UnderflowFold => {
                    self.underflow_fold();
                    Ok(())
                }
                LedgerOp::MergeDown => self.merge_down(i),
                LedgerOp::SplitUp => self.split_up(i),
                _ => unreachable!(),
            };
            r.expect("restoring step chosen with its precondition met");
        }
        self.trim();
    }

    fn push_row(&mut self, r: LedgerRow) {
        if let Some(l) = self.ledger.as_mut() {
            l.push(r);
        }
    }

    pub fn insert(&mut self, key: K) -> Handle {
        self.arena.meter.begin_op();
        let before = self.snapshot();
        let k = Key::new(key, self.next_seq);
        self.next_seq += 1;
        let h = self.arena.alloc(k);
        let i = self.locate(&k);
        let was_empty = !self.occupied(i);
        self.slots[i].set.append(&mut self.arena, h.idx);
        self.n += 1;
        if let Some(b) = before {
            let after = self.potential().total();
            self.push_row(row(LedgerOp::Insert, Some(i), 0, b.total(), after, 1, true));
        }
        if was_empty || self.full(i) {
            self.index_dirty |= was_empty;
            self.restore();
        }
        h
    }

    fn smallest_occupied(&self) -> Option<usize> {
        (FIRST..self.slots.len()).find(|&i| self.occupied(i))
    }

    pub fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        let j = self.smallest_occupied().ok_or(HeapError::Empty)?;
        let set = self.slots[j].set.clone();
        Ok(min_of(&mut self.arena, &set).expect("slot is nonempty").1)
    }

    pub fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        self.arena.meter.begin_op();
        let j = self.smallest_occupied().ok_or(HeapError::Empty)?;
        let before = self.snapshot();
        let set = self.slots[j].set.clone();
        let (idx, out) = min_of(&mut self.arena, &set).expect("slot is nonempty");
        self.slots[j].set.remove(&mut self.arena, idx);
        self.arena.release(idx);
        self.n -= 1;
        if let Some(b) = before {
            let after = self.potential().total();
            let bound = b.nonempty + 1;
            self.push_row(row(
                LedgerOp::DeleteMin,
                Some(j),
                0,
                b.total(),
                after,
                bound,
                true,
            ));
        }
        if !self.occupied(j) {
            self.index_dirty = true;
        }
        self.restore();
        Ok(out)
    }

    pub fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        self.arena.meter.begin_op();
        let idx = self.arena.resolve(h)?;
        let old = self.arena.key(idx);
        if key > old.user {
            return Err(HeapError::KeyIncrease);
        }
        let p0 = self.snapshot();
        let j = self.locate(&old);
        self.slots[j].set.remove(&mut self.arena, idx);
        let p1 = self.snapshot();
        if !self.occupied(j) {
            self.index_dirty = true;
        }
        if !self.occupied(j) || self.underfull(j) {
            self.restore();
        }

        let p2 = self.snapshot();
        let new = Key::new(key, old.seq);
        self.arena.set_key(idx, new);
        let m = self.locate(&new);
        let was_empty = !self.occupied(m);
        self.slots[m].set.append(&mut self.arena, idx);
        let p3 = self.snapshot();
        if let (Some(a), Some(b), Some(c), Some(d)) = (p0, p1, p2, p3) {
            let delta = (b.total() - a.total()) + (d.total() - c.total());
            let up = (b.up - a.up) + (d.up - c.up);
            for (op, delta, bound) in [
                (LedgerOp::DecreaseKey, delta, 2),
                (LedgerOp::DecreaseKeyUp, up, 0),
            ] {
                self.push_row(LedgerRow {
                    op,
                    index: Some(m),
                    nominal: 0,
                    phi_before: a.total(),
                    phi_after: a.total() + delta,
                    delta,
                    bound,
                    applies: true,
                    actual: 0,
                });
            }
        }
        if was_empty || self.full(m) {
            self.index_dirty |= was_empty;
            self.restore();
        }
        Ok(())
    }

    pub fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        self.arena.resolve(h).map(|i| self.arena.key(i))
    }

    pub fn audit(&self) -> AuditReport {
        let mut r = AuditReport::new(HeapKind::Fhtng);
        check_traversal(
            &mut r,
            &self.arena,
            (FIRST..self.slots.len()).map(|i| (i, &self.slots[i].set)),
        );
        let total: usize = self.slots.iter().map(|s| s.set.len()).sum();
        r.record(
            "element_count",
            if total == self.n {
                Ok(())
            } else {
                Err((None, format!("n = {} but slots hold {}", self.n, total)))
            },
        );

        let mut bands = Ok(());
        for (i, s) in self.occupancy() {
            let lo = if i == FIRST { 1 } else { self.fib.at(i) };
            let hi = self.fib.at(i + 3);
            if s < lo || s > hi {
                bands = Err((Some(i), format!("size {s} outside [{lo}, {hi}]")));
                break;
            }
        }
        r.record("fibonacci_bands", bands);

        let mut runs = Ok(());
        let mut run = 0;
        for i in FIRST..self.slots.len() {
            run = if self.occupied(i) { run + 1 } else { 0 };
            if run > MAX_NONEMPTY_RUN {
                runs = Err((Some(i), format!("{run} nonempty slots in a row")));
                break;
            }
        }
        r.record("consecutive_nonempty", runs);

        let mut gaps = Ok(());
        let mut empties = 1;
        for i in FIRST..self.slots.len() {
            if self.occupied(i) {
                if empties > MAX_EMPTY_RUN {
                    gaps = Err((Some(i), format!("{empties} empty slots below slot {i}")));
                    break;
                }
                empties = 0;
            } else {
                empties += 1;
            }
        }
        r.record("consecutive_empty", gaps);

        let occ = self.occupancy();
        let mut sorted = Ok(());
        let mut prev: Option<(usize, Pivot<K>)> = None;
        for &(i, _) in occ.iter().filter(|&&(i, _)| i > FIRST) {
            let p = self.slots[i].pivot;
            if matches!(p, Pivot::NegInf | Pivot::PosInf) {
                sorted = Err((Some(i), "nonempty slot lacks a pivot".into()));
                break;
            }
            if let Some((j, q)) = prev {
                if q > p {
                    sorted = Err((
                        Some(i),
                        format!("pivot of slot {i} below pivot of slot {j}"),
                    ));
                    break;
                }
            }
            prev = Some((i, p));
        }
        r.record("pivots_sorted", sorted);

        let bounds: Vec<_> = occ
            .iter()
            .enumerate()
            .map(|(n, &(i, _))| {
                let lo = if i == FIRST {
                    Pivot::NegInf
                } else {
                    self.slots[i].pivot
                };
                let hi = occ
                    .get(n + 1)
                    .map_or(Pivot::PosInf, |&(j, _)| self.slots[j].pivot);
                (i, &self.slots[i].set, lo, hi)
            })
            .collect();
        check_order(&mut r, &self.arena, &bounds);

        if !self.index_dirty {
            let fresh: Vec<(usize, Pivot<K>)> = occ
                .iter()
                .filter(|&&(i, _)| i > FIRST)
                .map(|&(i, _)| (i, self.slots[i].pivot))
                .collect();
            r.record(
                "search_index",
                if fresh == self.index {
                    Ok(())
                } else {
                    Err((None, "stale slot index".into()))
                },
            );
        }
        r.set_digest(&occ);
        r
    }

    #[cfg(test)]
    pub(crate) fn corrupt_slot_size(&mut self, i: usize, len: usize) {
        self.slots[i].set.corrupt_len(len);
    }
}

impl<K: UserKey> AddressableHeap<K> for FhTngHeap<K> {
    fn kind(&self) -> HeapKind {
        HeapKind::Fhtng
    }

    fn insert(&mut self, key: K) -> Handle {
        FhTngHeap::insert(self, key)
    }

    fn pop_min(&mut self) -> Result<Key<K>, HeapError> {
        FhTngHeap::pop_min(self)
    }

    fn find_min(&mut self) -> Result<Key<K>, HeapError> {
        FhTngHeap::find_min(self)
    }

    fn decrease_key(&mut self, h: Handle, key: K) -> Result<(), HeapError> {
        FhTngHeap::decrease_key(self, h, key)
    }

    fn key_of(&self, h: Handle) -> Result<Key<K>, HeapError> {
        FhTngHeap::key_of(self, h)
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
        self.potential_total()
    }

    fn ledger(&self) -> Option<&PotentialLedger> {
        self.ledger.as_ref()
    }

    fn audit(&self) -> AuditReport {
        FhTngHeap::audit(self)
    }

    fn set_count(&self) -> usize {
        self.slots.len() - FIRST
    }
}
