//! Linear-time selection and rank-based splitting of linked sets.
//!
//! Deterministic selection is median-of-medians with groups of five. The
//! randomized variant is a seeded quickselect. Both return the element of a
//! given rank, which is unique because live keys are distinct.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arena::{LinkedSet, NodeArena};
use crate::error::HeapError;
use crate::key::Key;
use crate::meter::CostMeter;

/// Which selection algorithm a heap uses for its splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectMode {
    #[default]
    Deterministic,
    Randomized {
        seed: u64,
    },
}

/// Selection strategy plus the PRNG state of the randomized mode.
#[derive(Debug, Clone)]
pub struct Selector {
    mode: SelectMode,
    rng: ChaCha8Rng,
}

impl Default for Selector {
    fn default() -> Self {
        Selector::new(SelectMode::Deterministic)
    }
}

impl Selector {
    pub fn new(mode: SelectMode) -> Self {
        let seed = match mode {
            SelectMode::Deterministic => 0,
            SelectMode::Randomized { seed } => seed,
        };
        Selector {
            mode,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn mode(&self) -> SelectMode {
        self.mode
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self.mode, SelectMode::Randomized { .. })
    }

    /// Returns the element of 0-based rank `k` and leaves `v` permuted.
    pub fn select_slice<T: Ord + Copy>(
        &mut self,
        v: &mut [T],
        k: usize,
        meter: &mut CostMeter,
    ) -> T {
        let mut touches = 0;
        let out = match self.mode {
            SelectMode::Deterministic => median_of_medians(v, k, &mut touches),
            SelectMode::Randomized { .. } => quickselect(v, k, &mut self.rng, &mut touches),
        };
        meter.selected(touches);
        meter.compare(touches);
        out
    }

    pub(crate) fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn insertion_sort<T: Ord + Copy>(v: &mut [T]) {
    for i in 1..v.len() {
        let x = v[i];
        let mut j = i;
        while j > 0 && v[j - 1] > x {
            v[j] = v[j - 1];
            j -= 1;
        }
        v[j] = x;
    }
}

/// Three-way partition around `pivot`; returns `(lt, gt)` such that
/// `v[..lt] < pivot`, `v[lt..gt] == pivot`, `v[gt..] > pivot`.
fn partition3<T: Ord + Copy>(v: &mut [T], pivot: T) -> (usize, usize) {
    let mut lt = 0;
    let mut i = 0;
    let mut gt = v.len();
    while i < gt {
        match v[i].cmp(&pivot) {
            std::cmp::Ordering::Less => {
                v.swap(lt, i);
                lt += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                gt -= 1;
                v.swap(i, gt);
            }
            std::cmp::Ordering::Equal => i += 1,
        }
    }
    (lt, gt)
}

/// Median-of-medians selection of 0-based rank `k`. `touches` accumulates the
/// number of element visits (group sorting plus partitioning at every level).
pub fn median_of_medians<T: Ord + Copy>(v: &mut [T], k: usize, touches: &mut u64) -> T {
    assert!(k < v.len(), "rank out of range");
    let mut v = v;
    let mut k = k;
    loop {
        let n = v.len();
        if n <= 5 {
            insertion_sort(v);
            *touches += n as u64;
            return v[k];
        }
        let groups = n.div_ceil(5);
        for g in 0..groups {
            let lo = 5 * g;
            let hi = (lo + 5).min(n);
            insertion_sort(&mut v[lo..hi]);
            v.swap(g, lo + (hi - lo) / 2);
        }
        *touches += n as u64;
        let pivot = median_of_medians(&mut v[..groups], groups / 2, touches);
        let (lt, gt) = partition3(v, pivot);
        *touches += n as u64;
        if k < lt {
            v = &mut v[..lt];
        } else if k < gt {
            return pivot;
        } else {
            k -= gt;
            v = &mut v[gt..];
        }
    }
}

/// Quickselect with uniformly random pivots.
pub fn quickselect<T: Ord + Copy, R: Rng>(
    v: &mut [T],
    k: usize,
    rng: &mut R,
    touches: &mut u64,
) -> T {
    assert!(k < v.len(), "rank out of range");
    let mut v = v;
    let mut k = k;
    loop {
        let n = v.len();
        if n <= 5 {
            insertion_sort(v);
            *touches += n as u64;
            return v[k];
        }
        let pivot = v[rng.gen_range(0..n)];
        let (lt, gt) = partition3(v, pivot);
        *touches += n as u64;
        if k < lt {
            v = &mut v[..lt];
        } else if k < gt {
            return pivot;
        } else {
            k -= gt;
            v = &mut v[gt..];
        }
    }
}

fn collect_keys<K: Copy>(arena: &mut NodeArena<K>, set: &LinkedSet) -> Vec<Key<K>> {
    let keys: Vec<Key<K>> = set.iter(arena).map(|i| arena.key(i)).collect();
    arena.meter.selected(keys.len() as u64);
    keys
}

/// Returns the `r`-th smallest key (1-based) of `set` without modifying it.
pub fn select_rank<K: Ord + Copy>(
    arena: &mut NodeArena<K>,
    set: &LinkedSet,
    r: usize,
    selector: &mut Selector,
) -> Result<Key<K>, HeapError> {
    if r == 0 || r > set.len() {
        return Err(HeapError::RankOutOfRange {
            rank: r,
            len: set.len(),
        });
    }
    let mut keys = collect_keys(arena, set);
    Ok(selector.select_slice(&mut keys, r - 1, &mut arena.meter))
}

/// Moves every node of `set` into `low` (key `< pivot`) or `high`.
pub(crate) fn partition_set<K: Ord + Copy>(
    arena: &mut NodeArena<K>,
    set: LinkedSet,
    pivot: &Key<K>,
) -> (LinkedSet, LinkedSet) {
    let nodes: Vec<u32> = set.iter(arena).collect();
    let mut low = LinkedSet::new();
    let mut high = LinkedSet::new();
    let mut set = set;
    for idx in nodes {
        set.remove(arena, idx);
        arena.meter.compare(1);
        if arena.key(idx) < *pivot {
            low.append(arena, idx);
        } else {
            high.append(arena, idx);
        }
    }
    debug_assert!(set.is_empty());
    (low, high)
}

/// Splits `set` so that `low` holds its `r` smallest keys and `high` the rest.
///
/// Returns `(low, high, min(high))`; `set` is left empty on success and
/// untouched on error. Requires `1 <= r < |set|`.
pub fn split_by_rank<K: Ord + Copy>(
    arena: &mut NodeArena<K>,
    set: &mut LinkedSet,
    r: usize,
    selector: &mut Selector,
) -> Result<(LinkedSet, LinkedSet, Key<K>), HeapError> {
    if set.len() < 2 || r == 0 || r >= set.len() {
        return Err(HeapError::RankOutOfRange {
            rank: r,
            len: set.len(),
        });
    }
    let pivot = select_rank(arena, set, r + 1, selector)?;
    let (low, high) = partition_set(arena, set.take(), &pivot);
    debug_assert_eq!(low.len(), r);
    Ok((low, high, pivot))
}

/// Linear scan for the minimum; returns `(node, key)`.
pub(crate) fn min_of<K: Ord + Copy>(
    arena: &mut NodeArena<K>,
    set: &LinkedSet,
) -> Option<(u32, Key<K>)> {
    let mut best: Option<(u32, Key<K>)> = None;
    let mut cmps = 0u64;
    for idx in set.iter(arena) {
        let k = arena.key(idx);
        best = match best {
            None => Some((idx, k)),
            Some((bi, bk)) => {
                cmps += 1;
                if k < bk {
                    Some((idx, k))
                } else {
                    Some((bi, bk))
                }
            }
        };
    }
    arena.meter.compare(cmps);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::set_from_keys;
    use proptest::prelude::*;

    fn make(arena: &mut NodeArena<i64>, ks: &[i64]) -> LinkedSet {
        set_from_keys(
            arena,
            ks.iter().enumerate().map(|(i, &k)| Key::new(k, i as u64)),
        )
        .0
    }

    fn users(arena: &NodeArena<i64>, s: &LinkedSet) -> Vec<i64> {
        let mut v: Vec<i64> = s.iter(arena).map(|i| arena.key(i).user).collect();
        v.sort();
        v
    }

    #[test]
    fn select_rank_examples() {
        let mut a = NodeArena::new();
        let mut sel = Selector::default();
        let s = make(&mut a, &[3, 1, 2]);
        assert_eq!(select_rank(&mut a, &s, 1, &mut sel).unwrap().user, 1);
        let s = make(&mut a, &[5, 3, 9, 7, 1]);
        assert_eq!(select_rank(&mut a, &s, 4, &mut sel).unwrap().user, 7);
        let s = make(&mut a, &[42]);
        assert_eq!(select_rank(&mut a, &s, 1, &mut sel).unwrap().user, 42);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn select_rank_out_of_range() {
        let mut a = NodeArena::new();
        let mut sel = Selector::default();
        let s = make(&mut a, &[3, 1, 2]);
        assert!(matches!(
            select_rank(&mut a, &s, 0, &mut sel),
            Err(HeapError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            select_rank(&mut a, &s, 4, &mut sel),
            Err(HeapError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn randomized_select_is_rank_determined() {
        for seed in 0..10 {
            let mut a = NodeArena::new();
            let mut sel = Selector::new(SelectMode::Randomized { seed });
            let s = make(&mut a, &[5, 3, 9, 7, 1]);
            assert_eq!(select_rank(&mut a, &s, 4, &mut sel).unwrap().user, 7);
            let s = make(&mut a, &[3, 1, 2]);
            assert_eq!(select_rank(&mut a, &s, 2, &mut sel).unwrap().user, 2);
        }
    }

    #[test]
    fn split_examples() {
        let mut a = NodeArena::new();
        let mut sel = Selector::default();
        let mut s = make(&mut a, &[3, 5, 7, 9]);
        let (lo, hi, p) = split_by_rank(&mut a, &mut s, 2, &mut sel).unwrap();
        assert_eq!(
            (users(&a, &lo), users(&a, &hi), p.user),
            (vec![3, 5], vec![7, 9], 7)
        );
        assert!(s.is_empty());

        let mut s = make(&mut a, &[1, 2]);
        let (lo, hi, p) = split_by_rank(&mut a, &mut s, 1, &mut sel).unwrap();
        assert_eq!(
            (users(&a, &lo), users(&a, &hi), p.user),
            (vec![1], vec![2], 2)
        );

        // Larger-median rank on five elements: ceil(5/2) = 3 stay low.
        let mut s = make(&mut a, &[1, 3, 5, 7, 9]);
        let (lo, hi, p) = split_by_rank(&mut a, &mut s, 5usize.div_ceil(2), &mut sel).unwrap();
        assert_eq!(
            (users(&a, &lo), users(&a, &hi), p.user),
            (vec![1, 3, 5], vec![7, 9], 7)
        );
    }

    #[test]
    fn split_rejects_bad_rank_and_keeps_set() {
        let mut a = NodeArena::new();
        let mut sel = Selector::default();
        let mut s = make(&mut a, &[1, 2, 3]);
        assert!(split_by_rank(&mut a, &mut s, 3, &mut sel).is_err());
        assert!(split_by_rank(&mut a, &mut s, 0, &mut sel).is_err());
        assert_eq!(s.len(), 3);
        let mut one = make(&mut a, &[1]);
        assert!(split_by_rank(&mut a, &mut one, 1, &mut sel).is_err());
    }

    #[test]
    fn median_of_medians_touches_grow_linearly() {
        let ratio = |k: u32| {
            let n = 1usize << k;
            // deterministic scramble
            let mut v: Vec<u64> = (0..n as u64)
                .map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7)
                .collect();
            let mut t = 0;
            median_of_medians(&mut v, n / 2, &mut t);
            t as f64 / n as f64
        };
        let base = ratio(10);
        for k in 11..=16 {
            assert!(ratio(k) <= 2.0 * base, "k={k}");
        }
    }

    proptest! {
        #[test]
        fn mom_matches_sort(v in proptest::collection::vec(-1000i64..1000, 1..300), r in 0usize..300) {
            let k = r % v.len();
            let mut sorted = v.clone();
            sorted.sort();
            let mut w = v.clone();
            let mut t = 0;
            prop_assert_eq!(median_of_medians(&mut w, k, &mut t), sorted[k]);
        }

        #[test]
        fn quickselect_matches_sort(v in proptest::collection::vec(-1000i64..1000, 1..300), r in 0usize..300, seed in 0u64..100) {
            let k = r % v.len();
            let mut sorted = v.clone();
            sorted.sort();
            let mut w = v.clone();
            let mut t = 0;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(quickselect(&mut w, k, &mut rng, &mut t), sorted[k]);
        }
    }
}
