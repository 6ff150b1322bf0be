//! Operation traces: text format and workload generators.
//!
//! One operation per line: `i <key>` inserts, `d` deletes the minimum and
//! `k <handle-id> <key>` decreases the key of the element created by the
//! `handle-id`-th insert (0-based). `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Insert(i64),
    DeleteMin,
    DecreaseKey(usize, i64),
}

impl Op {
    pub fn kind(&self) -> &'static str {
        match self {
            Op::Insert(_) => "insert",
            Op::DeleteMin => "delete_min",
            Op::DecreaseKey(..) => "decrease_key",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub ops: Vec<Op>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct TraceParseError {
    pub line: usize,
    pub msg: String,
}

impl Trace {
    pub fn new(ops: Vec<Op>) -> Self {
        Trace { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn inserts(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| matches!(o, Op::Insert(_)))
            .count()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            match op {
                Op::Insert(k) => writeln!(f, "i {k}")?,
                Op::DeleteMin => writeln!(f, "d")?,
                Op::DecreaseKey(h, k) => writeln!(f, "k {h} {k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Trace {
    type Err = TraceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ops = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| TraceParseError { line: n + 1, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let int = |t: &str| {
                t.parse::<i64>()
                    .map_err(|e| err(format!("bad integer `{t}`: {e}")))
            };
            let op = match parts.as_slice() {
                ["i", k] => Op::Insert(int(k)?),
                ["d"] => Op::DeleteMin,
                ["k", h, k] => {
                    let id = h
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad handle id `{h}`: {e}")))?;
                    Op::DecreaseKey(id, int(k)?)
                }
                _ => return Err(err(format!("unrecognized operation `{line}`"))),
            };
            ops.push(op);
        }
        Ok(Trace { ops })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Random,
    Sorted,
    Reverse,
    DijkstraLike,
    Sawtooth,
    AdversarialDk,
}

impl Pattern {
    pub const ALL: [Pattern; 6] = [
        Pattern::Random,
        Pattern::Sorted,
        Pattern::Reverse,
        Pattern::DijkstraLike,
        Pattern::Sawtooth,
        Pattern::AdversarialDk,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Pattern::Random => "random",
            Pattern::Sorted => "sorted",
            Pattern::Reverse => "reverse",
            Pattern::DijkstraLike => "dijkstra-like",
            Pattern::Sawtooth => "sawtooth",
            Pattern::AdversarialDk => "adversarial-dk",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

/// Mirror of the live elements while generating, so every emitted
/// decrease-key targets a live handle with a key no larger than its current.
struct Shadow {
    ops: Vec<Op>,
    live: BTreeSet<(i64, usize)>,
    keys: Vec<Option<i64>>,
}

impl Shadow {
    fn new(cap: usize) -> Self {
        Shadow {
            ops: Vec::with_capacity(cap),
            live: BTreeSet::new(),
            keys: Vec::new(),
        }
    }

    fn insert(&mut self, k: i64) -> usize {
        let id = self.keys.len();
        self.keys.push(Some(k));
        self.live.insert((k, id));
        self.ops.push(Op::Insert(k));
        id
    }

    fn delete_min(&mut self) -> Option<i64> {
        self.ops.push(Op::DeleteMin);
        let (k, id) = self.live.pop_first()?;
        self.keys[id] = None;
        Some(k)
    }

    fn decrease(&mut self, id: usize, k: i64) {
        let old = self.keys[id].expect("decrease targets a live element");
        debug_assert!(k <= old);
        self.live.remove(&(old, id));
        self.live.insert((k, id));
        self.keys[id] = Some(k);
        self.ops.push(Op::DecreaseKey(id, k));
    }

    fn min(&self) -> Option<i64> {
        self.live.first().map(|&(k, _)| k)
    }

    fn len(&self) -> usize {
        self.live.len()
    }

    fn done(&self, total: usize) -> bool {
        self.ops.len() >= total
    }
}

const KEY_RANGE: i64 = 1 << 40;

/// Deterministic trace of exactly `ops` operations for `(pattern, ops, seed)`.
pub fn gen(pattern: Pattern, ops: usize, seed: u64) -> Trace {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (pattern as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut s = Shadow::new(ops);
    match pattern {
        Pattern::Sorted => {
            let mut k = rng.gen_range(-1000..1000);
            while !s.done(ops) {
                k += rng.gen_range(1..=16);
                s.insert(k);
            }
        }
        Pattern::Reverse => {
            let mut k = rng.gen_range(-1000..1000);
            while !s.done(ops) {
                k -= rng.gen_range(1..=16);
                s.insert(k);
            }
        }
        Pattern::Random => {
            while !s.done(ops) {
                let roll = rng.gen_range(0..100);
                if s.len() == 0 || roll < 50 {
                    s.insert(rng.gen_range(-KEY_RANGE..KEY_RANGE));
                } else if roll < 75 {
                    s.delete_min();
                } else {
                    // Uniform live handle by rejection; about half the ids are live.
                    let id = loop {
                        let id = rng.gen_range(0..s.keys.len());
                        if s.keys[id].is_some() {
                            break id;
                        }
                    };
                    let cur = s.keys[id].unwrap();
                    let drop = rng.gen_range(0..=KEY_RANGE / 4);
                    s.decrease(id, cur.saturating_sub(drop));
                }
            }
        }
        Pattern::DijkstraLike => {
            // Settle the minimum, then relax a few neighbours: new vertices
            // are inserted, known ones (mostly recent) get shorter distances.
            let mut recent: Vec<usize> = Vec::new();
            s.insert(0);
            while !s.done(ops) {
                let Some(d) = s.min() else {
                    s.insert(rng.gen_range(0..1000));
                    continue;
                };
                s.delete_min();
                let degree = rng.gen_range(1..=4);
                for _ in 0..degree {
                    if s.done(ops) {
                        break;
                    }
                    let w = rng.gen_range(1..=1000);
                    recent.retain(|&i| s.keys[i].is_some());
                    if recent.len() < 8 || rng.gen_bool(0.55) {
                        let id = s.insert(d + w * 4);
                        recent.push(id);
                        if recent.len() > 64 {
                            recent.remove(0);
                        }
                    } else {
                        // Bias toward the most recently reached vertices.
                        let back =
                            (rng.gen_range(0.0f64..1.0).powi(2) * recent.len() as f64) as usize;
                        let id = recent[recent.len() - 1 - back.min(recent.len() - 1)];
                        let cur = s.keys[id].unwrap();
                        s.decrease(id, (d + w).min(cur));
                    }
                }
            }
        }
        Pattern::Sawtooth => {
            while !s.done(ops) {
                let burst = rng.gen_range(1..=256);
                for _ in 0..burst {
                    if s.done(ops) {
                        break;
                    }
                    s.insert(rng.gen_range(-KEY_RANGE..KEY_RANGE));
                }
                let drain = rng.gen_range(1..=s.len().max(1));
                for _ in 0..drain {
                    if s.done(ops) {
                        break;
                    }
                    s.delete_min();
                }
            }
        }
        Pattern::AdversarialDk => {
            // Build a pool, then repeatedly turn the maximum into the new
            // minimum, with occasional deletions and fresh inserts.
            let pool = (ops / 4).clamp(1, 4096);
            for _ in 0..pool.min(ops) {
                s.insert(rng.gen_range(0..KEY_RANGE));
            }
            while !s.done(ops) {
                let roll = rng.gen_range(0..100);
                if s.len() < 2 || roll < 10 {
                    s.insert(rng.gen_range(0..KEY_RANGE));
                } else if roll < 25 {
                    s.delete_min();
                } else {
                    let &(_, id) = s.live.last().unwrap();
                    let target = s.min().unwrap() - 1;
                    s.decrease(id, target);
                }
            }
        }
    }
    s.ops.truncate(ops);
    Trace { ops: s.ops }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_and_insert_only_patterns() {
        assert!(gen(Pattern::Random, 0, 7).is_empty());
        let t = gen(Pattern::Sorted, 5, 7);
        assert_eq!(t.len(), 5);
        let keys: Vec<i64> = t
            .ops
            .iter()
            .map(|o| if let Op::Insert(k) = o { *k } else { panic!() })
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let r = gen(Pattern::Reverse, 5, 7);
        assert!(r
            .ops
            .windows(2)
            .all(|w| matches!((w[0], w[1]), (Op::Insert(a), Op::Insert(b)) if a > b)));
    }

    #[test]
    fn generation_is_deterministic() {
        for p in Pattern::ALL {
            assert_eq!(gen(p, 500, 3), gen(p, 500, 3));
            assert_eq!(gen(p, 500, 3).len(), 500);
        }
        assert_ne!(gen(Pattern::Random, 500, 3), gen(Pattern::Random, 500, 4));
    }

    #[test]
    fn adversarial_decreases_hit_the_maximum() {
        let t = gen(Pattern::AdversarialDk, 3000, 11);
        let mut live: BTreeSet<(i64, usize)> = BTreeSet::new();
        let mut next = 0;
        let mut dks = 0;
        for op in &t.ops {
            match *op {
                Op::Insert(k) => {
                    live.insert((k, next));
                    next += 1;
                }
                Op::DeleteMin => {
                    live.pop_first();
                }
                Op::DecreaseKey(id, k) => {
                    let max = *live.last().unwrap();
                    assert_eq!(max.1, id);
                    assert!(k < live.first().unwrap().0);
                    live.remove(&max);
                    live.insert((k, id));
                    dks += 1;
                }
            }
        }
        assert!(dks > 1000);
    }

    #[test]
    fn decrease_keys_target_live_handles() {
        for p in Pattern::ALL {
            let t = gen(p, 4000, 5);
            let mut live: BTreeSet<(i64, usize)> = BTreeSet::new();
            let mut keys: Vec<Option<i64>> = Vec::new();
            for op in &t.ops {
                match *op {
                    Op::Insert(k) => {
                        live.insert((k, keys.len()));
                        keys.push(Some(k));
                    }
                    Op::DeleteMin => {
                        if let Some((_, id)) = live.pop_first() {
                            keys[id] = None;
                        }
                    }
                    Op::DecreaseKey(id, k) => {
                        let cur = keys[id].unwrap_or_else(|| panic!("{p}: dead handle {id}"));
                        assert!(k <= cur);
                        live.remove(&(cur, id));
                        live.insert((k, id));
                        keys[id] = Some(k);
                    }
                }
            }
        }
    }

    #[test]
    fn parses_comments_and_rejects_garbage() {
        let t: Trace = "# header\ni 5\n\nd  # pop\nk 0 -3\n".parse().unwrap();
        assert_eq!(
            t.ops,
            vec![Op::Insert(5), Op::DeleteMin, Op::DecreaseKey(0, -3)]
        );
        let e = "i 5\nx 1\n".parse::<Trace>().unwrap_err();
        assert_eq!(e.line, 2);
        assert!("i five".parse::<Trace>().is_err());
        assert!("unknown".parse::<Pattern>().is_err());
    }

    fn op_strategy() -> impl Strategy<Value = Op> {
        prop_oneof![
            any::<i64>().prop_map(Op::Insert),
            Just(Op::DeleteMin),
            (0usize..1000, any::<i64>()).prop_map(|(h, k)| Op::DecreaseKey(h, k)),
        ]
    }

    proptest! {
        #[test]
        fn round_trips(ops in proptest::collection::vec(op_strategy(), 0..200)) {
            let t = Trace::new(ops);
            let back: Trace = t.to_string().parse().unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
