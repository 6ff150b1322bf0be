//! Trace replay over one or several implementations.

use partition_heaps::trace::Trace;
use partition_heaps::validation::{replay, ReplayOptions, Verdict};
use partition_heaps::{HeapConfig, HeapKind, Key, SelectMode};

use crate::costs::CostRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub select: SelectMode,
    pub audit_every: Option<usize>,
    pub oracle: bool,
    pub phi: bool,
}

impl RunOptions {
    fn replay_options(&self) -> ReplayOptions {
        ReplayOptions {
            config: HeapConfig {
                select: self.select,
                track_potential: self.phi,
                ..HeapConfig::default()
            },
            oracle: self.oracle,
            audit_every: self.audit_every,
            lemma: self.phi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub rows: Vec<CostRow>,
}

pub fn run_trace(trace: &Trace, kind: HeapKind, opts: RunOptions) -> RunOutcome {
    let mut rows = Vec::with_capacity(trace.len());
    let verdict = replay(trace, kind, opts.replay_options(), |r| {
        rows.push(CostRow::from(r))
    });
    RunOutcome { verdict, rows }
}

#[derive(Debug, Clone)]
pub struct CompareOutcome {
    pub runs: Vec<(HeapKind, RunOutcome)>,
    /// First implementation whose delete-min sequence differs from the first
    /// one's, with the position of the first difference.
    pub mismatch: Option<(HeapKind, usize)>,
}

impl CompareOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.runs.iter().all(|(_, r)| r.verdict.passed())
    }
}

fn first_difference(a: &[Key<i64>], b: &[Key<i64>]) -> Option<usize> {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(i) => Some(i),
        None if a.len() != b.len() => Some(a.len().min(b.len())),
        None => None,
    }
}

/// Replays `trace` on every kind in parallel, one thread per kind.
pub fn compare(trace: &Trace, kinds: &[HeapKind], opts: RunOptions) -> CompareOutcome {
    let runs: Vec<(HeapKind, RunOutcome)> = std::thread::scope(|s| {
        let workers: Vec<_> = kinds
            .iter()
            .map(|&k| (k, s.spawn(move || run_trace(trace, k, opts))))
            .collect();
        workers
            .into_iter()
            .map(|(k, w)| (k, w.join().expect("replay worker panicked")))
            .collect()
    });
    let mismatch = runs.split_first().and_then(|((_, base), rest)| {
        rest.iter().find_map(|(k, r)| {
            first_difference(&base.verdict.outputs, &r.verdict.outputs).map(|i| (*k, i))
        })
    });
    CompareOutcome { runs, mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use partition_heaps::trace::{gen, Pattern};

    #[test]
    fn one_row_per_op() {
        let t = gen(Pattern::Sawtooth, 300, 2);
        let out = run_trace(&t, HeapKind::Lp, RunOptions::default());
        assert!(out.verdict.passed());
        assert_eq!(out.rows.len(), 300);
        assert!(out.rows.iter().enumerate().all(|(i, r)| r.op_index == i));
    }

    #[test]
    fn differences_are_located() {
        let k = |u| Key::new(u, 0);
        assert_eq!(first_difference(&[k(1), k(2)], &[k(1), k(3)]), Some(1));
        assert_eq!(first_difference(&[k(1)], &[k(1), k(3)]), Some(1));
        assert_eq!(first_difference(&[k(1)], &[k(1)]), None);
    }
}
