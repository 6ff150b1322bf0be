//! Structural audit reports.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::arena::{LinkedSet, NodeArena};
use crate::heap::HeapKind;
use crate::key::{Key, Pivot};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: &'static str,
    pub ok: bool,
    /// Set or slot index of the first violation.
    pub index: Option<usize>,
    pub detail: String,
}

/// Outcome of one audit: every check in evaluation order plus a digest of
/// the audited state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub heap: HeapKind,
    pub checks: Vec<AuditCheck>,
    pub digest: u64,
}

impl AuditReport {
    pub fn new(heap: HeapKind) -> Self {
        AuditReport {
            heap,
            checks: Vec::new(),
            digest: 0,
        }
    }

    /// Records a check. `outcome` carries the violating index and a message.
    pub fn record(&mut self, name: &'static str, outcome: Result<(), (Option<usize>, String)>) {
        let check = match outcome {
            Ok(()) => AuditCheck {
                name,
                ok: true,
                index: None,
                detail: String::new(),
            },
            Err((index, detail)) => AuditCheck {
                name,
                ok: false,
                index,
                detail,
            },
        };
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_failure(&self) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| !c.ok)
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub(crate) fn set_digest<T: Hash>(&mut self, state: &T) {
        let mut h = DefaultHasher::new();
        state.hash(&mut h);
        self.digest = h.finish();
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            None => write!(
                f,
                "{} audit ok ({} checks, digest {:016x})",
                self.heap,
                self.checks.len(),
                self.digest
            ),
            Some(c) => write!(
                f,
                "{} audit FAILED at `{}` (index {:?}): {} [digest {:016x}]",
                self.heap, c.name, c.index, c.detail, self.digest
            ),
        }
    }
}

/// Min and max key of a set, or `None` when empty.
pub(crate) fn extremes<K: Ord + Copy>(
    arena: &NodeArena<K>,
    set: &LinkedSet,
) -> Option<(Key<K>, Key<K>)> {
    let mut it = set.iter(arena).map(|i| arena.key(i));
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
}

/// Stored sizes agree with link traversal for every set.
pub(crate) fn check_traversal<'a, K: Ord + Copy>(
    report: &mut AuditReport,
    arena: &NodeArena<K>,
    sets: impl IntoIterator<Item = (usize, &'a LinkedSet)>,
) {
    let limit = arena.capacity();
    let mut out = Ok(());
    for (i, s) in sets {
        let walked = s.traversed_len(arena, limit);
        if walked != s.len() {
            out = Err((
                Some(i),
                format!("stored size {} but traversal found {}", s.len(), walked),
            ));
            break;
        }
    }
    report.record("size_traversal", out);
}

/// Every nonempty set lies in `[lower, upper)` of its own bounds, and
/// nonempty sets are ordered against each other (full scan).
pub(crate) fn check_order<K: Ord + Copy + fmt::Debug>(
    report: &mut AuditReport,
    arena: &NodeArena<K>,
    sets: &[(usize, &LinkedSet, Pivot<K>, Pivot<K>)],
) {
    let mut sandwich = Ok(());
    let mut global = Ok(());
    let mut prev_max: Option<(usize, Key<K>)> = None;
    for &(i, set, lo, hi) in sets {
        let Some((mn, mx)) = extremes(arena, set) else {
            continue;
        };
        if sandwich.is_ok() && !(lo.admits(&mn) && hi.is_above(&mx)) {
            sandwich = Err((
                Some(i),
                format!("keys [{mn:?}, {mx:?}] outside [{lo:?}, {hi:?})"),
            ));
        }
        if let Some((j, pm)) = prev_max {
            if global.is_ok() && pm >= mn {
                global = Err((Some(i), format!("set {j} max {pm:?} >= set {i} min {mn:?}")));
            }
        }
        prev_max = Some((i, mx));
    }
    report.record("pivot_sandwich", sandwich);
    report.record("global_order", global);
}
