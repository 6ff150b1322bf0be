//! Trace replay with optional oracle comparison, audits and ledger checks.

use std::fmt;

use crate::arena::Handle;
use crate::error::HeapError;
use crate::heap::{new_heap, AddressableHeap, HeapConfig, HeapKind};
use crate::key::Key;
use crate::meter::CostMeter;
use crate::potential::LedgerRow;
use crate::trace::{Op, Trace};
use crate::validation::lemma::lemma_check_from;
use crate::validation::{AuditReport, OracleHeap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReplayOptions {
    pub config: HeapConfig,
    /// Compare every output with the oracle.
    pub oracle: bool,
    /// Full audit after every `k`-th operation (and after the last one).
    pub audit_every: Option<usize>,
    /// Check new ledger rows after every operation.
    pub lemma: bool,
}

/// Cost and potential of one executed operation.
#[derive(Debug, Clone, Copy)]
pub struct OpRecord {
    pub index: usize,
    pub op: Op,
    pub cost: CostMeter,
    pub phi_before: i64,
    pub phi_after: i64,
    pub len_after: usize,
}

#[derive(Debug, Clone)]
pub enum Failure {
    Divergence {
        op_index: usize,
        detail: String,
        heap_digest: u64,
        oracle_digest: u64,
    },
    Audit {
        op_index: usize,
        report: AuditReport,
    },
    Lemma {
        op_index: usize,
        row: LedgerRow,
    },
    BadTrace {
        op_index: usize,
        detail: String,
    },
}

impl Failure {
    pub fn op_index(&self) -> usize {
        match self {
            Failure::Divergence { op_index, .. }
            | Failure::Audit { op_index, .. }
            | Failure::Lemma { op_index, .. }
            | Failure::BadTrace { op_index, .. } => *op_index,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Divergence {
                op_index,
                detail,
                heap_digest,
                oracle_digest,
            } => write!(
                f,
                "divergence at op {op_index}: {detail} (heap digest {heap_digest:016x}, oracle digest {oracle_digest:016x})"
            ),
            Failure::Audit { op_index, report } => write!(f, "audit failure after op {op_index}: {report}"),
            Failure::Lemma { op_index, row } => write!(
                f,
                "potential bound violated at op {op_index}: {} at index {:?}: {} + {} > {}",
                row.op.name(),
                row.index,
                row.nominal,
                row.delta,
                row.bound
            ),
            Failure::BadTrace { op_index, detail } => write!(f, "malformed trace at op {op_index}: {detail}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub heap: HeapKind,
    pub ops: usize,
    /// Keys returned by successful delete-mins, in order.
    pub outputs: Vec<Key<i64>>,
    pub audits: usize,
    pub ledger_rows_checked: usize,
    pub failure: Option<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "{}: pass ({} ops, {} audits)",
                self.heap, self.ops, self.audits
            ),
            Some(e) => write!(f, "{}: FAIL {e}", self.heap),
        }
    }
}

fn err_kind(e: &HeapError) -> &'static str {
    match e {
        HeapError::Empty => "empty",
        HeapError::DeadHandle => "dead handle",
        HeapError::KeyIncrease => "key increase",
        HeapError::KeyDecrease => "key decrease",
        HeapError::RankOutOfRange { .. } => "rank out of range",
        HeapError::Precondition(_) => "precondition",
    }
}

fn same<T: PartialEq>(a: &Result<T, HeapError>, b: &Result<T, HeapError>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(x), Err(y)) => err_kind(x) == err_kind(y),
        _ => false,
    }
}

/// Replays `trace` on a fresh heap of `kind`, calling `on_op` after each
/// operation. Stops at the first failure.
pub fn replay(
    trace: &Trace,
    kind: HeapKind,
    opts: ReplayOptions,
    mut on_op: impl FnMut(&OpRecord),
) -> Verdict {
    let mut heap = new_heap::<i64>(kind, opts.config);
    let mut oracle = opts.oracle.then(OracleHeap::<i64>::new);
    let mut handles: Vec<Handle> = Vec::new();
    let mut oracle_handles: Vec<Handle> = Vec::new();
    let track = opts.config.track_potential;
    let mut ledger_seen = 0usize;
    let mut v = Verdict {
        heap: kind,
        ops: 0,
        outputs: Vec::new(),
        audits: 0,
        ledger_rows_checked: 0,
        failure: None,
    };

    let diverge = |i: usize,
                   detail: String,
                   heap: &dyn AddressableHeap<i64>,
                   oracle: &OracleHeap<i64>| Failure::Divergence {
        op_index: i,
        detail,
        heap_digest: heap.audit().digest,
        oracle_digest: oracle.audit().digest,
    };

    for (i, &op) in trace.ops.iter().enumerate() {
        let phi_before = if track { heap.potential() } else { 0 };
        let start = *heap.meter();
        match op {
            Op::Insert(k) => {
                handles.push(heap.insert(k));
                if let Some(o) = oracle.as_mut() {
                    oracle_handles.push(o.insert(k));
                }
            }
            Op::DeleteMin => {
                if let Some(o) = oracle.as_mut() {
                    let (a, b) = (heap.find_min(), o.find_min());
                    if !same(&a, &b) {
                        v.failure = Some(diverge(
                            i,
                            format!("find_min {a:?} vs oracle {b:?}"),
                            heap.as_ref(),
                            o,
                        ));
                        break;
                    }
                }
                let got = heap.pop_min();
                if let Some(o) = oracle.as_mut() {
                    let want = o.pop_min();
                    if !same(&got, &want) {
                        v.failure = Some(diverge(
                            i,
                            format!("delete_min {got:?} vs oracle {want:?}"),
                            heap.as_ref(),
                            o,
                        ));
                        break;
                    }
                }
                if let Ok(k) = got {
                    v.outputs.push(k);
                }
            }
            Op::DecreaseKey(id, k) => {
                let Some(&h) = handles.get(id) else {
                    v.failure = Some(Failure::BadTrace {
                        op_index: i,
                        detail: format!("handle id {id} precedes its insert"),
                    });
                    break;
                };
                let got = heap.decrease_key(h, k);
                if let Some(o) = oracle.as_mut() {
                    let want = o.decrease_key(oracle_handles[id], k);
                    if !same(&got, &want) {
                        v.failure = Some(diverge(
                            i,
                            format!("decrease_key {got:?} vs oracle {want:?}"),
                            heap.as_ref(),
                            o,
                        ));
                        break;
                    }
                    if got.is_ok() && heap.key_of(h) != o.key_of(oracle_handles[id]) {
                        v.failure = Some(diverge(
                            i,
                            format!("handle {id} resolves to the wrong element"),
                            heap.as_ref(),
                            o,
                        ));
                        break;
                    }
                }
            }
        }
        let cost = *heap.meter() - start;
        v.ops = i + 1;
        let rec = OpRecord {
            index: i,
            op,
            cost,
            phi_before,
            phi_after: if track { heap.potential() } else { 0 },
            len_after: heap.len(),
        };
        on_op(&rec);

        if opts.lemma {
            if let Some(ledger) = heap.ledger() {
                let lv = lemma_check_from(ledger, ledger_seen);
                ledger_seen = ledger.len();
                v.ledger_rows_checked += lv.checked;
                if let Some((_, row)) = lv.first_violation {
                    v.failure = Some(Failure::Lemma { op_index: i, row });
                    break;
                }
            }
        }
        if let Some(k) = opts.audit_every {
            if k > 0 && ((i + 1) % k == 0 || i + 1 == trace.len()) {
                let report = heap.audit();
                v.audits += 1;
                if !report.passed() {
                    v.failure = Some(Failure::Audit {
                        op_index: i,
                        report,
                    });
                    break;
                }
            }
        }
    }
    v
}

/// Replays `trace` on `kind` and on the oracle, comparing every output and
/// error.
pub fn differential_run(trace: &Trace, kind: HeapKind, config: HeapConfig) -> Verdict {
    replay(
        trace,
        kind,
        ReplayOptions {
            config,
            oracle: true,
            ..ReplayOptions::default()
        },
        |_| {},
    )
}
