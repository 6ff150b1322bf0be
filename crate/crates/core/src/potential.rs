//! Potential-function bookkeeping for amortized-cost assertions.
//!
//! Each tracked step appends one [`LedgerRow`]. A row claims
//! `nominal + delta <= bound` in exact integer arithmetic, where `delta` is
//! the change of the heap's potential attributable to that step alone.

/// What a ledger row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LedgerOp {
    Insert,
    DecreaseKey,
    /// Up-potential change of a decrease-key (must never increase).
    DecreaseKeyUp,
    DeleteMin,
    Delete,
    OverflowDown,
    OverflowThru,
    UnderflowUp,
    UnderflowThru,
    /// Slot 4 underfull next to a nonempty slot 3: folded into slot 3.
    UnderflowFold,
    MergeDown,
    SplitUp,
    /// Recursive push chain from set `i` ending at set `m`.
    Push {
        from: usize,
        to: usize,
    },
    /// Recursive pull into set 1 with lemma parameters `(i, m)`.
    Pull {
        i: usize,
        m: usize,
    },
}

impl LedgerOp {
    pub fn name(&self) -> &'static str {
        match self {
            LedgerOp::Insert => "insert",
            LedgerOp::DecreaseKey => "decrease_key",
            LedgerOp::DecreaseKeyUp => "decrease_key_up",
            LedgerOp::DeleteMin => "delete_min",
            LedgerOp::Delete => "delete",
            LedgerOp::OverflowDown => "overflow_down",
            LedgerOp::OverflowThru => "overflow_thru",
            LedgerOp::UnderflowUp => "underflow_up",
            LedgerOp::UnderflowThru => "underflow_thru",
            LedgerOp::UnderflowFold => "underflow_fold",
            LedgerOp::MergeDown => "merge_down",
            LedgerOp::SplitUp => "split_up",
            LedgerOp::Push { .. } => "push",
            LedgerOp::Pull { .. } => "pull",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerRow {
    pub op: LedgerOp,
    /// Slot or set index the step acted on, when meaningful.
    pub index: Option<usize>,
    pub nominal: i64,
    pub phi_before: i64,
    pub phi_after: i64,
    pub delta: i64,
    pub bound: i64,
    /// Whether the index meets the lemma's threshold; rows below it are
    /// reported but not asserted.
    pub applies: bool,
    /// Element touches the meter charged to this step.
    pub actual: u64,
}

impl LedgerRow {
    pub fn holds(&self) -> bool {
        self.nominal + self.delta <= self.bound
    }

    pub(crate) fn with_actual(mut self, actual: u64) -> Self {
        self.actual = actual;
        self
    }
}

/// Append-only list of ledger rows.
#[derive(Debug, Clone, Default)]
pub struct PotentialLedger {
    rows: Vec<LedgerRow>,
}

impl PotentialLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: LedgerRow) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[LedgerRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Builder for a row whose delta is the plain before/after difference.
pub(crate) fn row(
    op: LedgerOp,
    index: Option<usize>,
    nominal: i64,
    before: i64,
    after: i64,
    bound: i64,
    applies: bool,
) -> LedgerRow {
    LedgerRow {
        op,
        index,
        nominal,
        phi_before: before,
        phi_after: after,
        delta: after - before,
        bound,
        applies,
        actual: 0,
    }
}
