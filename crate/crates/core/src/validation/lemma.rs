//! Verdicts over potential ledgers.

use crate::potential::{LedgerRow, PotentialLedger};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaVerdict {
    /// Rows at or above their lemma's threshold, all asserted.
    pub checked: usize,
    /// Rows below threshold, reported only.
    pub skipped: usize,
    /// Row position and content of the first violation.
    pub first_violation: Option<(usize, LedgerRow)>,
}

impl LemmaVerdict {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks `nominal + delta <= bound` for every applicable row.
pub fn lemma_check(ledger: &PotentialLedger) -> LemmaVerdict {
    lemma_check_from(ledger, 0)
}

/// Like [`lemma_check`] but starts at row `start`.
pub fn lemma_check_from(ledger: &PotentialLedger, start: usize) -> LemmaVerdict {
    let mut v = LemmaVerdict::default();
    for (i, r) in ledger.rows().iter().enumerate().skip(start) {
        if !r.applies {
            v.skipped += 1;
            continue;
        }
        v.checked += 1;
        if v.first_violation.is_none() && !r.holds() {
            v.first_violation = Some((i, r.clone()));
        }
    }
    v
}
