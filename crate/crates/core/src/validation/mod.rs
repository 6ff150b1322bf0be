//! Oracle, audits, replay and potential checks.

pub mod audit;
pub mod differential;
pub mod lemma;
pub mod oracle;

pub use audit::{AuditCheck, AuditReport};
pub use differential::{differential_run, replay, Failure, OpRecord, ReplayOptions, Verdict};
pub use lemma::{lemma_check, LemmaVerdict};
pub use oracle::OracleHeap;
