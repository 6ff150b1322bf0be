//! Replay, telemetry and reporting behind the `pheap` binary.

pub mod costs;
pub mod report;
pub mod runner;

pub use costs::{read_costs, write_costs, CostRow};
pub use report::{build_report, render_text, FileSummary, KindSummary, Report, ScalingRow};
pub use runner::{compare, run_trace, CompareOutcome, RunOptions, RunOutcome};
