//! Aggregates over costs files.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::costs::CostRow;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KindSummary {
    pub op_kind: String,
    pub count: usize,
    pub mean_comparisons: f64,
    pub max_comparisons: u64,
    pub total_touches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileSummary {
    pub name: String,
    /// Number of inserts in the file, used as the problem size.
    pub n: usize,
    pub kinds: Vec<KindSummary>,
}

/// One op kind at one size. `ratio` is `touches / (n lg n)` divided by the
/// same quantity at the smallest size present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub op_kind: String,
    pub n: usize,
    pub mean_comparisons: f64,
    pub touches_per_n_lg_n: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub files: Vec<FileSummary>,
    pub scaling: Vec<ScalingRow>,
}

fn summarize(name: &str, rows: &[CostRow]) -> FileSummary {
    let mut by_kind: BTreeMap<&str, Vec<&CostRow>> = BTreeMap::new();
    for r in rows {
        by_kind.entry(r.op_kind.as_str()).or_default().push(r);
    }
    let kinds = by_kind
        .into_iter()
        .map(|(kind, rs)| KindSummary {
            op_kind: kind.to_string(),
            count: rs.len(),
            mean_comparisons: rs.iter().map(|r| r.comparisons as f64).sum::<f64>()
                / rs.len() as f64,
            max_comparisons: rs.iter().map(|r| r.comparisons).max().unwrap_or(0),
            total_touches: rs.iter().map(|r| r.touches()).sum(),
        })
        .collect();
    FileSummary {
        name: name.to_string(),
        n: rows.iter().filter(|r| r.op_kind == "insert").count(),
        kinds,
    }
}

pub fn build_report(files: &[(String, Vec<CostRow>)]) -> Report {
    let files: Vec<FileSummary> = files
        .iter()
        .map(|(name, rows)| summarize(name, rows))
        .collect();
    let mut scaling = Vec::new();
    let mut kinds: Vec<&str> = files
        .iter()
        .flat_map(|f| f.kinds.iter().map(|k| k.op_kind.as_str()))
        .collect();
    kinds.sort();
    kinds.dedup();
    for kind in kinds {
        let mut points: Vec<(usize, &KindSummary)> = files
            .iter()
            .filter(|f| f.n >= 2)
            .filter_map(|f| f.kinds.iter().find(|k| k.op_kind == kind).map(|k| (f.n, k)))
            .collect();
        points.sort_by_key(|&(n, _)| n);
        let norm =
            |n: usize, k: &KindSummary| k.total_touches as f64 / (n as f64 * (n as f64).log2());
        let Some(&(n0, k0)) = points.first() else {
            continue;
        };
        let base = norm(n0, k0);
        for (n, k) in points {
            let v = norm(n, k);
            scaling.push(ScalingRow {
                op_kind: kind.to_string(),
                n,
                mean_comparisons: k.mean_comparisons,
                touches_per_n_lg_n: v,
                ratio: if base > 0.0 { v / base } else { f64::NAN },
            });
        }
    }
    Report { files, scaling }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    for f in &r.files {
        let _ = writeln!(s, "{} (n = {})", f.name, f.n);
        let _ = writeln!(
            s,
            "  {:<14} {:>9} {:>10} {:>9} {:>14}",
            "op", "count", "mean cmp", "max cmp", "touches"
        );
        for k in &f.kinds {
            let _ = writeln!(
                s,
                "  {:<14} {:>9} {:>10.3} {:>9} {:>14}",
                k.op_kind, k.count, k.mean_comparisons, k.max_comparisons, k.total_touches
            );
        }
    }
    if r.files.len() > 1 && !r.scaling.is_empty() {
        let _ = writeln!(s, "scaling");
        let _ = writeln!(
            s,
            "  {:<14} {:>9} {:>10} {:>12} {:>8}",
            "op", "n", "mean cmp", "touch/nlgn", "ratio"
        );
        for row in &r.scaling {
            let _ = writeln!(
                s,
                "  {:<14} {:>9} {:>10.3} {:>12.4} {:>8.3}",
                row.op_kind, row.n, row.mean_comparisons, row.touches_per_n_lg_n, row.ratio
            );
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: usize, delete_cost: u64) -> Vec<CostRow> {
        let mk = |i: usize, kind: &str, c: u64| CostRow {
            op_index: i,
            op_kind: kind.into(),
            comparisons: c,
            node_moves: 0,
            list_links: 0,
            selection_elements: 0,
            phi_before: 0,
            phi_after: 0,
        };
        let mut v: Vec<CostRow> = (0..n).map(|i| mk(i, "insert", 2)).collect();
        v.extend((0..n).map(|i| mk(n + i, "delete_min", delete_cost)));
        v
    }

    #[test]
    fn one_summary_row_per_kind() {
        let r = build_report(&[("a".into(), rows(4, 5))]);
        assert_eq!(r.files[0].n, 4);
        let kinds: Vec<_> = r.files[0]
            .kinds
            .iter()
            .map(|k| k.op_kind.as_str())
            .collect();
        assert_eq!(kinds, ["delete_min", "insert"]);
        assert_eq!(r.files[0].kinds[0].total_touches, 20);
        assert_eq!(r.files[0].kinds[1].mean_comparisons, 2.0);
    }

    #[test]
    fn scaling_ratio_against_smallest_n() {
        // delete cost lg n per op gives a flat touches / (n lg n).
        let r = build_report(&[("big".into(), rows(16, 4)), ("small".into(), rows(4, 2))]);
        let del: Vec<_> = r
            .scaling
            .iter()
            .filter(|s| s.op_kind == "delete_min")
            .collect();
        assert_eq!(del.iter().map(|s| s.n).collect::<Vec<_>>(), [4, 16]);
        assert!((del[1].ratio - 1.0).abs() < 1e-12);
        assert!(render_text(&r).contains("scaling"));
    }
}
