//! The per-operation costs file.

use std::io::{Read, Write};

use anyhow::{Context, Result};
use partition_heaps::validation::OpRecord;
use serde::{Deserialize, Serialize};

/// One executed operation. Field order is the file's column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostRow {
    pub op_index: usize,
    pub op_kind: String,
    pub comparisons: u64,
    pub node_moves: u64,
    pub list_links: u64,
    pub selection_elements: u64,
    pub phi_before: i64,
    pub phi_after: i64,
}

pub const HEADER: &str =
    "op_index,op_kind,comparisons,node_moves,list_links,selection_elements,phi_before,phi_after";

impl CostRow {
    /// Comparisons, node moves and selection work, as the heaps' meters count them.
    pub fn touches(&self) -> u64 {
        self.comparisons + self.node_moves + self.selection_elements
    }
}

impl From<&OpRecord> for CostRow {
    fn from(r: &OpRecord) -> Self {
        CostRow {
            op_index: r.index,
            op_kind: r.op.kind().to_string(),
            comparisons: r.cost.comparisons,
            node_moves: r.cost.node_moves,
            list_links: r.cost.list_links,
            selection_elements: r.cost.selection_elements,
            phi_before: r.phi_before,
            phi_after: r.phi_after,
        }
    }
}

/// Writes the header (even for no rows) followed by one line per row.
pub fn write_costs<W: Write>(out: W, rows: &[CostRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_costs<R: Read>(input: R) -> Result<Vec<CostRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    anyhow::ensure!(
        header.join(",") == HEADER,
        "unexpected costs header `{}`",
        header.join(",")
    );
    rd.deserialize()
        .enumerate()
        .map(|(i, r)| r.with_context(|| format!("costs row {}", i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_rows_and_header() {
        let rows = vec![CostRow {
            op_index: 0,
            op_kind: "insert".into(),
            comparisons: 3,
            node_moves: 0,
            list_links: 1,
            selection_elements: 0,
            phi_before: 0,
            phi_after: 4,
        }];
        let mut buf = Vec::new();
        write_costs(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next(), Some(HEADER));
        assert_eq!(read_costs(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn empty_file_has_header_only() {
        let mut buf = Vec::new();
        write_costs(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim_end(), HEADER);
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(read_costs("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_costs(format!("{HEADER}\n1,insert,x,0,0,0,0,0\n").as_bytes()).is_err());
    }
}
