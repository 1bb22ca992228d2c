//! JSON-lines persistence of ranked catalogs, one record per tree.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph6::{from_graph6, to_graph6};
use crate::moments::MomentSequence;
use crate::s_order::RankedCatalog;
use crate::tree::CanonicalCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub graph6: String,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// `S_0..S_{n-1}` in decimal.
    pub moments: Vec<String>,
    pub rank: usize,
    pub canonical_code: String,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: {reason}")]
    Schema { line: usize, reason: String },
}

impl CatalogRecord {
    /// Checks the record against its own graph6 string.
    pub fn validate(&self) -> Result<(), String> {
        let tree = from_graph6(&self.graph6).map_err(|e| e.to_string())?;
        let (p, q) = tree.bipartition().sizes();
        if (tree.n(), p, q) != (self.n, self.p, self.q) {
            return Err(format!(
                "graph6 encodes (n, p, q) = ({}, {p}, {q}), record says ({}, {}, {})",
                tree.n(),
                self.n,
                self.p,
                self.q
            ));
        }
        if self.moments.len() != self.n {
            return Err(format!("{} moments for n = {}", self.moments.len(), self.n));
        }
        if MomentSequence::from_decimal_strings(&self.moments).is_none() {
            return Err("moments must be unsigned decimal integers".into());
        }
        if CanonicalCode::parse(&self.canonical_code).is_none_or(|c| c.order() != self.n) {
            return Err(format!(
                "malformed canonical code {:?}",
                self.canonical_code
            ));
        }
        if self.rank == 0 {
            return Err("ranks start at 1".into());
        }
        Ok(())
    }
}

pub fn records_from_catalog(catalog: &RankedCatalog) -> Vec<CatalogRecord> {
    catalog
        .entries()
        .iter()
        .map(|e| {
            let (p, q) = e.tree.bipartition().sizes();
            CatalogRecord {
                graph6: to_graph6(&e.tree),
                n: e.tree.n(),
                p,
                q,
                moments: e.moments.to_decimal_strings(),
                rank: e.rank,
                canonical_code: e.code.to_string(),
            }
        })
        .collect()
}

fn sort_key(r: &CatalogRecord) -> (usize, &str) {
    (r.rank, r.canonical_code.as_str())
}

/// Writes records sorted by rank, then canonical code.
pub fn write_catalog<W: Write>(mut out: W, records: &[CatalogRecord]) -> Result<(), CatalogError> {
    let mut sorted: Vec<&CatalogRecord> = records.iter().collect();
    sorted.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    for r in sorted {
        serde_json::to_writer(&mut out, r).map_err(io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads and validates records; blank lines are skipped. Errors carry the
/// 1-based line number.
pub fn read_catalog<R: BufRead>(input: R) -> Result<Vec<CatalogRecord>, CatalogError> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CatalogRecord =
            serde_json::from_str(&line).map_err(|source| CatalogError::Json {
                line: line_no,
                source,
            })?;
        record.validate().map_err(|reason| CatalogError::Schema {
            line: line_no,
            reason,
        })?;
        records.push(record);
    }
    Ok(records)
}
