//! CSV rows for classification records and census tables, and the resume
//! checkpoint of long runs.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{CensusRow, FwppRecord, NontoricCase, NontoricRecord};

pub fn record_csv_header() -> Vec<String> {
    ["picard_index", "case", "n_or_lambda", "weights_or_ltuple", "d_data", "local_orders", "canonical_key"].map(String::from).to_vec()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).join(" ")
}

/// Blocks separated by `|`, entries by spaces.
fn join_blocks<T: ToString + Clone>(blocks: &[Vec<T>]) -> String {
    blocks.iter().map(|b| join(b.iter().cloned())).join("|")
}

/// The weights go in `weights_or_ltuple`, the twist `x` in `d_data`.
pub fn fwpp_csv_row(rec: &FwppRecord) -> Vec<String> {
    vec![
        rec.picard_index().to_string(),
        "toric".into(),
        rec.n.to_string(),
        join(rec.w),
        rec.x.to_string(),
        join(rec.local_orders()),
        join(&rec.canonical_key),
    ]
}

pub fn nontoric_csv_row(rec: &NontoricRecord) -> Vec<String> {
    vec![
        rec.picard_index.to_string(),
        rec.case.to_string(),
        rec.lambda.to_string(),
        join_blocks(rec.dm.l_blocks()),
        join_blocks(rec.dm.d_blocks()),
        join(&rec.local_orders),
        join(&rec.canonical_key),
    ]
}

pub fn census_csv_header() -> Vec<String> {
    let mut h = vec!["picard_index".to_string(), "toric".into()];
    h.extend(NontoricCase::ALL.iter().map(|c| c.to_string()));
    h.extend(["nontoric", "total", "cumulative_toric", "cumulative_nontoric", "cumulative_total"].map(String::from));
    h
}

pub fn census_csv_row(row: &CensusRow) -> Vec<String> {
    let c = &row.counts;
    let mut out = vec![row.picard_index.to_string(), c.toric.to_string()];
    out.extend(c.nontoric.iter().map(|x| x.to_string()));
    out.extend([c.nontoric_total(), c.total(), row.cumulative.toric, row.cumulative.nontoric_total(), row.cumulative.total()].map(|x| x.to_string()));
    out
}

/// CSV writer that flushes after every batch so a checkpoint never points
/// past data on disk.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    /// Writes `header` unless the output is being continued.
    pub fn new(out: W, header: Option<&[String]>) -> io::Result<Self> {
        let mut inner = csv::WriterBuilder::new().from_writer(out);
        if let Some(h) = header {
            inner.write_record(h)?;
        }
        Ok(CsvSink { inner })
    }

    pub fn write_batch<I: IntoIterator<Item = Vec<String>>>(&mut self, rows: I) -> io::Result<()> {
        for row in rows {
            self.inner.write_record(&row)?;
        }
        self.inner.flush()
    }

    pub fn into_inner(self) -> io::Result<W> {
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}

/// Progress of a range run: every index up to `completed` is on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub command: String,
    pub max_index: u64,
    pub completed: u64,
    /// Running totals, needed to continue census output.
    #[serde(default)]
    pub cumulative: super::CaseCounts,
}

impl Checkpoint {
    pub fn load(path: &Path) -> io::Result<Option<Checkpoint>> {
        match fs::read_to_string(path) {
            Ok(s) => serde_json::from_str(&s).map(Some).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Replaces the file atomically.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self).map_err(io::Error::other)?)?;
        fs::rename(tmp, path)
    }
}
