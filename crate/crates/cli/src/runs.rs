//! Classification and census runs over a range of Picard indices, written
//! in batches so that an interrupted run can continue from its checkpoint.

use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use itertools::Itertools;
use kstar::classify::{
    accumulate, census_csv_header, census_csv_row, classify_fwpp_range, classify_nontoric_range, count_range, fwpp_csv_row,
    nontoric_csv_row, record_csv_header, CaseCounts, Checkpoint, CsvSink, FwppRecord, NontoricCase,
};
use log::info;
use serde::Serialize;

use crate::{Failure, Format, Outcome};

/// Indices per batch; the checkpoint advances once per batch.
const BATCH: u64 = 250;

pub enum Job {
    Toric,
    Nontoric(Vec<NontoricCase>),
    Census,
}

impl Job {
    /// Identifies the run in its checkpoint.
    fn name(&self) -> String {
        match self {
            Job::Toric => "classify-toric".into(),
            Job::Nontoric(cases) if cases.is_empty() => "classify-nontoric".into(),
            Job::Nontoric(cases) => format!("classify-nontoric --cases {}", cases.iter().join(",")),
            Job::Census => "census".into(),
        }
    }

    fn header(&self) -> Vec<String> {
        match self {
            Job::Census => census_csv_header(),
            _ => record_csv_header(),
        }
    }
}

enum Sink {
    Csv(Box<CsvSink<Box<dyn Write>>>),
    Lines(BufWriter<Box<dyn Write>>),
}

impl Sink {
    fn emit<T: Serialize>(&mut self, items: &[T], csv_row: impl Fn(&T) -> Vec<String>) -> io::Result<()> {
        match self {
            Sink::Csv(w) => w.write_batch(items.iter().map(csv_row)),
            Sink::Lines(w) => {
                for item in items {
                    serde_json::to_writer(&mut *w, item)?;
                    w.write_all(b"\n")?;
                }
                w.flush()
            }
        }
    }
}

#[derive(Serialize)]
struct ToricLine<'a> {
    picard_index: u64,
    case: &'static str,
    #[serde(flatten)]
    record: &'a FwppRecord,
}

pub fn run(job: Job, max_index: u64, format: Format, out: Option<PathBuf>, resume: Option<PathBuf>) -> Outcome {
    let name = job.name();
    let checkpoint = match &resume {
        Some(path) => Checkpoint::load(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => None,
    };
    if let Some(cp) = &checkpoint {
        if cp.command != name {
            return Err(Failure::Input(format!("checkpoint belongs to `{}`, not `{name}`", cp.command)));
        }
        info!("continuing `{name}` after index {}", cp.completed);
    }
    let start = checkpoint.as_ref().map_or(1, |cp| cp.completed + 1);
    let mut cumulative = checkpoint.map(|cp| cp.cumulative).unwrap_or_default();
    let continuing = start > 1;
    let writer: Box<dyn Write> = match &out {
        Some(path) if continuing => Box::new(OpenOptions::new().append(true).open(path)?),
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    };
    let mut sink = match format {
        Format::Csv => Sink::Csv(Box::new(CsvSink::new(writer, (!continuing).then(|| job.header()).as_deref())?)),
        Format::Json => Sink::Lines(BufWriter::new(writer)),
    };

    let mut lo = start;
    while lo <= max_index {
        let hi = (lo + BATCH - 1).min(max_index);
        match &job {
            Job::Toric => {
                let recs = classify_fwpp_range(lo..=hi).into_iter().flatten().collect_vec();
                cumulative.toric += recs.len() as u64;
                let lines = recs.iter().map(|r| ToricLine { picard_index: r.picard_index(), case: "toric", record: r }).collect_vec();
                sink.emit(&lines, |l| fwpp_csv_row(l.record))?;
            }
            Job::Nontoric(cases) => {
                let recs = classify_nontoric_range(lo..=hi)?
                    .into_iter()
                    .flatten()
                    .filter(|r| cases.is_empty() || cases.contains(&r.case))
                    .collect_vec();
                for r in &recs {
                    cumulative.nontoric[r.case.index()] += 1;
                }
                sink.emit(&recs, nontoric_csv_row)?;
            }
            Job::Census => {
                let rows = accumulate(lo, cumulative, count_range(lo..=hi)?);
                cumulative = rows.last().map_or(cumulative, |r| r.cumulative);
                sink.emit(&rows, census_csv_row)?;
            }
        }
        if let Some(path) = &resume {
            Checkpoint { command: name.clone(), max_index, completed: hi, cumulative }.save(path)?;
        }
        info!("`{name}`: indices up to {hi} done");
        lo = hi + 1;
    }
    log_totals(&name, &cumulative);
    Ok(())
}

fn log_totals(name: &str, c: &CaseCounts) {
    let cases = NontoricCase::ALL.iter().map(|k| format!("{k} {}", c.get(*k))).join(", ");
    info!("`{name}` totals: toric {}, non-toric {} ({cases})", c.toric, c.nontoric_total());
}
