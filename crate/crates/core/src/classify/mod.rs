//! Exhaustive classification by Picard index: fake weighted projective
//! planes and non-toric log del Pezzo K*-surfaces of Picard number one.
//!
//! Every index is handled independently, so ranges are computed in parallel
//! and merged in index order.

mod fwpp;
mod nontoric;
mod output;

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use fwpp::{classify_fwpp, fwpp_key, FwppRecord};
pub use nontoric::{classify_nontoric, NontoricCase, NontoricRecord};
pub use output::{census_csv_header, census_csv_row, fwpp_csv_row, nontoric_csv_row, record_csv_header, Checkpoint, CsvSink};

use crate::Result;

/// Counts of one index or of a cumulative range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub toric: u64,
    /// Indexed by [`NontoricCase::index`].
    pub nontoric: [u64; 8],
}

impl CaseCounts {
    pub fn nontoric_total(&self) -> u64 {
        self.nontoric.iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.toric + self.nontoric_total()
    }

    pub fn get(&self, case: NontoricCase) -> u64 {
        self.nontoric[case.index()]
    }

    fn add(&mut self, other: &CaseCounts) {
        self.toric += other.toric;
        for (a, b) in self.nontoric.iter_mut().zip(&other.nontoric) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub picard_index: u64,
    pub counts: CaseCounts,
    pub cumulative: CaseCounts,
}

/// Toric records of every index in `range`, grouped by index.
pub fn classify_fwpp_range(range: RangeInclusive<u64>) -> Vec<Vec<FwppRecord>> {
    range.into_par_iter().map(classify_fwpp).collect()
}

pub fn classify_nontoric_range(range: RangeInclusive<u64>) -> Result<Vec<Vec<NontoricRecord>>> {
    range.into_par_iter().map(classify_nontoric).collect()
}

/// Per-index counts of both engines for `range`.
pub fn count_range(range: RangeInclusive<u64>) -> Result<Vec<CaseCounts>> {
    range
        .into_par_iter()
        .map(|iota| {
            let mut counts = CaseCounts { toric: classify_fwpp(iota).len() as u64, ..Default::default() };
            for rec in classify_nontoric(iota)? {
                counts.nontoric[rec.case.index()] += 1;
            }
            Ok(counts)
        })
        .collect()
}

/// Per-index and cumulative counts for all indices up to `max_iota`.
pub fn census(max_iota: u64) -> Result<Vec<CensusRow>> {
    assert!(max_iota >= 1, "Picard index must be positive");
    let counts = count_range(1..=max_iota)?;
    Ok(accumulate(1, CaseCounts::default(), counts))
}

/// Turns per-index counts starting at `first` into census rows, continuing a
/// running total `start`.
pub fn accumulate(first: u64, start: CaseCounts, counts: Vec<CaseCounts>) -> Vec<CensusRow> {
    let mut running = start;
    counts
        .into_iter()
        .zip(first..)
        .map(|(counts, picard_index)| {
            running.add(&counts);
            CensusRow { picard_index, counts, cumulative: running }
        })
        .collect()
}
