//! The five end-to-end protocols and the reports they produce.
//!
//! Every experiment takes a [`Device`](crate::Device) and [`RunSettings`].
//! Run `r` draws from `derive(seed, r)`, and each circuit inside a run
//! derives again from that, so reports depend only on the settings.

mod bell;
mod dense_coding;
mod mermin;
mod prime;
mod qft;

pub use bell::{
    bell_circuits, bell_correlations_exact, bell_experiment, bell_prep, bell_statistic, bell_test, BellResult,
    BELL_ANGLES,
};
pub use dense_coding::{dense_coding, dense_coding_circuit, dense_coding_experiment, MESSAGES};
pub use mermin::{ghz_preparation, ghz_target_state, mermin_test};
pub use prime::{
    direct_prime_state, exact_prime_observables, prime_counts, prime_experiment, prime_observables,
    prime_state_circuit, prime_theory, PrimeCounts, PrimeObservables, PRIME_OUTCOMES,
};
pub use qft::{qft_circuit, qft_expected_outcome, qft_experiment, qft_verification, qft_verification_circuit};

use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::noise::NoiseModel;
use crate::stats::Estimate;
use crate::{Device, Error, Result};

/// Repetition structure shared by all experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub shots: u64,
    pub runs: usize,
    pub seed: u64,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            shots: 8192,
            runs: 5,
            seed: 0,
        }
    }
}

impl RunSettings {
    pub fn new(shots: u64, runs: usize, seed: u64) -> Result<RunSettings> {
        let s = RunSettings { shots, runs, seed };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        if self.runs == 0 {
            return Err(Error::InvalidArgument(String::from("runs must be at least 1")));
        }
        Ok(())
    }

    /// Seed of run `r`.
    pub fn run_seed(&self, r: usize) -> u64 {
        crate::rng::derive(self.seed, r as u64)
    }
}

/// A reported quantity: mean and sample standard deviation over runs, with
/// the ideal value when one exists.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Quantity {
    pub name: String,
    pub mean: f64,
    pub std: f64,
    pub expected: Option<f64>,
}

impl Quantity {
    pub fn new(name: impl Into<String>, estimate: Estimate, expected: Option<f64>) -> Quantity {
        Quantity {
            name: name.into(),
            mean: estimate.value,
            std: estimate.std,
            expected,
        }
    }

    pub fn estimate(&self) -> Estimate {
        Estimate::new(self.mean, self.std)
    }
}

/// A grid of estimates such as outcome probabilities per input.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Table {
    pub title: String,
    pub row_header: String,
    pub column_header: String,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<Estimate>>,
}

impl Table {
    pub fn cell(&self, row: &str, column: &str) -> Option<Estimate> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.columns.iter().position(|x| x == column)?;
        Some(self.cells[r][c])
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Flag {
    pub name: String,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Metadata {
    pub backend: String,
    pub noise: NoiseModel,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ExperimentReport {
    pub name: String,
    pub runs: usize,
    pub shots: u64,
    pub metadata: Metadata,
    pub quantities: Vec<Quantity>,
    pub tables: Vec<Table>,
    pub flags: Vec<Flag>,
}

impl ExperimentReport {
    pub(crate) fn new(name: impl Into<String>, device: &Device, settings: &RunSettings) -> ExperimentReport {
        ExperimentReport {
            name: name.into(),
            runs: settings.runs,
            shots: settings.shots,
            metadata: Metadata {
                backend: device.name.clone(),
                noise: device.noise,
                seed: settings.seed,
            },
            quantities: Vec::new(),
            tables: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn quantity(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|f| f.name == name).map(|f| f.value)
    }

    pub(crate) fn push_quantity(&mut self, name: impl Into<String>, estimate: Estimate, expected: Option<f64>) {
        self.quantities.push(Quantity::new(name, estimate, expected));
    }

    pub(crate) fn push_flag(&mut self, name: impl Into<String>, value: bool) {
        self.flags.push(Flag {
            name: name.into(),
            value,
        });
    }
}

/// Outcome-frequency table aggregated over runs: `per_run[r][row][col]`.
pub(crate) fn frequency_table(
    title: &str,
    row_header: &str,
    column_header: &str,
    rows: Vec<String>,
    columns: Vec<String>,
    per_run: &[Vec<Vec<f64>>],
) -> Table {
    let cells = (0..rows.len())
        .map(|i| {
            (0..columns.len())
                .map(|j| {
                    let vals: Vec<f64> = per_run.iter().map(|run| run[i][j]).collect();
                    crate::stats::aggregate(&vals)
                })
                .collect()
        })
        .collect();
    Table {
        title: String::from(title),
        row_header: String::from(row_header),
        column_header: String::from(column_header),
        rows,
        columns,
        cells,
    }
}

/// All bitstrings of a given width in ascending order.
pub(crate) fn all_bitstrings(width: usize) -> Vec<String> {
    (0..1usize << width)
        .map(|i| crate::state::format_bitstring(i, width))
        .collect()
}
