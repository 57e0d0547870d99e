//! Run directory layout.

use std::fs;
use std::path::{Path, PathBuf};

use dcsf_core::advisor::AdvisorMode;
use dcsf_core::indicators::{Normalization, HV_REFERENCE};
use dcsf_core::solver::{HistoryRecord, ParamStep, RunMode};
use dcsf_core::{Individual, ObjectiveTriple};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::files::{read_json, write_json, RunConfig};

pub const CONFIG: &str = "config.json";
pub const SCENARIO: &str = "scenario.json";
pub const HISTORY: &str = "history.csv";
pub const PARAMS: &str = "params.csv";
pub const PARETO: &str = "pareto.json";
pub const DEPLOYMENT: &str = "deployment.json";
pub const REPORT: &str = "report.json";

/// Resolved inputs of a run, as written to `config.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub mode: RunMode,
    /// Advisor actually consulted (an unreachable LLM shows up as fallback).
    pub advisor: AdvisorMode,
    #[serde(flatten)]
    pub config: RunConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub run_id: String,
    pub mode: RunMode,
    pub advisor: AdvisorMode,
    pub seed: u64,
    pub wall_time_s: f64,
    pub front_size: usize,
    /// Knee point of the final feasible front, if the front is non-empty.
    pub knee: Option<ObjectiveTriple>,
    /// Hypervolume of the final feasible front, objectives normalized by
    /// `normalization` and bounded by `hv_reference`.
    pub hypervolume: f64,
    pub hv_reference: [f64; 3],
    pub normalization: Normalization,
    /// LLM calls answered and fallen back, for the LLM advisor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub llm_calls: Option<(usize, usize)>,
    pub artifacts: Vec<PathBuf>,
}

impl RunReport {
    pub fn reference() -> [f64; 3] {
        [HV_REFERENCE; 3]
    }
}

/// CSV with a header row taken from the field names of `T`.
pub fn csv_text<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    finish_csv(w)
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

pub fn history_csv(history: &[HistoryRecord]) -> Result<String> {
    csv_text(history)
}

pub fn params_csv(steps: &[ParamStep]) -> Result<String> {
    csv_text(steps)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::write(path, e))
}

/// A finished run read back from disk.
pub struct RunDir {
    pub dir: PathBuf,
    pub report: RunReport,
    pub front: Vec<Individual>,
}

impl RunDir {
    pub fn open(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(CliError::Input(format!(
                "{} is not a run directory",
                dir.display()
            )));
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            report: read_json(&dir.join(REPORT))?,
            front: read_json(&dir.join(PARETO))?,
        })
    }

    pub fn objectives(&self) -> Vec<ObjectiveTriple> {
        self.front.iter().filter_map(|i| i.objectives).collect()
    }
}

pub(crate) fn save(dir: &Path, name: &str, value: &impl Serialize) -> Result<PathBuf> {
    let path = dir.join(name);
    write_json(&path, value)?;
    Ok(PathBuf::from(name))
}
