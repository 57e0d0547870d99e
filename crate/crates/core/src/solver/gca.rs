//! Greedy clustering: repeatedly apply the cluster merge that raises the
//! semantic rate the most.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::Individual;
use crate::scenario::Scenario;
use crate::semantic::sum_semantic_rate;
use crate::SystemParams;

/// What a candidate merge's `f2` is compared against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GcaBaseline {
    /// The individual's `f2` from before the first merge of this step.
    Stale,
    /// The `f2` after the most recent applied merge.
    #[default]
    Refreshed,
}

/// One applied merge, labels as they were before the merge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Merge {
    pub kept: usize,
    pub absorbed: usize,
    pub f2_before: f64,
    pub f2_after: f64,
}

/// `ind` with clusters `a` and `b` united. The survivor takes the lower
/// label and keeps that cluster's symbol count. Not evaluated.
pub fn merge_clusters(ind: &Individual, a: usize, b: usize) -> Result<Individual> {
    let assignment = ind.assignment.merged(a, b)?;
    let mut symbols = ind.symbols.clone();
    symbols.remove(a.max(b));
    Individual::new(assignment, ind.positions.clone(), ind.weights.clone(), symbols)
}

fn f2_of(ind: &Individual, scenario: &Scenario, params: &SystemParams) -> Result<f64> {
    sum_semantic_rate(
        scenario,
        &ind.assignment,
        &ind.positions,
        &ind.weights,
        &ind.symbols,
        params,
    )
}

/// The merge `(a, b)`, `a < b`, with the highest resulting `f2`, scanning
/// pairs lexicographically so the first maximum wins. `None` with fewer
/// than two clusters.
pub fn best_merge(
    ind: &Individual,
    scenario: &Scenario,
    params: &SystemParams,
) -> Result<Option<(usize, usize, f64)>> {
    let n = ind.assignment.n_clusters();
    let mut best: Option<(usize, usize, f64)> = None;
    for a in 0..n {
        for b in a + 1..n {
            let f2 = f2_of(&merge_clusters(ind, a, b)?, scenario, params)?;
            if best.is_none_or(|(_, _, f)| f2 > f) {
                best = Some((a, b, f2));
            }
        }
    }
    Ok(best)
}

/// Greedy merging of one individual. Returns the (re-evaluated if changed)
/// individual and the merges applied, in order.
pub fn gca_individual(
    ind: &Individual,
    scenario: &Scenario,
    params: &SystemParams,
    baseline: GcaBaseline,
) -> Result<(Individual, Vec<Merge>)> {
    let start = match ind.objectives {
        Some(o) => o.f2,
        None => f2_of(ind, scenario, params)?,
    };
    let mut current = ind.clone();
    let mut current_f2 = start;
    let mut merges = Vec::new();
    while let Some((a, b, f2)) = best_merge(&current, scenario, params)? {
        let reference = match baseline {
            GcaBaseline::Stale => start,
            GcaBaseline::Refreshed => current_f2,
        };
        if f2 - reference <= 0.0 {
            break;
        }
        current = merge_clusters(&current, a, b)?;
        merges.push(Merge {
            kept: a,
            absorbed: b,
            f2_before: current_f2,
            f2_after: f2,
        });
        current_f2 = f2;
    }
    if !merges.is_empty() || current.objectives.is_none() {
        current.evaluate(scenario, params)?;
    }
    Ok((current, merges))
}

pub fn gca_step(
    population: Vec<Individual>,
    scenario: &Scenario,
    params: &SystemParams,
    baseline: GcaBaseline,
) -> Result<Vec<Individual>> {
    population
        .iter()
        .map(|ind| gca_individual(ind, scenario, params, baseline).map(|(out, _)| out))
        .collect()
}
