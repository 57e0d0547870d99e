//! Greedy symbol optimization: per-cluster exhaustive search over `k`.

use alloc::vec::Vec;

use crate::error::Result;
use crate::problem::{C7Mode, Individual};
use crate::scenario::Scenario;
use crate::semantic::{cluster_snrs, total_semantic_rate};
use crate::SystemParams;

/// Sweeps clusters in order, setting each `k_i` to the value in
/// `[k_min, k_max]` that maximizes `f2` with the other entries fixed (ties
/// to the smaller `k`). Values whose similarity falls below the threshold
/// are skipped unless none qualifies, in which case the most similar one
/// is taken. Under [`C7Mode::LiteralCompare`] the individual is left alone
/// unless `f1 > f2`.
pub fn gso_individual(
    ind: &Individual,
    scenario: &Scenario,
    params: &SystemParams,
    c7: C7Mode,
) -> Result<Individual> {
    let mut out = ind.clone();
    if c7 == C7Mode::LiteralCompare {
        let obj = match out.objectives {
            Some(o) => o,
            None => out.evaluate(scenario, params)?,
        };
        if obj.f1 <= obj.f2 {
            return Ok(out);
        }
    }
    let snrs = cluster_snrs(scenario, &ind.assignment, &ind.positions, &ind.weights, params)?;
    let mut symbols: Vec<u32> = ind.symbols.clone();
    for i in 0..symbols.len() {
        let mut best: Option<(u32, f64)> = None;
        let mut most_similar: Option<(u32, f64)> = None;
        for k in params.k_min..=params.k_max {
            symbols[i] = k;
            let f2 = total_semantic_rate(&snrs, &symbols, params)?;
            let xi = params.similarity.similarity(k, snrs[i])?;
            if xi >= params.xi_threshold && best.is_none_or(|(_, f)| f2 > f) {
                best = Some((k, f2));
            }
            if most_similar.is_none_or(|(_, x)| xi > x) {
                most_similar = Some((k, xi));
            }
        }
        symbols[i] = best.or(most_similar).expect("k range is non-empty").0;
    }
    if symbols != out.symbols || out.objectives.is_none() {
        out.symbols = symbols;
        out.evaluate(scenario, params)?;
    }
    Ok(out)
}

pub fn gso_step(
    population: Vec<Individual>,
    scenario: &Scenario,
    params: &SystemParams,
    c7: C7Mode,
) -> Result<Vec<Individual>> {
    population
        .iter()
        .map(|ind| gso_individual(ind, scenario, params, c7))
        .collect()
}
