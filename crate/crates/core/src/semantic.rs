//! Semantic similarity surrogate and semantic transmission rate.
//!
//! Similarity is a per-`k` logistic curve in SNR (dB) rising from a floor
//! `a_k` to 1 with midpoint `b_k` and slope `c_k`. Rows are interpolated
//! linearly in `k`.

use alloc::format;
use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::beamforming::cluster_snr;
use crate::error::{invalid, Error, Result};
use crate::params::linear_to_db;
use crate::problem::ClusterAssignment;
use crate::scenario::{Position3, Scenario};
use crate::SystemParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityRow {
    pub k: u32,
    /// Similarity floor at vanishing SNR.
    pub a: f64,
    /// SNR in dB at the logistic midpoint.
    pub b: f64,
    /// Logistic slope per dB.
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<SimilarityRow>", into = "Vec<SimilarityRow>")]
pub struct SimilarityModel {
    rows: Vec<SimilarityRow>,
}

impl TryFrom<Vec<SimilarityRow>> for SimilarityModel {
    type Error = Error;

    fn try_from(rows: Vec<SimilarityRow>) -> Result<Self> {
        SimilarityModel::new(rows)
    }
}

impl From<SimilarityModel> for Vec<SimilarityRow> {
    fn from(m: SimilarityModel) -> Self {
        m.rows
    }
}

impl Default for SimilarityModel {
    fn default() -> Self {
        let rows = (1..=20u32)
            .map(|k| {
                let t = (k - 1) as f64 / 19.0;
                SimilarityRow {
                    k,
                    a: 0.1 + 0.28 * t,
                    b: 12.0 - 16.0 * t,
                    c: 0.35,
                }
            })
            .collect();
        Self { rows }
    }
}

impl SimilarityModel {
    /// Sorts rows by `k` and rejects tables that would make similarity
    /// decrease in `k` or leave `[0, 1]`.
    pub fn new(mut rows: Vec<SimilarityRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(invalid!("similarity table is empty"));
        }
        rows.sort_by_key(|r| r.k);
        for r in &rows {
            if r.k == 0 {
                return Err(invalid!("similarity row with k = 0"));
            }
            if !(0.0..=1.0).contains(&r.a) {
                return Err(invalid!(
                    "similarity floor a = {} outside [0, 1] at k = {}",
                    r.a,
                    r.k
                ));
            }
            if !r.b.is_finite() {
                return Err(invalid!("similarity midpoint must be finite at k = {}", r.k));
            }
            if !(r.c > 0.0 && r.c.is_finite()) {
                return Err(invalid!("similarity slope must be positive at k = {}", r.k));
            }
        }
        for pair in rows.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            if lo.k == hi.k {
                return Err(invalid!("duplicate similarity row for k = {}", lo.k));
            }
            if hi.a < lo.a {
                return Err(invalid!(
                    "similarity floor decreases between k = {} and {}",
                    lo.k,
                    hi.k
                ));
            }
            if hi.b > lo.b {
                return Err(invalid!(
                    "similarity midpoint increases between k = {} and {}",
                    lo.k,
                    hi.k
                ));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[SimilarityRow] {
        &self.rows
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.rows.clone()).map(|_| ())
    }

    pub fn covers(&self, k_min: u32, k_max: u32) -> bool {
        let first = self.rows[0].k;
        let last = self.rows[self.rows.len() - 1].k;
        first <= k_min && k_max <= last
    }

    /// Logistic parameters `(a, b, c)` at `k`, interpolated between rows.
    pub fn params_at(&self, k: u32) -> Result<(f64, f64, f64)> {
        let idx = self.rows.partition_point(|r| r.k < k);
        match self.rows.get(idx) {
            Some(r) if r.k == k => Ok((r.a, r.b, r.c)),
            Some(hi) if idx > 0 => {
                let lo = self.rows[idx - 1];
                let t = (k - lo.k) as f64 / (hi.k - lo.k) as f64;
                let lerp = |x: f64, y: f64| x + t * (y - x);
                Ok((lerp(lo.a, hi.a), lerp(lo.b, hi.b), lerp(lo.c, hi.c)))
            }
            _ => Err(Error::Contract(format!(
                "k = {k} is outside the similarity table"
            ))),
        }
    }

    /// Similarity `ξ(k, snr)` for a linear SNR. Zero SNR yields the floor.
    pub fn similarity(&self, k: u32, snr: f64) -> Result<f64> {
        if !(snr >= 0.0) {
            return Err(Error::Contract(format!("SNR must be non-negative, got {snr}")));
        }
        let (a, b, c) = self.params_at(k)?;
        if snr == 0.0 {
            return Ok(a);
        }
        let gamma_db = linear_to_db(snr);
        let logistic = 1.0 / (1.0 + (-c * (gamma_db - b)).exp());
        Ok(a + (1.0 - a) * logistic)
    }
}

pub fn semantic_similarity(model: &SimilarityModel, k: u32, snr: f64) -> Result<f64> {
    model.similarity(k, snr)
}

/// `B·I/(k·L)·ξ`, suts/s.
pub fn semantic_rate(model: &SimilarityModel, k: u32, snr: f64, params: &SystemParams) -> Result<f64> {
    let xi = model.similarity(k, snr)?;
    Ok(rate_from_similarity(k, xi, params))
}

pub fn rate_from_similarity(k: u32, xi: f64, params: &SystemParams) -> f64 {
    params.bandwidth_hz * params.info_per_sentence / (k as f64 * params.words_per_sentence) * xi
}

/// SNR at the BS of every cluster, in cluster order.
pub fn cluster_snrs(
    scenario: &Scenario,
    assignment: &ClusterAssignment,
    positions: &[Position3],
    weights: &[f64],
    params: &SystemParams,
) -> Result<Vec<f64>> {
    let n = scenario.n_uavs();
    if assignment.n_uavs() != n || positions.len() != n || weights.len() != n {
        return Err(Error::Contract(format!(
            "decision vectors do not match the fleet size {n}"
        )));
    }
    let powers: Vec<f64> = scenario.uavs().iter().map(|v| v.tx_power).collect();
    let bs = scenario.bs_pos();
    assignment
        .clusters()
        .iter()
        .map(|members| cluster_snr(members, positions, weights, &powers, &bs, params))
        .collect()
}

/// `f2` given per-cluster SNRs and symbol counts.
pub fn total_semantic_rate(snrs: &[f64], symbols: &[u32], params: &SystemParams) -> Result<f64> {
    if snrs.len() != symbols.len() {
        return Err(Error::Contract(format!(
            "{} clusters but {} symbol counts",
            snrs.len(),
            symbols.len()
        )));
    }
    let mut total = 0.0;
    for (&snr, &k) in snrs.iter().zip(symbols) {
        total += semantic_rate(&params.similarity, k, snr, params)?;
    }
    Ok(total)
}

/// Objective `f2`: summed semantic rate of every cluster.
pub fn sum_semantic_rate(
    scenario: &Scenario,
    assignment: &ClusterAssignment,
    positions: &[Position3],
    weights: &[f64],
    symbols: &[u32],
    params: &SystemParams,
) -> Result<f64> {
    let snrs = cluster_snrs(scenario, assignment, positions, weights, params)?;
    total_semantic_rate(&snrs, symbols, params)
}
