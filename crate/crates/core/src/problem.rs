//! Decision encoding, objective evaluation, constraint violations and
//! constrained Pareto dominance.

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::channel::sum_user_rate;
use crate::energy::total_flight_energy;
use crate::error::{invalid, Error, Result};
use crate::scenario::{Position3, Scenario};
use crate::semantic::{cluster_snrs, rate_from_similarity};
use crate::SystemParams;

/// Cluster label of every UAV, kept canonical: labels are `0..n_clusters`,
/// every label is used, and relabelling preserves the relative order of the
/// raw labels it was built from. Serialized 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ClusterAssignment {
    labels: Vec<usize>,
    n_clusters: usize,
}

impl ClusterAssignment {
    /// Canonicalizes arbitrary raw labels.
    pub fn from_labels(raw: &[usize]) -> Result<Self> {
        if raw.is_empty() {
            return Err(invalid!("cluster assignment needs at least one UAV"));
        }
        let mut distinct: Vec<usize> = raw.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let labels = raw
            .iter()
            .map(|l| distinct.binary_search(l).expect("label is present"))
            .collect();
        Ok(Self {
            labels,
            n_clusters: distinct.len(),
        })
    }

    /// Every UAV in its own cluster.
    pub fn singletons(n_uavs: usize) -> Self {
        Self {
            labels: (0..n_uavs).collect(),
            n_clusters: n_uavs,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, uav: usize) -> usize {
        self.labels[uav]
    }

    pub fn n_uavs(&self) -> usize {
        self.labels.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    /// Member UAVs of every cluster, in label order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.n_clusters];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Union of clusters `a` and `b`. The merged cluster takes the lower of
    /// the two labels and labels above the higher one shift down by one.
    pub fn merged(&self, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= self.n_clusters || b >= self.n_clusters {
            return Err(Error::Contract(format!(
                "cannot merge clusters {a} and {b} of {}",
                self.n_clusters
            )));
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let labels = self
            .labels
            .iter()
            .map(|&c| match c {
                c if c == hi => lo,
                c if c > hi => c - 1,
                c => c,
            })
            .collect();
        Ok(Self {
            labels,
            n_clusters: self.n_clusters - 1,
        })
    }

    /// Structural constraints: labels in range, no empty cluster, every UAV
    /// in exactly one cluster.
    pub fn check_structure(&self) -> Result<()> {
        let mut sizes = alloc::vec![0usize; self.n_clusters];
        for &c in &self.labels {
            if c >= self.n_clusters || self.n_clusters > self.labels.len() {
                return Err(Error::Contract(format!("cluster label {c} out of range")));
            }
            sizes[c] += 1;
        }
        if sizes.contains(&0) {
            return Err(Error::Contract("empty cluster".into()));
        }
        if sizes.iter().sum::<usize>() != self.labels.len() {
            return Err(Error::Contract("cluster sizes do not cover the fleet".into()));
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for ClusterAssignment {
    type Error = Error;

    fn try_from(one_based: Vec<usize>) -> Result<Self> {
        if one_based.contains(&0) {
            return Err(invalid!("cluster labels are 1-based"));
        }
        let n = one_based.len();
        if one_based.iter().any(|&c| c > n) {
            return Err(invalid!("cluster label exceeds the number of UAVs"));
        }
        let raw: Vec<usize> = one_based.iter().map(|c| c - 1).collect();
        Self::from_labels(&raw)
    }
}

impl From<ClusterAssignment> for Vec<usize> {
    fn from(c: ClusterAssignment) -> Self {
        c.labels.iter().map(|l| l + 1).collect()
    }
}

/// `(f1, f2, f3)`: user sum rate (bps, max), semantic rate (suts/s, max),
/// flight energy (J, min).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveTriple {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl ObjectiveTriple {
    pub fn new(f1: f64, f2: f64, f3: f64) -> Self {
        Self { f1, f2, f3 }
    }

    /// All three as minimization targets: `(-f1, -f2, f3)`.
    pub fn as_minimization(&self) -> [f64; 3] {
        [-self.f1, -self.f2, self.f3]
    }

    pub fn is_finite(&self) -> bool {
        self.f1.is_finite() && self.f2.is_finite() && self.f3.is_finite()
    }
}

/// Pareto dominance on `(f1, f2, -f3)`, all maximized.
pub fn pareto_dominates(a: &ObjectiveTriple, b: &ObjectiveTriple) -> bool {
    let (a, b) = (a.as_minimization(), b.as_minimization());
    a.iter().zip(&b).all(|(x, y)| x <= y) && a.iter().zip(&b).any(|(x, y)| x < y)
}

/// Feasibility-first dominance: a feasible point beats an infeasible one,
/// two infeasible points compare by violation, two feasible ones by Pareto
/// dominance.
pub fn constrained_dominates(
    a: &ObjectiveTriple,
    a_violation: f64,
    b: &ObjectiveTriple,
    b_violation: f64,
) -> bool {
    match (a_violation <= 0.0, b_violation <= 0.0) {
        (true, true) => pareto_dominates(a, b),
        (true, false) => true,
        (false, true) => false,
        (false, false) => a_violation < b_violation,
    }
}

/// How constraint C7 gates the symbol-count optimization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum C7Mode {
    /// Always optimize `k` over `[k_min, k_max]`.
    #[default]
    AlwaysOptimize,
    /// Optimize `k` only while `f1 > f2`; otherwise leave it untouched.
    LiteralCompare,
}

/// Per-constraint violation amounts, each already normalized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    /// C1: summed out-of-region distance over UAVs, per axis extent.
    pub region: f64,
    /// C2: summed `(d_min - d) / d_min` over UAV pairs closer than `d_min`.
    pub separation: f64,
    /// C6: summed `ξ_th - ξ_c` over clusters below the similarity threshold.
    pub similarity: f64,
}

impl ViolationReport {
    pub fn total(&self) -> f64 {
        self.region + self.separation + self.similarity
    }
}

/// One candidate deployment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    #[serde(rename = "c")]
    pub assignment: ClusterAssignment,
    #[serde(rename = "Q")]
    pub positions: Vec<Position3>,
    #[serde(rename = "w")]
    pub weights: Vec<f64>,
    /// Symbols per word, one entry per cluster.
    #[serde(rename = "k")]
    pub symbols: Vec<u32>,
    pub objectives: Option<ObjectiveTriple>,
    pub violation: f64,
}

impl Individual {
    pub fn new(
        assignment: ClusterAssignment,
        positions: Vec<Position3>,
        weights: Vec<f64>,
        symbols: Vec<u32>,
    ) -> Result<Self> {
        let ind = Self {
            assignment,
            positions,
            weights,
            symbols,
            objectives: None,
            violation: 0.0,
        };
        ind.check_shape()?;
        Ok(ind)
    }

    pub fn check_shape(&self) -> Result<()> {
        self.assignment.check_structure()?;
        let n = self.assignment.n_uavs();
        if self.positions.len() != n || self.weights.len() != n {
            return Err(Error::Contract(format!(
                "{} UAVs but {} positions and {} weights",
                n,
                self.positions.len(),
                self.weights.len()
            )));
        }
        if self.symbols.len() != self.assignment.n_clusters() {
            return Err(Error::Contract(format!(
                "{} clusters but {} symbol counts",
                self.assignment.n_clusters(),
                self.symbols.len()
            )));
        }
        Ok(())
    }

    /// Cached objectives. Panics if the individual was never evaluated.
    pub fn fitness(&self) -> &ObjectiveTriple {
        self.objectives
            .as_ref()
            .expect("individual has not been evaluated")
    }

    pub fn is_feasible(&self) -> bool {
        self.violation <= 0.0
    }

    /// Evaluates and caches objectives and total violation.
    pub fn evaluate(&mut self, scenario: &Scenario, params: &SystemParams) -> Result<ObjectiveTriple> {
        let eval = evaluate(self, scenario, params)?;
        self.objectives = Some(eval.objectives);
        self.violation = eval.violations.total();
        Ok(eval.objectives)
    }

    /// Drops cached results after the decision variables change.
    pub fn invalidate(&mut self) {
        self.objectives = None;
        self.violation = 0.0;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub objectives: ObjectiveTriple,
    pub violations: ViolationReport,
}

/// Objectives and constraint report of an individual.
pub fn evaluate(ind: &Individual, scenario: &Scenario, params: &SystemParams) -> Result<Evaluation> {
    ind.check_shape()?;
    if ind.assignment.n_uavs() != scenario.n_uavs() {
        return Err(Error::Contract(format!(
            "individual has {} UAVs, scenario has {}",
            ind.assignment.n_uavs(),
            scenario.n_uavs()
        )));
    }
    let f1 = sum_user_rate(scenario, &ind.positions, params)?;
    let snrs = cluster_snrs(scenario, &ind.assignment, &ind.positions, &ind.weights, params)?;
    let mut f2 = 0.0;
    let mut similarity_shortfall = 0.0;
    for (&snr, &k) in snrs.iter().zip(&ind.symbols) {
        let xi = params.similarity.similarity(k, snr)?;
        f2 += rate_from_similarity(k, xi, params);
        if xi < params.xi_threshold {
            similarity_shortfall += params.xi_threshold - xi;
        }
    }
    let f3 = total_flight_energy(scenario, &ind.positions, params)?;
    let objectives = ObjectiveTriple { f1, f2, f3 };
    if !objectives.is_finite() {
        return Err(Error::NonFinite(format!("objectives {objectives:?}")));
    }
    let mut violations = placement_violation(&ind.positions, scenario, params);
    violations.similarity = similarity_shortfall;
    Ok(Evaluation {
        objectives,
        violations,
    })
}

fn placement_violation(
    positions: &[Position3],
    scenario: &Scenario,
    params: &SystemParams,
) -> ViolationReport {
    let bounds = scenario.bounds();
    let region = positions.iter().map(|p| bounds.normalized_excess(p)).sum();
    let mut separation = 0.0;
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let d = positions[i].distance(&positions[j]);
            if d < params.d_min {
                separation += (params.d_min - d) / params.d_min;
            }
        }
    }
    ViolationReport {
        region,
        separation,
        similarity: 0.0,
    }
}

/// Constraint report alone.
pub fn violations(ind: &Individual, scenario: &Scenario, params: &SystemParams) -> Result<ViolationReport> {
    evaluate(ind, scenario, params).map(|e| e.violations)
}

/// Constrained dominance between two evaluated individuals.
pub fn dominates(a: &Individual, b: &Individual) -> bool {
    constrained_dominates(a.fitness(), a.violation, b.fitness(), b.violation)
}
