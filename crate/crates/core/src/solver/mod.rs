//! Alternating optimization: greedy cluster merging, NSGA-II over positions
//! and weights with advisor-tuned probabilities, greedy symbol selection,
//! and elitist truncation — plus the two baselines.

pub mod gca;
pub mod gso;
pub mod init;
pub mod monolithic;
pub mod nsga2;
pub mod operators;
pub mod sorting;

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::advisor::{
    max_spread_metric, spacing_metric, Advisor, AdvisorInput, AdvisorMode, DiagnosticWindow, ParamSource,
    StaticAdvisor,
};
use crate::error::{invalid, Result};
use crate::indicators::{front_hypervolume, Normalization};
use crate::problem::{C7Mode, Individual, ObjectiveTriple};
use crate::scenario::Scenario;
use crate::SystemParams;

pub use gca::{gca_individual, gca_step, GcaBaseline};
pub use gso::{gso_individual, gso_step};
pub use init::initialize_population;
pub use nsga2::{nsga2_generation, Variation};
pub use sorting::{crowding_distance, nondominated_sort, Ranking};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub population_size: usize,
    pub ao_iterations: usize,
    pub local_generations: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub sbx_eta: f64,
    pub poly_eta: f64,
    pub advisor_mode: AdvisorMode,
    /// Chat model name sent to the LLM endpoint.
    pub model: String,
    pub seed: u64,
    pub gca_baseline: GcaBaseline,
    pub c7: C7Mode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            population_size: 30,
            ao_iterations: 50,
            local_generations: 10,
            p_c: 0.8,
            p_m: 0.4,
            sbx_eta: 15.0,
            poly_eta: 20.0,
            advisor_mode: AdvisorMode::Llm,
            model: String::from("gpt-4o-mini"),
            seed: 0,
            gca_baseline: GcaBaseline::default(),
            c7: C7Mode::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let m = self.population_size;
        if m < 4 || !m.is_multiple_of(2) {
            return Err(invalid!("population size must be even and at least 4, got {m}"));
        }
        for (name, p) in [("p_c", self.p_c), ("p_m", self.p_m)] {
            if !(p > 0.0 && p <= 1.0) {
                return Err(invalid!("{name} must lie in (0, 1], got {p}"));
            }
        }
        if self.ao_iterations == 0 || self.local_generations == 0 {
            return Err(invalid!("iteration counts must be at least 1"));
        }
        for (name, eta) in [("sbx_eta", self.sbx_eta), ("poly_eta", self.poly_eta)] {
            if !(eta.is_finite() && eta >= 0.0) {
                return Err(invalid!("{name} must be a non-negative number, got {eta}"));
            }
        }
        Ok(())
    }

    fn variation(&self, p_c: f64, p_m: f64) -> Variation {
        Variation {
            p_c,
            p_m,
            sbx_eta: self.sbx_eta,
            poly_eta: self.poly_eta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    LlmAoa,
    Aoa,
    MonolithicNsga2,
}

/// Front diagnostics after one AO iteration (or, for the monolithic
/// baseline, after the equivalent number of generations).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryRecord {
    pub iteration: usize,
    pub sp: f64,
    pub m3: f64,
    pub hypervolume: f64,
    pub p_c: f64,
    pub p_m: f64,
    pub front_size: usize,
}

/// Parameters chosen after one generation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamStep {
    pub generation: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub source: ParamSource,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    /// Final population in preference order.
    pub population: Vec<Individual>,
    pub history: Vec<HistoryRecord>,
    pub params: Vec<ParamStep>,
    /// Fixed normalization (bounds of the initial population) behind the
    /// hypervolume column of the history.
    pub normalization: Normalization,
}

impl RunOutcome {
    pub fn final_front(&self) -> Vec<Individual> {
        feasible_front(&self.population)
    }
}

/// Feasible members of the first front, in population order.
pub fn feasible_front(population: &[Individual]) -> Vec<Individual> {
    let fronts = nondominated_sort(population);
    fronts
        .first()
        .map(|f| {
            f.iter()
                .map(|&i| &population[i])
                .filter(|ind| ind.is_feasible())
                .cloned()
                .collect()
        })
        .unwrap_or_default()
}

/// Objectives the diagnostics are computed on: the feasible first front,
/// or the whole first front while nothing is feasible.
fn diagnostic_front(population: &[Individual]) -> Vec<ObjectiveTriple> {
    let feasible = feasible_front(population);
    if !feasible.is_empty() {
        return feasible.iter().map(|i| *i.fitness()).collect();
    }
    nondominated_sort(population)
        .first()
        .map(|f| f.iter().map(|&i| *population[i].fitness()).collect())
        .unwrap_or_default()
}

fn bounds_of(front: &[ObjectiveTriple]) -> ([f64; 3], [f64; 3]) {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in front {
        for (d, v) in [p.f1, p.f2, p.f3].into_iter().enumerate() {
            lo[d] = lo[d].min(v);
            hi[d] = hi[d].max(v);
        }
    }
    (lo, hi)
}

fn record(
    iteration: usize,
    population: &[Individual],
    norm: &Normalization,
    p_c: f64,
    p_m: f64,
) -> HistoryRecord {
    let diag = diagnostic_front(population);
    let feasible: Vec<ObjectiveTriple> = feasible_front(population).iter().map(|i| *i.fitness()).collect();
    HistoryRecord {
        iteration,
        sp: spacing_metric(&diag),
        m3: max_spread_metric(&diag),
        hypervolume: front_hypervolume(&feasible, norm),
        p_c,
        p_m,
        front_size: feasible.len(),
    }
}

/// Runs one optimization. `advisor` is consulted only in
/// [`RunMode::LlmAoa`]; the other modes keep `p_c`/`p_m` fixed.
pub fn run(
    mode: RunMode,
    scenario: &Scenario,
    params: &SystemParams,
    config: &SolverConfig,
    advisor: &mut dyn Advisor,
) -> Result<RunOutcome> {
    params.validate()?;
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut population = initialize_population(scenario, params, config.population_size, &mut rng)?;
    let normalization = Normalization::from_points(population.iter().map(Individual::fitness))
        .expect("population is non-empty");
    let mut fixed = StaticAdvisor;
    let advisor: &mut dyn Advisor = match mode {
        RunMode::LlmAoa => advisor,
        RunMode::Aoa | RunMode::MonolithicNsga2 => &mut fixed,
    };
    let (mut p_c, mut p_m) = (config.p_c, config.p_m);
    let mut window = DiagnosticWindow::default();
    let mut history = Vec::with_capacity(config.ao_iterations);
    let mut steps = Vec::new();
    let mut generation = 0;

    for iteration in 1..=config.ao_iterations {
        if mode != RunMode::MonolithicNsga2 {
            population = gca_step(population, scenario, params, config.gca_baseline)?;
        }
        for _ in 0..config.local_generations {
            let var = config.variation(p_c, p_m);
            population = match mode {
                RunMode::MonolithicNsga2 => {
                    monolithic::monolithic_generation(population, scenario, params, &var, &mut rng)?
                }
                _ => nsga2_generation(population, scenario, params, &var, &mut rng)?,
            };
            generation += 1;
            let front = diagnostic_front(&population);
            let (front_min, front_max) = bounds_of(&front);
            let input = AdvisorInput {
                generation,
                p_c,
                p_m,
                sp: spacing_metric(&front),
                m3: max_spread_metric(&front),
                front_min,
                front_max,
                history: window.snapshot(),
            };
            let update = advisor.advise(&input);
            window.push(input.sp, input.m3);
            p_c = update.p_c;
            p_m = update.p_m;
            steps.push(ParamStep {
                generation,
                p_c,
                p_m,
                source: update.source,
            });
        }
        if mode != RunMode::MonolithicNsga2 {
            population = gso_step(population, scenario, params, config.c7)?;
            population = sorting::truncate(population, config.population_size);
        }
        history.push(record(iteration, &population, &normalization, p_c, p_m));
    }

    Ok(RunOutcome {
        population,
        history,
        params: steps,
        normalization,
    })
}
