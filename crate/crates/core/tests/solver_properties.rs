mod common;

use common::{paper_scenario, rng};
use dcsf_core::advisor::{FallbackAdvisor, ParamSource, StaticAdvisor};
use dcsf_core::problem::{C7Mode, ClusterAssignment};
use dcsf_core::solver::sorting::truncate;
use dcsf_core::solver::{
    gca_step, gso_step, initialize_population, nsga2_generation, run, GcaBaseline, RunMode, SolverConfig,
    Variation,
};
use dcsf_core::{Individual, SystemParams};
use proptest::prelude::*;

fn coherent(ind: &Individual) {
    ind.check_shape().unwrap();
    assert_eq!(ind.symbols.len(), ind.assignment.n_clusters());
    assert_eq!(
        ClusterAssignment::from_labels(ind.assignment.labels()).unwrap(),
        ind.assignment
    );
}

#[test]
fn initial_population_shape() {
    let p = SystemParams::default();
    let s = paper_scenario(100, 8, 1000.0, 1);
    let pop = initialize_population(&s, &p, 30, &mut rng(1)).unwrap();
    assert_eq!(pop.len(), 30);
    for ind in &pop {
        coherent(ind);
        assert!(ind.assignment.labels().iter().all(|&c| c < 8));
        assert!(ind.positions.iter().all(|q| s.bounds().contains(q)));
        assert!(ind.weights.iter().all(|w| (0.0..=1.0).contains(w)));
        assert!(ind.symbols.iter().all(|k| (1..=20).contains(k)));
        assert!(ind.objectives.is_some());
    }
    assert_eq!(pop, initialize_population(&s, &p, 30, &mut rng(1)).unwrap());

    let lone = paper_scenario(10, 1, 1000.0, 1);
    for ind in initialize_population(&lone, &p, 6, &mut rng(2)).unwrap() {
        assert_eq!(ind.assignment.n_clusters(), 1);
        assert_eq!(ind.symbols.len(), 1);
    }
}

#[test]
fn every_stage_keeps_symbols_per_cluster() {
    let p = SystemParams::default();
    let s = paper_scenario(60, 5, 500.0, 7);
    let mut r = rng(7);
    let mut pop = initialize_population(&s, &p, 10, &mut r).unwrap();
    let var = Variation {
        p_c: 0.8,
        p_m: 0.4,
        sbx_eta: 15.0,
        poly_eta: 20.0,
    };
    for _ in 0..3 {
        let before: Vec<f64> = pop.iter().map(|i| i.fitness().f2).collect();
        pop = gca_step(pop, &s, &p, GcaBaseline::Refreshed).unwrap();
        for (ind, f2) in pop.iter().zip(&before) {
            coherent(ind);
            assert!(ind.fitness().f2 >= *f2);
        }
        pop = nsga2_generation(pop, &s, &p, &var, &mut r).unwrap();
        pop.iter().for_each(coherent);
        pop = gso_step(pop, &s, &p, C7Mode::AlwaysOptimize).unwrap();
        pop.iter().for_each(coherent);
        pop = truncate(pop, 10);
        assert_eq!(pop.len(), 10);
    }
}

#[test]
fn modes_produce_canonical_populations_and_history() {
    let p = SystemParams::default();
    let s = paper_scenario(40, 4, 500.0, 3);
    let cfg = SolverConfig {
        population_size: 8,
        ao_iterations: 3,
        local_generations: 2,
        seed: 5,
        ..SolverConfig::default()
    };
    for mode in [RunMode::LlmAoa, RunMode::Aoa, RunMode::MonolithicNsga2] {
        let out = run(mode, &s, &p, &cfg, &mut FallbackAdvisor).unwrap();
        assert_eq!(out.history.len(), 3);
        assert_eq!(out.params.len(), 6);
        assert_eq!(out.population.len(), 8);
        out.population.iter().for_each(coherent);
        for h in &out.history {
            assert!(h.sp >= 0.0 && h.m3 >= 0.0 && h.hypervolume.is_finite());
            assert!((0.1..=0.95).contains(&h.p_c) && (0.01..=0.9).contains(&h.p_m));
        }
        let expected = if mode == RunMode::LlmAoa {
            ParamSource::Fallback
        } else {
            ParamSource::Static
        };
        assert!(out.params.iter().all(|s| s.source == expected));
    }
}

#[test]
fn static_advisor_keeps_initial_probabilities() {
    let p = SystemParams::default();
    let s = paper_scenario(30, 3, 400.0, 9);
    let cfg = SolverConfig {
        population_size: 6,
        ao_iterations: 2,
        local_generations: 2,
        ..SolverConfig::default()
    };
    let out = run(RunMode::LlmAoa, &s, &p, &cfg, &mut StaticAdvisor).unwrap();
    assert!(out.params.iter().all(|s| s.p_c == 0.8 && s.p_m == 0.4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn runs_are_reproducible(seed in any::<u64>()) {
        let p = SystemParams::default();
        let s = paper_scenario(20, 3, 300.0, seed);
        let cfg = SolverConfig {
            population_size: 4,
            ao_iterations: 2,
            local_generations: 1,
            seed,
            ..SolverConfig::default()
        };
        let a = run(RunMode::LlmAoa, &s, &p, &cfg, &mut FallbackAdvisor).unwrap();
        let b = run(RunMode::LlmAoa, &s, &p, &cfg, &mut FallbackAdvisor).unwrap();
        prop_assert_eq!(a, b);
    }
}
