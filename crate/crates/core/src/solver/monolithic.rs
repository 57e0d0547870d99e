//! Baseline: a single NSGA-II over every decision variable at once. Cluster
//! labels evolve as reals rounded to integers; symbol counts are resized to
//! the resulting cluster count by truncation or padding with `k_min`.

use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use super::nsga2::{
    continuous_bounds, continuous_genes, mutate_genome, offspring_counts, with_continuous_genes, Variation,
};
use super::operators::{sbx, tournament, GeneBounds};
use super::sorting::{truncate, Ranking};
use crate::error::Result;
use crate::problem::{ClusterAssignment, Individual};
use crate::scenario::Scenario;
use crate::SystemParams;

/// `[positions, weights, labels]` as reals.
fn genome(ind: &Individual) -> Vec<f64> {
    let mut g = continuous_genes(ind);
    g.extend(ind.assignment.labels().iter().map(|&c| c as f64));
    g
}

fn full_bounds(scenario: &Scenario, params: &SystemParams) -> GeneBounds {
    let mut b = continuous_bounds(scenario, params);
    let n = scenario.n_uavs();
    b.lower.extend(core::iter::repeat_n(0.0, n));
    b.upper.extend(core::iter::repeat_n((n - 1) as f64, n));
    b
}

fn k_bounds(len: usize, params: &SystemParams) -> GeneBounds {
    GeneBounds {
        lower: alloc::vec![params.k_min as f64; len],
        upper: alloc::vec![params.k_max as f64; len],
    }
}

/// Decodes genes and symbol reals into an unevaluated individual.
fn decode(template: &Individual, genes: &[f64], k: &[f64], params: &SystemParams) -> Result<Individual> {
    let n = template.positions.len();
    let mut ind = with_continuous_genes(template, &genes[..4 * n]);
    let raw: Vec<usize> = genes[4 * n..].iter().map(|g| g.round() as usize).collect();
    ind.assignment = ClusterAssignment::from_labels(&raw)?;
    let mut symbols: Vec<u32> = k
        .iter()
        .map(|v| (v.round() as u32).clamp(params.k_min, params.k_max))
        .collect();
    symbols.resize(ind.assignment.n_clusters(), params.k_min);
    ind.symbols = symbols;
    ind.check_shape()?;
    Ok(ind)
}

fn k_reals(ind: &Individual) -> Vec<f64> {
    ind.symbols.iter().map(|&k| k as f64).collect()
}

pub fn monolithic_generation<R: Rng + ?Sized>(
    population: Vec<Individual>,
    scenario: &Scenario,
    params: &SystemParams,
    var: &Variation,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    let m = population.len();
    let ranking = Ranking::of(&population);
    let bounds = full_bounds(scenario, params);
    let (n_cross, n_mut) = offspring_counts(m, var.p_c, var.p_m);
    let mut offspring = Vec::with_capacity(n_cross + n_mut);
    while offspring.len() < n_cross {
        let (a, b) = (
            &population[tournament(&ranking, rng)],
            &population[tournament(&ranking, rng)],
        );
        let (g1, g2) = sbx(&genome(a), &genome(b), &bounds, var.sbx_eta, rng);
        let shared = a.symbols.len().min(b.symbols.len());
        let (ka, kb) = (k_reals(a), k_reals(b));
        let (s1, s2) = sbx(
            &ka[..shared],
            &kb[..shared],
            &k_bounds(shared, params),
            var.sbx_eta,
            rng,
        );
        let k1: Vec<f64> = s1.into_iter().chain(ka[shared..].iter().copied()).collect();
        let k2: Vec<f64> = s2.into_iter().chain(kb[shared..].iter().copied()).collect();
        offspring.push(decode(a, &g1, &k1, params)?);
        if offspring.len() < n_cross {
            offspring.push(decode(b, &g2, &k2, params)?);
        }
    }
    for _ in 0..n_mut {
        let parent = &population[tournament(&ranking, rng)];
        let mut joint = genome(parent);
        let split = joint.len();
        joint.extend(k_reals(parent));
        let mut jb = bounds.clone();
        let kb = k_bounds(parent.symbols.len(), params);
        jb.lower.extend(kb.lower);
        jb.upper.extend(kb.upper);
        mutate_genome(&mut joint, &jb, var.poly_eta, rng);
        offspring.push(decode(parent, &joint[..split], &joint[split..], params)?);
    }
    for child in &mut offspring {
        child.evaluate(scenario, params)?;
    }
    let mut pool = population;
    pool.extend(offspring);
    Ok(truncate(pool, m))
}
