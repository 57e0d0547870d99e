//! One NSGA-II generation over positions and weights, with cluster labels
//! and symbol counts held fixed.

use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use super::operators::{polynomial_mutation, sbx, tournament, GeneBounds};
use super::sorting::{truncate, Ranking};
use crate::error::Result;
use crate::problem::Individual;
use crate::scenario::{Position3, Scenario};
use crate::SystemParams;

/// Probabilities and distribution indices of one generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Variation {
    pub p_c: f64,
    pub p_m: f64,
    pub sbx_eta: f64,
    pub poly_eta: f64,
}

/// Crossover offspring and mutants produced for a population of `m`.
pub fn offspring_counts(m: usize, p_c: f64, p_m: f64) -> (usize, usize) {
    (
        (p_c * m as f64).round() as usize,
        (p_m * m as f64).round() as usize,
    )
}

/// Bounds of `[x0, y0, z0, x1, …, w0, w1, …]`.
pub fn continuous_bounds(scenario: &Scenario, params: &SystemParams) -> GeneBounds {
    let n = scenario.n_uavs();
    let (lo, hi) = (scenario.bounds().lower(), scenario.bounds().upper());
    let mut lower = Vec::with_capacity(4 * n);
    let mut upper = Vec::with_capacity(4 * n);
    for _ in 0..n {
        lower.extend([lo.x, lo.y, lo.z]);
        upper.extend([hi.x, hi.y, hi.z]);
    }
    lower.extend(core::iter::repeat_n(params.w_min, n));
    upper.extend(core::iter::repeat_n(params.w_max, n));
    GeneBounds { lower, upper }
}

pub fn continuous_genes(ind: &Individual) -> Vec<f64> {
    ind.positions
        .iter()
        .flat_map(|p| [p.x, p.y, p.z])
        .chain(ind.weights.iter().copied())
        .collect()
}

/// Copy of `ind` carrying `genes` as positions and weights, unevaluated.
pub fn with_continuous_genes(ind: &Individual, genes: &[f64]) -> Individual {
    let n = ind.positions.len();
    let mut out = ind.clone();
    out.positions = (0..n)
        .map(|v| Position3::new(genes[3 * v], genes[3 * v + 1], genes[3 * v + 2]))
        .collect();
    out.weights = genes[3 * n..4 * n].to_vec();
    out.invalidate();
    out
}

/// Polynomial mutation at rate `1/len`, forcing one gene when the draw
/// would otherwise leave the genome untouched.
pub(crate) fn mutate_genome<R: Rng + ?Sized>(genes: &mut [f64], bounds: &GeneBounds, eta: f64, rng: &mut R) {
    let before = genes.to_vec();
    polynomial_mutation(genes, bounds, eta, 1.0 / genes.len() as f64, rng);
    if genes == &before[..] {
        let i = rng.gen_range(0..genes.len());
        let mut one = [genes[i]];
        let single = GeneBounds {
            lower: alloc::vec![bounds.lower[i]],
            upper: alloc::vec![bounds.upper[i]],
        };
        polynomial_mutation(&mut one, &single, eta, 1.0, rng);
        genes[i] = one[0];
    }
}

/// Breeds crossover offspring and mutants from `population`, evaluates
/// them, and keeps the best `population.len()` of parents plus offspring.
pub fn nsga2_generation<R: Rng + ?Sized>(
    population: Vec<Individual>,
    scenario: &Scenario,
    params: &SystemParams,
    var: &Variation,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    let m = population.len();
    let ranking = Ranking::of(&population);
    let bounds = continuous_bounds(scenario, params);
    let (n_cross, n_mut) = offspring_counts(m, var.p_c, var.p_m);
    let mut offspring = Vec::with_capacity(n_cross + n_mut);
    while offspring.len() < n_cross {
        let (a, b) = (tournament(&ranking, rng), tournament(&ranking, rng));
        let (g1, g2) = sbx(
            &continuous_genes(&population[a]),
            &continuous_genes(&population[b]),
            &bounds,
            var.sbx_eta,
            rng,
        );
        offspring.push(with_continuous_genes(&population[a], &g1));
        if offspring.len() < n_cross {
            offspring.push(with_continuous_genes(&population[b], &g2));
        }
    }
    for _ in 0..n_mut {
        let parent = &population[tournament(&ranking, rng)];
        let mut genes = continuous_genes(parent);
        mutate_genome(&mut genes, &bounds, var.poly_eta, rng);
        offspring.push(with_continuous_genes(parent, &genes));
    }
    for child in &mut offspring {
        child.evaluate(scenario, params)?;
    }
    let mut pool = population;
    pool.extend(offspring);
    Ok(truncate(pool, m))
}
