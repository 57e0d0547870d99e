//! Mixed integer/continuous random initialization.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::Result;
use crate::problem::{ClusterAssignment, Individual};
use crate::scenario::{Position3, Scenario};
use crate::SystemParams;

/// One uniformly random individual: labels in `0..N_V`, positions in the
/// flight box, weights in `[w_min, w_max]`, one symbol count per cluster in
/// `[k_min, k_max]`. Not evaluated.
pub fn random_individual<R: Rng + ?Sized>(
    scenario: &Scenario,
    params: &SystemParams,
    rng: &mut R,
) -> Result<Individual> {
    let n = scenario.n_uavs();
    let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let assignment = ClusterAssignment::from_labels(&raw)?;
    let b = scenario.bounds();
    let positions = (0..n)
        .map(|_| {
            Position3::new(
                rng.gen_range(b.x_min..=b.x_max),
                rng.gen_range(b.y_min..=b.y_max),
                rng.gen_range(b.z_min..=b.z_max),
            )
        })
        .collect();
    let weights = (0..n)
        .map(|_| rng.gen_range(params.w_min..=params.w_max))
        .collect();
    let symbols = (0..assignment.n_clusters())
        .map(|_| rng.gen_range(params.k_min..=params.k_max))
        .collect();
    Individual::new(assignment, positions, weights, symbols)
}

/// `size` evaluated random individuals.
pub fn initialize_population<R: Rng + ?Sized>(
    scenario: &Scenario,
    params: &SystemParams,
    size: usize,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    (0..size)
        .map(|_| {
            let mut ind = random_individual(scenario, params, rng)?;
            ind.evaluate(scenario, params)?;
            Ok(ind)
        })
        .collect()
}
