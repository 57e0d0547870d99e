#![allow(dead_code)]

pub mod oracles;

use dcsf_core::problem::{ClusterAssignment, Individual, ObjectiveTriple};
use dcsf_core::scenario::{generate_scenario, Bounds, Position3, Scenario};
use dcsf_core::solver::init::random_individual;
use dcsf_core::SystemParams;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Individual carrying prescribed objectives and violation; the decision
/// variables are placeholders.
pub fn scored(obj: ObjectiveTriple, violation: f64) -> Individual {
    let mut ind = Individual::new(
        ClusterAssignment::singletons(1),
        vec![Position3::default()],
        vec![1.0],
        vec![1],
    )
    .unwrap();
    ind.objectives = Some(obj);
    ind.violation = violation;
    ind
}

/// Pool with deliberately coarse values so that ties and duplicates occur.
pub fn random_pool(rng: &mut ChaCha8Rng, n: usize) -> Vec<Individual> {
    (0..n)
        .map(|_| {
            let obj = ObjectiveTriple::new(
                rng.gen_range(0..8) as f64,
                rng.gen_range(0..8) as f64 * 0.5,
                rng.gen_range(0..8) as f64 * 10.0,
            );
            let violation = if rng.gen_bool(0.7) {
                0.0
            } else {
                rng.gen_range(1..4) as f64 * 0.25
            };
            scored(obj, violation)
        })
        .collect()
}

/// Small instance whose base station is close enough for cluster SNRs to
/// sit in the similarity curve's transition region. Most instances line the
/// UAVs up across the BS direction so that clusters add up in phase and
/// merges can pay off.
pub fn near_bs_instance(rng: &mut ChaCha8Rng, n_uavs: usize) -> (Scenario, Individual) {
    let bounds = Bounds::square(200.0, 60.0, 120.0);
    let dist = rng.gen_range(1200.0..4000.0);
    let angle: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let bs = Position3::new(100.0 + dist * angle.cos(), 100.0 + dist * angle.sin(), 0.0);
    let s = generate_scenario(20, n_uavs, bounds, bs, rng.gen()).unwrap();
    let p = SystemParams::default();
    let mut ind = random_individual(&s, &p, rng).unwrap();
    if rng.gen_bool(0.75) {
        let z = rng.gen_range(60.0..120.0);
        let (ux, uy) = (-angle.sin(), angle.cos());
        let mut offset = 0.0;
        for v in 0..n_uavs {
            ind.positions[v] = Position3::new(180.0 + offset * ux, 20.0 + offset * uy, z);
            offset += rng.gen_range(6.0..30.0);
        }
        for w in &mut ind.weights {
            *w = rng.gen_range(0.6..=1.0);
        }
    }
    let raw: Vec<usize> = (0..n_uavs).collect();
    ind.assignment = ClusterAssignment::from_labels(&raw).unwrap();
    ind.symbols = (0..n_uavs).map(|_| rng.gen_range(1..=20)).collect();
    (s, ind)
}

pub fn paper_scenario(n_users: usize, n_uavs: usize, side: f64, seed: u64) -> Scenario {
    generate_scenario(
        n_users,
        n_uavs,
        Bounds::square(side, 60.0, 120.0),
        Position3::new(5000.0, 5000.0, 0.0),
        seed,
    )
    .unwrap()
}
