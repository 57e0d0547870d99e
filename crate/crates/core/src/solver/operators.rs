//! Real-coded variation: simulated binary crossover, polynomial mutation
//! and binary tournament selection.

use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use super::sorting::Ranking;

/// Box bounds of a real-coded genome.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl GeneBounds {
    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn clamp(&self, genes: &mut [f64]) {
        for ((g, &lo), &hi) in genes.iter_mut().zip(&self.lower).zip(&self.upper) {
            *g = g.max(lo).min(hi);
        }
    }
}

const SAME_GENE: f64 = 1e-14;

/// Bounded SBX. Each gene pair recombines with probability 1/2; children are
/// swapped with probability 1/2 and clamped to the bounds.
pub fn sbx<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    bounds: &GeneBounds,
    eta: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    let expo = 1.0 / (eta + 1.0);
    for i in 0..p1.len() {
        if !rng.gen_bool(0.5) {
            continue;
        }
        if (p1[i] - p2[i]).abs() <= SAME_GENE {
            continue;
        }
        let (lo, hi) = (bounds.lower[i], bounds.upper[i]);
        let (y1, y2) = if p1[i] < p2[i] {
            (p1[i], p2[i])
        } else {
            (p2[i], p1[i])
        };
        let gap = y2 - y1;
        let u: f64 = rng.gen();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(expo)
            } else {
                (1.0 / (2.0 - u * alpha)).powf(expo)
            }
        };
        let bq1 = spread(1.0 + 2.0 * (y1 - lo) / gap);
        let bq2 = spread(1.0 + 2.0 * (hi - y2) / gap);
        let mut a = (0.5 * ((y1 + y2) - bq1 * gap)).max(lo).min(hi);
        let mut b = (0.5 * ((y1 + y2) + bq2 * gap)).max(lo).min(hi);
        if rng.gen_bool(0.5) {
            core::mem::swap(&mut a, &mut b);
        }
        c1[i] = a;
        c2[i] = b;
    }
    bounds.clamp(&mut c1);
    bounds.clamp(&mut c2);
    (c1, c2)
}

/// Bounded polynomial mutation; each gene mutates with probability
/// `per_gene`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    genes: &mut [f64],
    bounds: &GeneBounds,
    eta: f64,
    per_gene: f64,
    rng: &mut R,
) {
    let expo = 1.0 / (eta + 1.0);
    for (i, gene) in genes.iter_mut().enumerate() {
        if !rng.gen_bool(per_gene.clamp(0.0, 1.0)) {
            continue;
        }
        let (lo, hi) = (bounds.lower[i], bounds.upper[i]);
        let span = hi - lo;
        if span <= 0.0 {
            *gene = lo;
            continue;
        }
        let y = *gene;
        let u: f64 = rng.gen();
        let dq = if u < 0.5 {
            let xy = 1.0 - (y - lo) / span;
            (2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0)).powf(expo) - 1.0
        } else {
            let xy = 1.0 - (hi - y) / span;
            1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0)).powf(expo)
        };
        *gene = (y + dq * span).max(lo).min(hi);
    }
}

/// Binary tournament on (rank, crowding); a full tie keeps the first draw.
pub fn tournament<R: Rng + ?Sized>(ranking: &Ranking, rng: &mut R) -> usize {
    let n = ranking.rank.len();
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    if ranking.prefers(b, a) {
        b
    } else {
        a
    }
}
