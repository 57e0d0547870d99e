//! Constrained non-dominated sorting, crowding distance and elitist
//! truncation.

use alloc::vec;
use alloc::vec::Vec;

use crate::problem::{dominates, Individual, ObjectiveTriple};

/// Fast non-dominated sort over `n` items under an arbitrary dominance
/// relation. Each front lists indices in ascending order.
pub fn nondominated_sort_by(n: usize, dominates: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counter = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates(i, j) {
                dominated_by_me[i].push(j);
                counter[j] += 1;
            } else if dominates(j, i) {
                dominated_by_me[j].push(i);
                counter[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counter[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by_me[i] {
                counter[j] -= 1;
                if counter[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Constrained-dominance fronts of evaluated individuals.
pub fn nondominated_sort(pool: &[Individual]) -> Vec<Vec<usize>> {
    nondominated_sort_by(pool.len(), |a, b| dominates(&pool[a], &pool[b]))
}

/// Crowding distance of each member of one front.
///
/// Per objective, members holding the minimum or maximum value get `+∞`;
/// every other member gets the gap between the nearest *distinct* values
/// below and above its own, divided by the range. Using distinct values
/// keeps the result independent of the order of tied members. Objectives
/// with zero range contribute nothing, and fronts of at most two members
/// are all boundary.
pub fn crowding_distance(front: &[ObjectiveTriple]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut distance = vec![0.0; n];
    for m in 0..3 {
        let value = |i: usize| match m {
            0 => front[i].f1,
            1 => front[i].f2,
            _ => front[i].f3,
        };
        let mut distinct: Vec<f64> = (0..n).map(value).collect();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let (lo, hi) = (distinct[0], distinct[distinct.len() - 1]);
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for (i, d) in distance.iter_mut().enumerate() {
            let v = value(i);
            if v == lo || v == hi {
                *d = f64::INFINITY;
            } else {
                let pos = distinct.partition_point(|&x| x < v);
                *d += (distinct[pos + 1] - distinct[pos - 1]) / range;
            }
        }
    }
    distance
}

/// Front rank (0 = best) and crowding distance of every pool member.
#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    pub fronts: Vec<Vec<usize>>,
    pub rank: Vec<usize>,
    pub crowding: Vec<f64>,
}

impl Ranking {
    pub fn of(pool: &[Individual]) -> Self {
        let fronts = nondominated_sort(pool);
        let mut rank = vec![0; pool.len()];
        let mut crowding = vec![0.0; pool.len()];
        for (r, front) in fronts.iter().enumerate() {
            let objs: Vec<ObjectiveTriple> = front.iter().map(|&i| *pool[i].fitness()).collect();
            for (&i, d) in front.iter().zip(crowding_distance(&objs)) {
                rank[i] = r;
                crowding[i] = d;
            }
        }
        Self {
            fronts,
            rank,
            crowding,
        }
    }

    /// `a` is preferred over `b` by the crowded-comparison operator.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b] || (self.rank[a] == self.rank[b] && self.crowding[a] > self.crowding[b])
    }

    /// All indices ordered by rank, then crowding (descending), then index.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank.len()).collect();
        idx.sort_by(|&a, &b| {
            self.rank[a]
                .cmp(&self.rank[b])
                .then(self.crowding[b].total_cmp(&self.crowding[a]))
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Keeps the best `m` of `pool` (whole fronts first, the split front by
/// crowding), returned in preference order.
pub fn truncate(pool: Vec<Individual>, m: usize) -> Vec<Individual> {
    let order = Ranking::of(&pool).order();
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    order
        .into_iter()
        .take(m)
        .map(|i| slots[i].take().expect("each index taken once"))
        .collect()
}
