//! Brute-force references for the sorting and greedy stages.

use dcsf_core::problem::{constrained_dominates, evaluate, ClusterAssignment, Individual, ObjectiveTriple};
use dcsf_core::scenario::Scenario;
use dcsf_core::SystemParams;

pub fn dom(a: &Individual, b: &Individual) -> bool {
    constrained_dominates(a.fitness(), a.violation, b.fitness(), b.violation)
}

/// Peel off undominated layers one at a time.
pub fn fronts_by_peeling(pool: &[Individual]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..pool.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| dom(&pool[j], &pool[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Direct per-point evaluation: nearest distinct values below and above.
pub fn crowding_by_scan(front: &[ObjectiveTriple]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let axes: [fn(&ObjectiveTriple) -> f64; 3] = [|p| p.f1, |p| p.f2, |p| p.f3];
    let mut out = vec![0.0; n];
    for get in axes {
        let lo = front.iter().map(get).fold(f64::INFINITY, f64::min);
        let hi = front.iter().map(get).fold(f64::NEG_INFINITY, f64::max);
        if hi == lo {
            continue;
        }
        for i in 0..n {
            let v = get(&front[i]);
            if v == lo || v == hi {
                out[i] = f64::INFINITY;
                continue;
            }
            let above = front
                .iter()
                .map(get)
                .filter(|&x| x > v)
                .fold(f64::INFINITY, f64::min);
            let below = front
                .iter()
                .map(get)
                .filter(|&x| x < v)
                .fold(f64::NEG_INFINITY, f64::max);
            out[i] += (above - below) / (hi - lo);
        }
    }
    out
}

pub fn f2(ind: &Individual, s: &Scenario, p: &SystemParams) -> f64 {
    evaluate(ind, s, p).unwrap().objectives.f2
}

/// Union of clusters `a < b` built by hand: members of `b` join `a`,
/// labels above `b` close the gap, `b`'s symbol count is dropped.
pub fn hand_merge(ind: &Individual, a: usize, b: usize) -> Individual {
    let labels: Vec<usize> = ind
        .assignment
        .labels()
        .iter()
        .map(|&l| {
            if l == b {
                a
            } else if l > b {
                l - 1
            } else {
                l
            }
        })
        .collect();
    let mut out = ind.clone();
    out.assignment = ClusterAssignment::from_labels(&labels).unwrap();
    out.symbols = ind
        .symbols
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != b)
        .map(|(_, &k)| k)
        .collect();
    out.invalidate();
    out
}

/// Exhaustive greedy merging with full re-evaluation of every candidate.
pub fn greedy_by_enumeration(ind: &Individual, s: &Scenario, p: &SystemParams) -> Vec<(usize, usize, f64)> {
    let mut current = ind.clone();
    let mut current_f2 = f2(&current, s, p);
    let mut applied = Vec::new();
    loop {
        let n = current.assignment.n_clusters();
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..n {
            for b in a + 1..n {
                let v = f2(&hand_merge(&current, a, b), s, p);
                if best.is_none_or(|x| v > x.2) {
                    best = Some((a, b, v));
                }
            }
        }
        match best {
            Some((a, b, v)) if v > current_f2 => {
                applied.push((a, b, v));
                current = hand_merge(&current, a, b);
                current_f2 = v;
            }
            _ => return applied,
        }
    }
}

pub fn gso_by_enumeration(ind: &Individual, s: &Scenario, p: &SystemParams) -> Vec<u32> {
    let mut cur = ind.clone();
    for i in 0..cur.symbols.len() {
        let mut best = (p.k_min, f64::NEG_INFINITY);
        for k in p.k_min..=p.k_max {
            let mut cand = cur.clone();
            cand.symbols[i] = k;
            let v = f2(&cand, s, p);
            if v > best.1 {
                best = (k, v);
            }
        }
        cur.symbols[i] = best.0;
    }
    cur.symbols
}
