//! Spacing (SP) and maximum spread (M3*) of a front, both computed on
//! objectives rescaled to the front's own per-dimension range.

use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::indicators::Normalization;
use crate::problem::ObjectiveTriple;

fn normalized(front: &[ObjectiveTriple]) -> Vec<[f64; 3]> {
    match Normalization::from_points(front) {
        Some(norm) => front.iter().map(|p| norm.normalize(p)).collect(),
        None => Vec::new(),
    }
}

/// Standard deviation (with `n - 1`) of each member's city-block distance
/// to its nearest neighbour. Zero for fronts of fewer than two members.
pub fn spacing_metric(front: &[ObjectiveTriple]) -> f64 {
    let pts = normalized(front);
    let n = pts.len();
    if n < 2 {
        return 0.0;
    }
    let nearest: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| (0..3).map(|d| (pts[i][d] - pts[j][d]).abs()).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = nearest.iter().sum::<f64>() / n as f64;
    let ss: f64 = nearest.iter().map(|d| (mean - d) * (mean - d)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// Diagonal of the front's normalized bounding box.
pub fn max_spread_metric(front: &[ObjectiveTriple]) -> f64 {
    let pts = normalized(front);
    if pts.is_empty() {
        return 0.0;
    }
    let mut sum = 0.0;
    for d in 0..3 {
        let lo = pts.iter().map(|p| p[d]).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|p| p[d]).fold(f64::NEG_INFINITY, f64::max);
        sum += (hi - lo) * (hi - lo);
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(a: f64, b: f64, c: f64) -> ObjectiveTriple {
        ObjectiveTriple::new(a, b, c)
    }

    #[test]
    fn evenly_spaced_front_has_zero_spacing() {
        let front = [t(0.0, 2.0, 1.0), t(1.0, 1.0, 1.0), t(2.0, 0.0, 1.0)];
        assert!(spacing_metric(&front).abs() < 1e-15);
        assert_eq!(spacing_metric(&front[..2]), 0.0);
        assert_eq!(spacing_metric(&front[..1]), 0.0);
    }

    #[test]
    fn spread_of_opposite_corners() {
        let front = [t(0.0, 0.0, 0.0), t(1.0, 1.0, 1.0)];
        assert!((max_spread_metric(&front) - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(max_spread_metric(&front[..1]), 0.0);
        let with_interior = [front[0], front[1], t(0.3, 0.6, 0.2)];
        assert_eq!(max_spread_metric(&with_interior), max_spread_metric(&front));
    }

    #[test]
    fn uneven_front_has_positive_spacing() {
        let front = [t(0.0, 3.0, 0.0), t(0.1, 2.9, 0.0), t(3.0, 0.0, 0.0)];
        assert!(spacing_metric(&front) > 0.1);
    }

    proptest! {
        #[test]
        fn invariant_under_permutation_and_rescaling(
            raw in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64, 0.0..10.0f64), 2..12),
            scale in 0.01..100.0f64,
            shift in -50.0..50.0f64,
            rot in 0usize..12,
        ) {
            let front: Vec<_> = raw.iter().map(|&(a, b, c)| t(a, b, c)).collect();
            let mut moved = front.clone();
            moved.rotate_left(rot % front.len());
            for p in &mut moved {
                p.f2 = p.f2 * scale + shift;
            }
            prop_assert!((spacing_metric(&front) - spacing_metric(&moved)).abs() < 1e-9);
            prop_assert!((max_spread_metric(&front) - max_spread_metric(&moved)).abs() < 1e-9);
        }
    }
}
