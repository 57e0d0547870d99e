//! Front-quality indicators: normalization, exact 3-D hypervolume and knee
//! point selection.

use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::problem::ObjectiveTriple;

/// Per-objective ideal and nadir values used to map objectives into the
/// unit cube, with 0 the ideal end and 1 the nadir end of every axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub ideal: ObjectiveTriple,
    pub nadir: ObjectiveTriple,
}

impl Normalization {
    /// Bounds of a set of points; `None` if the set is empty.
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a ObjectiveTriple>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let (mut ideal, mut nadir) = (first, first);
        for p in it {
            ideal.f1 = ideal.f1.max(p.f1);
            ideal.f2 = ideal.f2.max(p.f2);
            ideal.f3 = ideal.f3.min(p.f3);
            nadir.f1 = nadir.f1.min(p.f1);
            nadir.f2 = nadir.f2.min(p.f2);
            nadir.f3 = nadir.f3.max(p.f3);
        }
        Some(Self { ideal, nadir })
    }

    /// Minimization-space coordinates; a degenerate axis maps to 0.
    pub fn normalize(&self, p: &ObjectiveTriple) -> [f64; 3] {
        fn axis(v: f64, best: f64, worst: f64) -> f64 {
            let span = worst - best;
            if span == 0.0 {
                0.0
            } else {
                (v - best) / span
            }
        }
        [
            axis(p.f1, self.ideal.f1, self.nadir.f1),
            axis(p.f2, self.ideal.f2, self.nadir.f2),
            axis(p.f3, self.ideal.f3, self.nadir.f3),
        ]
    }
}

/// Reference coordinate on every normalized axis.
pub const HV_REFERENCE: f64 = 1.1;

/// Exact hypervolume dominated by `points` (minimization) and bounded by
/// `reference`. Points not strictly better than the reference on every axis
/// contribute nothing.
pub fn hypervolume(points: &[[f64; 3]], reference: [f64; 3]) -> f64 {
    let mut pts: Vec<[f64; 3]> = points
        .iter()
        .copied()
        .filter(|p| (0..3).all(|d| p[d] < reference[d]))
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    pts.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    for i in 0..pts.len() {
        let top = if i + 1 < pts.len() {
            pts[i + 1][2]
        } else {
            reference[2]
        };
        let depth = top - pts[i][2];
        if depth > 0.0 {
            volume += depth * area_2d(&pts[..=i], [reference[0], reference[1]]);
        }
    }
    volume
}

fn area_2d(points: &[[f64; 3]], reference: [f64; 2]) -> f64 {
    let mut xy: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    xy.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    // staircase sweep: each point owns the strip from its x to the next
    // point (in x order) that lowers the running minimum of y
    let mut best_y = reference[1];
    let mut prev_x = None::<f64>;
    let mut prev_y = reference[1];
    for p in &xy {
        if p[1] < best_y {
            if let Some(x0) = prev_x {
                area += (p[0] - x0) * (reference[1] - prev_y);
            }
            prev_x = Some(p[0]);
            prev_y = p[1];
            best_y = p[1];
        }
    }
    if let Some(x0) = prev_x {
        area += (reference[0] - x0) * (reference[1] - prev_y);
    }
    area
}

/// Hypervolume of a front under `norm`, with the reference at
/// [`HV_REFERENCE`] on every axis.
pub fn front_hypervolume(front: &[ObjectiveTriple], norm: &Normalization) -> f64 {
    let pts: Vec<[f64; 3]> = front.iter().map(|p| norm.normalize(p)).collect();
    hypervolume(&pts, [HV_REFERENCE; 3])
}

/// Index of the point closest (Euclidean, after normalizing over `front`
/// itself) to the ideal point; ties go to the lower index.
pub fn knee_point(front: &[ObjectiveTriple]) -> Option<usize> {
    let norm = Normalization::from_points(front)?;
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in front.iter().enumerate() {
        let g = norm.normalize(p);
        let d = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    /// Inclusion–exclusion over all subsets.
    fn hv_oracle(points: &[[f64; 3]], r: [f64; 3]) -> f64 {
        let n = points.len();
        let mut total = 0.0;
        for mask in 1u32..(1 << n) {
            let mut corner = [f64::NEG_INFINITY; 3];
            for (i, p) in points.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for d in 0..3 {
                        corner[d] = corner[d].max(p[d]);
                    }
                }
            }
            let vol: f64 = (0..3).map(|d| (r[d] - corner[d]).max(0.0)).product();
            if mask.count_ones() % 2 == 1 {
                total += vol;
            } else {
                total -= vol;
            }
        }
        total
    }

    #[test]
    fn single_box() {
        assert!((hypervolume(&[[0.0, 0.0, 0.0]], [1.0, 2.0, 3.0]) - 6.0).abs() < 1e-12);
        assert_eq!(hypervolume(&[[1.0, 0.0, 0.0]], [1.0, 2.0, 3.0]), 0.0);
        assert_eq!(hypervolume(&[], [1.0, 1.0, 1.0]), 0.0);
    }

    proptest! {
        #[test]
        fn matches_inclusion_exclusion(raw in prop::collection::vec((0.0..1.2f64, 0.0..1.2f64, 0.0..1.2f64), 1..9)) {
            let pts: Vec<[f64; 3]> = raw.iter().map(|&(a, b, c)| [a, b, c]).collect();
            let r = [1.1; 3];
            let exact = hypervolume(&pts, r);
            let oracle = hv_oracle(&pts, r);
            prop_assert!((exact - oracle).abs() < 1e-9, "{} vs {}", exact, oracle);
        }
    }

    #[test]
    fn dominating_front_has_larger_volume() {
        let norm = Normalization {
            ideal: ObjectiveTriple::new(10.0, 10.0, 0.0),
            nadir: ObjectiveTriple::new(0.0, 0.0, 10.0),
        };
        let a = vec![
            ObjectiveTriple::new(8.0, 6.0, 3.0),
            ObjectiveTriple::new(5.0, 9.0, 2.0),
        ];
        let b: Vec<_> = a
            .iter()
            .map(|p| ObjectiveTriple::new(p.f1 - 1.0, p.f2 - 1.0, p.f3 + 1.0))
            .collect();
        assert!(front_hypervolume(&a, &norm) > front_hypervolume(&b, &norm));
    }

    #[test]
    fn knee_prefers_balanced_point() {
        let front = vec![
            ObjectiveTriple::new(10.0, 0.0, 0.0),
            ObjectiveTriple::new(7.0, 7.0, 3.0),
            ObjectiveTriple::new(0.0, 10.0, 0.0),
            ObjectiveTriple::new(10.0, 10.0, 10.0),
        ];
        assert_eq!(knee_point(&front), Some(1));
        assert_eq!(knee_point(&[]), None);
    }
}
