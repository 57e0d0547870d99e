//! World model: ground users, the UAV fleet, the base station and the
//! deployment region.

use alloc::vec::Vec;
use core::fmt;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Transmit power used for users and UAVs when a scenario does not say otherwise.
pub const DEFAULT_TX_POWER_W: f64 = 0.1;

/// A point in the scenario's Cartesian frame, meters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Position3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance_squared(&self, other: &Position3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        dx * dx + dy * dy + dz * dz
    }

    pub fn distance(&self, other: &Position3) -> f64 {
        self.distance_squared(other).sqrt()
    }

    pub fn horizontal_distance(&self, other: &Position3) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Arithmetic mean of a non-empty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Position3>) -> Option<Position3> {
        let mut n = 0usize;
        let mut acc = Position3::default();
        for p in points {
            acc.x += p.x;
            acc.y += p.y;
            acc.z += p.z;
            n += 1;
        }
        (n > 0).then(|| {
            let n = n as f64;
            Position3::new(acc.x / n, acc.y / n, acc.z / n)
        })
    }
}

impl From<[f64; 3]> for Position3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }
}

impl From<Position3> for [f64; 3] {
    fn from(p: Position3) -> Self {
        [p.x, p.y, p.z]
    }
}

/// Axis-aligned deployment region. Ground users live on `z = 0` inside the
/// horizontal extent; UAVs must stay inside the full box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub z_min: f64,
    pub z_max: f64,
}

impl Bounds {
    /// Square `side × side` area anchored at the origin with the given altitude band.
    pub fn square(side: f64, z_min: f64, z_max: f64) -> Self {
        Self {
            x_min: 0.0,
            x_max: side,
            y_min: 0.0,
            y_max: side,
            z_min,
            z_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let axes = [
            ("x", self.x_min, self.x_max),
            ("y", self.y_min, self.y_max),
            ("z", self.z_min, self.z_max),
        ];
        for (axis, lo, hi) in axes {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(invalid!("{axis} bounds must be finite"));
            }
            if lo >= hi {
                return Err(invalid!("{axis} bounds not well ordered: {lo} >= {hi}"));
            }
        }
        Ok(())
    }

    pub fn lower(&self) -> Position3 {
        Position3::new(self.x_min, self.y_min, self.z_min)
    }

    pub fn upper(&self) -> Position3 {
        Position3::new(self.x_max, self.y_max, self.z_max)
    }

    pub fn contains(&self, p: &Position3) -> bool {
        (self.x_min..=self.x_max).contains(&p.x)
            && (self.y_min..=self.y_max).contains(&p.y)
            && (self.z_min..=self.z_max).contains(&p.z)
    }

    pub fn contains_ground(&self, p: &Position3) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    pub fn clamp(&self, p: Position3) -> Position3 {
        Position3::new(
            p.x.clamp(self.x_min, self.x_max),
            p.y.clamp(self.y_min, self.y_max),
            p.z.clamp(self.z_min, self.z_max),
        )
    }

    /// Sum over axes of the distance outside the box, each divided by that
    /// axis' extent. Zero iff the point is inside.
    pub fn normalized_excess(&self, p: &Position3) -> f64 {
        fn excess(v: f64, lo: f64, hi: f64) -> f64 {
            ((lo - v).max(0.0) + (v - hi).max(0.0)) / (hi - lo)
        }
        excess(p.x, self.x_min, self.x_max)
            + excess(p.y, self.y_min, self.y_max)
            + excess(p.z, self.z_min, self.z_max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundUser {
    pub id: usize,
    pub pos: Position3,
    pub tx_power: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Uav {
    pub id: usize,
    /// Currently deployed position.
    pub pos: Position3,
    /// Launch position; relocation energy is measured from here.
    pub initial_pos: Position3,
    pub tx_power: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    users: Vec<GroundUser>,
    uavs: Vec<Uav>,
    bs_pos: Position3,
    bounds: Bounds,
    seed: u64,
}

impl Scenario {
    /// Builds a scenario after checking every invariant. User and UAV ids are
    /// reassigned to their list index.
    pub fn new(
        mut users: Vec<GroundUser>,
        mut uavs: Vec<Uav>,
        bs_pos: Position3,
        bounds: Bounds,
        seed: u64,
    ) -> Result<Self> {
        bounds.validate()?;
        if users.is_empty() {
            return Err(invalid!("scenario needs at least one ground user"));
        }
        if uavs.is_empty() {
            return Err(invalid!("scenario needs at least one UAV"));
        }
        if !bs_pos.is_finite() {
            return Err(invalid!("base station position must be finite"));
        }
        for (i, u) in users.iter_mut().enumerate() {
            u.id = i;
            if !u.pos.is_finite() || !bounds.contains_ground(&u.pos) {
                return Err(invalid!("user {i} lies outside the area bounds"));
            }
            if !(u.tx_power > 0.0 && u.tx_power.is_finite()) {
                return Err(invalid!("user {i} transmit power must be positive"));
            }
        }
        for (i, v) in uavs.iter_mut().enumerate() {
            v.id = i;
            if !v.pos.is_finite() || !v.initial_pos.is_finite() {
                return Err(invalid!("UAV {i} position must be finite"));
            }
            if !(v.tx_power > 0.0 && v.tx_power.is_finite()) {
                return Err(invalid!("UAV {i} transmit power must be positive"));
            }
        }
        Ok(Self {
            users,
            uavs,
            bs_pos,
            bounds,
            seed,
        })
    }

    pub fn users(&self) -> &[GroundUser] {
        &self.users
    }

    pub fn uavs(&self) -> &[Uav] {
        &self.uavs
    }

    pub fn n_users(&self) -> usize {
        self.users.len()
    }

    pub fn n_uavs(&self) -> usize {
        self.uavs.len()
    }

    pub fn bs_pos(&self) -> Position3 {
        self.bs_pos
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Current UAV positions, in id order.
    pub fn uav_positions(&self) -> Vec<Position3> {
        self.uavs.iter().map(|v| v.pos).collect()
    }
}

/// Draws users uniformly over the ground plane and places UAVs on the launch grid.
pub fn generate_scenario(
    n_users: usize,
    n_uavs: usize,
    bounds: Bounds,
    bs_pos: Position3,
    seed: u64,
) -> Result<Scenario> {
    bounds.validate()?;
    if n_users == 0 || n_uavs == 0 {
        return Err(invalid!("need at least one user and one UAV"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let users = (0..n_users)
        .map(|id| {
            let x = rng.gen_range(bounds.x_min..=bounds.x_max);
            let y = rng.gen_range(bounds.y_min..=bounds.y_max);
            GroundUser {
                id,
                pos: Position3::new(x, y, 0.0),
                tx_power: DEFAULT_TX_POWER_W,
            }
        })
        .collect();
    let uavs = launch_grid(&bounds, n_uavs)
        .into_iter()
        .enumerate()
        .map(|(id, pos)| Uav {
            id,
            pos,
            initial_pos: pos,
            tx_power: DEFAULT_TX_POWER_W,
        })
        .collect();
    Scenario::new(users, uavs, bs_pos, bounds, seed)
}

/// Launch positions: `x = x_min`, `z = z_min`, cell-centred and evenly spaced in `y`.
pub fn launch_grid(bounds: &Bounds, n_uavs: usize) -> Vec<Position3> {
    let step = (bounds.y_max - bounds.y_min) / n_uavs as f64;
    (0..n_uavs)
        .map(|i| Position3::new(bounds.x_min, bounds.y_min + (i as f64 + 0.5) * step, bounds.z_min))
        .collect()
}

/// Index of the UAV closest to `point`; ties go to the lowest index.
///
/// Panics if `uav_positions` is empty.
pub fn nearest_uav(point: &Position3, uav_positions: &[Position3]) -> usize {
    let mut best = 0;
    let mut best_d = point.distance_squared(&uav_positions[0]);
    for (v, q) in uav_positions.iter().enumerate().skip(1) {
        let d = point.distance_squared(q);
        if d < best_d {
            best = v;
            best_d = d;
        }
    }
    best
}

/// Per-UAV served user sets. Every user lands in exactly one set.
pub fn associate_users(scenario: &Scenario, positions: &[Position3]) -> Vec<Vec<usize>> {
    let mut sets = alloc::vec![Vec::new(); positions.len()];
    for user in scenario.users() {
        sets[nearest_uav(&user.pos, positions)].push(user.id);
    }
    sets
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlacementViolation {
    /// A UAV outside the deployment box.
    OutOfBounds { uav: usize, pos: Position3 },
    /// Two UAVs closer than the safety distance.
    TooClose { a: usize, b: usize, distance: f64 },
}

impl fmt::Display for PlacementViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutOfBounds { uav, pos } => write!(
                f,
                "UAV {uav} at ({:.3}, {:.3}, {:.3}) is outside the deployment region",
                pos.x, pos.y, pos.z
            ),
            Self::TooClose { a, b, distance } => {
                write!(f, "UAVs {a} and {b} are {distance:.3} m apart")
            }
        }
    }
}

/// All region and safety-distance violations of a set of UAV positions.
pub fn placement_violations(positions: &[Position3], bounds: &Bounds, d_min: f64) -> Vec<PlacementViolation> {
    let mut out = Vec::new();
    for (uav, pos) in positions.iter().enumerate() {
        if !bounds.contains(pos) {
            out.push(PlacementViolation::OutOfBounds { uav, pos: *pos });
        }
    }
    for a in 0..positions.len() {
        for b in a + 1..positions.len() {
            let distance = positions[a].distance(&positions[b]);
            if distance < d_min {
                out.push(PlacementViolation::TooClose { a, b, distance });
            }
        }
    }
    out
}

/// Checks the scenario's current UAV placement against the region and the
/// minimum separation `d_min`.
pub fn validate_scenario(
    scenario: &Scenario,
    params: &crate::SystemParams,
) -> core::result::Result<(), Vec<PlacementViolation>> {
    let v = placement_violations(&scenario.uav_positions(), scenario.bounds(), params.d_min);
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SystemParams;

    fn area() -> Bounds {
        Bounds::square(1000.0, 60.0, 120.0)
    }

    #[test]
    fn paper_sized_scenario() {
        let s = generate_scenario(500, 8, area(), Position3::new(5000.0, 5000.0, 0.0), 1).unwrap();
        assert_eq!(s.n_users(), 500);
        assert_eq!(s.n_uavs(), 8);
        assert!(s
            .users()
            .iter()
            .all(|u| area().contains_ground(&u.pos) && u.pos.z == 0.0));
        for v in s.uavs() {
            assert_eq!(v.pos.x, 0.0);
            assert_eq!(v.pos.z, 60.0);
            assert_eq!(v.pos, v.initial_pos);
        }
    }

    #[test]
    fn minimal_scenario_is_deterministic() {
        let a = generate_scenario(1, 1, area(), Position3::default(), 9).unwrap();
        let b = generate_scenario(1, 1, area(), Position3::default(), 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.uavs()[0].pos, Position3::new(0.0, 500.0, 60.0));
    }

    #[test]
    fn seeds_change_layout() {
        let bs = Position3::new(5000.0, 5000.0, 0.0);
        let a = generate_scenario(50, 4, area(), bs, 1).unwrap();
        let b = generate_scenario(50, 4, area(), bs, 2).unwrap();
        let a2 = generate_scenario(50, 4, area(), bs, 1).unwrap();
        assert_ne!(a.users(), b.users());
        assert_eq!(a, a2);
    }

    #[test]
    fn rejects_bad_bounds() {
        let mut b = area();
        b.z_min = 130.0;
        assert!(matches!(
            generate_scenario(3, 1, b, Position3::default(), 0),
            Err(crate::Error::InvalidInput(_))
        ));
        assert!(generate_scenario(0, 1, area(), Position3::default(), 0).is_err());
    }

    #[test]
    fn association_examples() {
        let users = alloc::vec![GroundUser {
            id: 0,
            pos: Position3::default(),
            tx_power: 0.1
        }];
        let uav = |x: f64| Uav {
            id: 0,
            pos: Position3::new(x, 0.0, 100.0),
            initial_pos: Position3::new(x, 0.0, 100.0),
            tx_power: 0.1,
        };
        let bounds = Bounds {
            x_min: -1000.0,
            ..area()
        };
        let s = Scenario::new(
            users,
            alloc::vec![uav(10.0), uav(500.0)],
            Position3::default(),
            bounds,
            0,
        )
        .unwrap();
        assert_eq!(
            associate_users(&s, &s.uav_positions()),
            alloc::vec![alloc::vec![0], alloc::vec![]]
        );

        // equidistant from UAVs 1 and 2 (0-based), closer than UAV 0
        let q = [
            Position3::new(900.0, 0.0, 100.0),
            Position3::new(10.0, 0.0, 100.0),
            Position3::new(-10.0, 0.0, 100.0),
        ];
        assert_eq!(
            q[1].distance(&Position3::default()),
            q[2].distance(&Position3::default())
        );
        assert_eq!(nearest_uav(&Position3::default(), &q), 1);
        let single = associate_users(&s, &q[..1]);
        assert_eq!(single, alloc::vec![alloc::vec![0]]);
    }

    #[test]
    fn validation_reports_each_violation() {
        let params = SystemParams::default();
        let bs = Position3::new(5000.0, 5000.0, 0.0);
        let s = generate_scenario(10, 3, area(), bs, 3).unwrap();
        assert!(validate_scenario(&s, &params).is_ok());

        let mut q = s.uav_positions();
        q[1] = q[0];
        q[2].z = area().z_max + 1.0;
        let v = placement_violations(&q, &area(), params.d_min);
        assert_eq!(v.len(), 2);
        assert!(v.contains(&PlacementViolation::OutOfBounds { uav: 2, pos: q[2] }));
        assert!(v.contains(&PlacementViolation::TooClose {
            a: 0,
            b: 1,
            distance: 0.0
        }));
    }

    #[test]
    fn normalized_excess_is_zero_inside() {
        let b = area();
        assert_eq!(b.normalized_excess(&Position3::new(10.0, 10.0, 80.0)), 0.0);
        assert!((b.normalized_excess(&Position3::new(10.0, 10.0, 180.0)) - 1.0).abs() < 1e-12);
    }
}
