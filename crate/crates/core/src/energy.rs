//! Rotary-wing propulsion power and relocation flight energy.

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scenario::{Position3, Scenario};
use crate::SystemParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RotorModel {
    /// Blade profile power in hover, W.
    pub blade_profile_power: f64,
    /// Induced power in hover, W.
    pub induced_power: f64,
    /// Rotor blade tip speed, m/s.
    pub tip_speed: f64,
    /// Mean rotor induced velocity in hover, m/s.
    pub induced_velocity: f64,
    pub fuselage_drag_ratio: f64,
    /// Air density, kg/m³.
    pub air_density: f64,
    pub rotor_solidity: f64,
    /// Rotor disc area, m².
    pub disc_area: f64,
    /// Aircraft weight, N.
    pub weight: f64,
}

impl Default for RotorModel {
    fn default() -> Self {
        Self {
            blade_profile_power: 79.86,
            induced_power: 88.63,
            tip_speed: 120.0,
            induced_velocity: 4.03,
            fuselage_drag_ratio: 0.6,
            air_density: 1.225,
            rotor_solidity: 0.05,
            disc_area: 0.503,
            weight: 20.0,
        }
    }
}

impl RotorModel {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.blade_profile_power,
            self.induced_power,
            self.tip_speed,
            self.induced_velocity,
            self.fuselage_drag_ratio,
            self.air_density,
            self.rotor_solidity,
            self.disc_area,
            self.weight,
        ];
        if fields.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(invalid!("rotor model constants must all be positive"))
        }
    }

    pub fn hover_power(&self) -> f64 {
        self.blade_profile_power + self.induced_power
    }

    /// Induced, blade-profile and parasite power at horizontal speed `v`.
    pub fn horizontal_power(&self, v: f64) -> f64 {
        let v2 = v * v;
        let vi2 = self.induced_velocity * self.induced_velocity;
        let induced =
            self.induced_power * ((1.0 + v2 * v2 / (4.0 * vi2 * vi2)).sqrt() - v2 / (2.0 * vi2)).sqrt();
        let profile = self.blade_profile_power * (1.0 + 3.0 * v2 / (self.tip_speed * self.tip_speed));
        induced + profile + self.parasite_power(v)
    }

    pub fn parasite_power(&self, v: f64) -> f64 {
        0.5 * self.fuselage_drag_ratio * self.air_density * self.rotor_solidity * self.disc_area * v * v * v
    }

    /// `W·v` while climbing, nothing while level or descending.
    pub fn vertical_power(&self, v: f64) -> f64 {
        if v > 0.0 {
            self.weight * v
        } else {
            0.0
        }
    }
}

pub fn horizontal_power(rotor: &RotorModel, speed_xy: f64) -> f64 {
    rotor.horizontal_power(speed_xy)
}

pub fn vertical_power(rotor: &RotorModel, speed_z: f64) -> f64 {
    rotor.vertical_power(speed_z)
}

/// Energy to fly from `from` to `to`: a horizontal leg at `speed_xy`
/// followed by a vertical leg at `speed_z`. Descent costs nothing.
pub fn flight_energy(from: &Position3, to: &Position3, params: &SystemParams) -> f64 {
    let rotor = &params.rotor;
    let horizontal = from.horizontal_distance(to);
    let climb = to.z - from.z;
    let mut energy = 0.0;
    if horizontal > 0.0 {
        energy += rotor.horizontal_power(params.speed_xy) * (horizontal / params.speed_xy);
    }
    if climb > 0.0 {
        energy += rotor.vertical_power(params.speed_z) * (climb / params.speed_z);
    }
    energy
}

/// Sum of relocation energies of every UAV from its launch point to `targets`,
/// plus the optional service-phase hover term.
pub fn total_flight_energy(scenario: &Scenario, targets: &[Position3], params: &SystemParams) -> Result<f64> {
    if targets.len() != scenario.n_uavs() {
        return Err(crate::Error::Contract(alloc::format!(
            "expected {} UAV positions, got {}",
            scenario.n_uavs(),
            targets.len()
        )));
    }
    let relocation: f64 = scenario
        .uavs()
        .iter()
        .zip(targets)
        .map(|(uav, q)| flight_energy(&uav.initial_pos, q, params))
        .sum();
    let hover = params.hover_time_s * params.rotor.hover_power() * scenario.n_uavs() as f64;
    Ok(relocation + hover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_scenario, Bounds};
    use alloc::vec::Vec;

    #[test]
    fn hover_and_parasite_terms() {
        let r = RotorModel::default();
        assert_eq!(r.horizontal_power(0.0), r.blade_profile_power + r.induced_power);
        assert!((r.horizontal_power(0.0) - 168.49).abs() < 1e-9);
        // 0.5 * 0.6 * 1.225 * 0.05 * 0.503 * 20^3
        assert!((r.parasite_power(20.0) - 73.941).abs() < 1e-3);
    }

    #[test]
    fn power_curve_has_a_bucket() {
        let r = RotorModel::default();
        let min = (1..=300)
            .map(|i| r.horizontal_power(i as f64 * 0.1))
            .fold(f64::INFINITY, f64::min);
        assert!(min < r.horizontal_power(0.0));
    }

    #[test]
    fn vertical_branches() {
        let r = RotorModel::default();
        assert_eq!(r.vertical_power(2.0), 40.0);
        assert_eq!(r.vertical_power(-3.0), 0.0);
        assert_eq!(r.vertical_power(0.0), 0.0);
    }

    #[test]
    fn climb_descent_and_no_move() {
        let p = SystemParams::default();
        let a = Position3::new(0.0, 0.0, 60.0);
        assert_eq!(flight_energy(&a, &a, &p), 0.0);
        let up = Position3::new(0.0, 0.0, 70.0);
        assert_eq!(flight_energy(&a, &up, &p), 200.0);
        assert_eq!(flight_energy(&up, &a, &p), 0.0);
    }

    #[test]
    fn additive_over_uavs() {
        let p = SystemParams::default();
        let s =
            generate_scenario(5, 3, Bounds::square(1000.0, 60.0, 120.0), Position3::default(), 4).unwrap();
        let mut q = s.uav_positions();
        assert_eq!(total_flight_energy(&s, &q, &p).unwrap(), 0.0);
        q[1] = Position3::new(400.0, 300.0, 100.0);
        let single = flight_energy(&s.uavs()[1].initial_pos, &q[1], &p);
        assert_eq!(total_flight_energy(&s, &q, &p).unwrap(), single);
        assert!(total_flight_energy(&s, &q[..2], &p).is_err());
    }

    #[test]
    fn eight_uav_scale() {
        let p = SystemParams::default();
        let b = Bounds::square(1000.0, 60.0, 120.0);
        let s = generate_scenario(5, 8, b, Position3::default(), 4).unwrap();
        let q: Vec<_> = (0..8)
            .map(|i| Position3::new(200.0 + 80.0 * i as f64, 150.0 + 90.0 * i as f64, 100.0))
            .collect();
        let e = total_flight_energy(&s, &q, &p).unwrap();
        assert!((1e4..=1e5).contains(&e), "{e}");
    }
}
