//! Probabilistic line-of-sight air-to-ground channel and the user uplink.

use alloc::format;
use alloc::vec::Vec;

// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::params::linear_to_db;
use crate::scenario::{associate_users, Position3, Scenario};
use crate::SystemParams;
use crate::SPEED_OF_LIGHT;

/// Total and vertical separation of the two ends of a link.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkGeometry {
    pub distance: f64,
    pub height: f64,
}

impl LinkGeometry {
    pub fn new(distance: f64, height: f64) -> Result<Self> {
        if !(distance > 0.0 && distance.is_finite()) {
            return Err(Error::Domain(format!(
                "link distance must be positive, got {distance}"
            )));
        }
        if !(height >= 0.0 && height <= distance) {
            return Err(Error::Domain(format!(
                "vertical separation {height} must lie in [0, {distance}]"
            )));
        }
        Ok(Self { distance, height })
    }

    pub fn between(a: &Position3, b: &Position3) -> Result<Self> {
        let distance = a.distance(b);
        // rounding can push |dz| a hair past the norm
        let height = (a.z - b.z).abs().min(distance);
        Self::new(distance, height)
    }

    /// Elevation angle in degrees.
    pub fn elevation_deg(&self) -> f64 {
        (self.height / self.distance).asin().to_degrees()
    }
}

pub fn los_probability(geom: &LinkGeometry, psi: f64, beta: f64) -> f64 {
    1.0 / (1.0 + psi * (-beta * (geom.elevation_deg() - psi)).exp())
}

pub fn free_space_path_loss_db(distance: f64, carrier_hz: f64) -> f64 {
    20.0 * distance.log10()
        + 20.0 * carrier_hz.log10()
        + 20.0 * (4.0 * core::f64::consts::PI / SPEED_OF_LIGHT).log10()
}

/// LoS-probability-weighted mean of the LoS and NLoS path losses, dB.
pub fn avg_path_loss(geom: &LinkGeometry, params: &SystemParams) -> f64 {
    let p_los = los_probability(geom, params.los_psi, params.los_beta);
    let fspl = free_space_path_loss_db(geom.distance, params.carrier_hz());
    let los = fspl + params.mu_los_db;
    let nlos = fspl + params.mu_nlos_db;
    p_los * los + (1.0 - p_los) * nlos
}

/// Average received power in watts over a link with the given geometry.
pub fn received_power(tx_power: f64, geom: &LinkGeometry, params: &SystemParams) -> f64 {
    tx_power * 10f64.powf(-avg_path_loss(geom, params) / 10.0)
}

/// SINR of `user` at `uav_pos`, with every other member of `cohort`
/// interfering. `user` must belong to `cohort`.
pub fn sinr_user_uav(
    scenario: &Scenario,
    user: usize,
    uav_pos: &Position3,
    cohort: &[usize],
    params: &SystemParams,
) -> Result<f64> {
    if !cohort.contains(&user) {
        return Err(Error::Contract(format!("user {user} is not in the UAV's cohort")));
    }
    let rx = |u: usize| -> Result<f64> {
        let gu = &scenario.users()[u];
        Ok(received_power(
            gu.tx_power,
            &LinkGeometry::between(&gu.pos, uav_pos)?,
            params,
        ))
    };
    let signal = rx(user)?;
    let mut interference = 0.0;
    for &other in cohort.iter().filter(|&&o| o != user) {
        interference += rx(other)?;
    }
    Ok(signal / (interference + params.noise_power_w()))
}

/// Shannon rate `B·log2(1 + SINR)`, bps.
pub fn user_rate(sinr: f64, bandwidth_hz: f64) -> f64 {
    bandwidth_hz * (1.0 + sinr).log2()
}

/// Objective `f1`: sum rate of all users, each served by its nearest UAV.
pub fn sum_user_rate(scenario: &Scenario, positions: &[Position3], params: &SystemParams) -> Result<f64> {
    if positions.len() != scenario.n_uavs() {
        return Err(Error::Contract(format!(
            "expected {} UAV positions, got {}",
            scenario.n_uavs(),
            positions.len()
        )));
    }
    let noise = params.noise_power_w();
    let mut total = 0.0;
    for (v, cohort) in associate_users(scenario, positions).iter().enumerate() {
        let rx: Vec<f64> = cohort
            .iter()
            .map(|&u| {
                let gu = &scenario.users()[u];
                LinkGeometry::between(&gu.pos, &positions[v]).map(|g| received_power(gu.tx_power, &g, params))
            })
            .collect::<Result<_>>()?;
        for (i, &signal) in rx.iter().enumerate() {
            let interference: f64 = rx
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .sum();
            total += user_rate(signal / (interference + noise), params.bandwidth_hz);
        }
    }
    Ok(total)
}

/// SINR in dB, for reporting.
pub fn sinr_db(sinr: f64) -> f64 {
    linear_to_db(sinr)
}
