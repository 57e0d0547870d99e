// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::energy::RotorModel;
use crate::error::{invalid, Result};
use crate::semantic::SimilarityModel;
use crate::SPEED_OF_LIGHT;

/// Every physical constant and bound the models need.
///
/// The carrier frequency is derived from the wavelength; the noise density
/// is kept in dBm/Hz and converted to watts by [`SystemParams::noise_power_w`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    pub bandwidth_hz: f64,
    pub noise_density_dbm_hz: f64,
    pub wavelength_m: f64,
    /// Environment constant `ψ` of the LoS probability model.
    pub los_psi: f64,
    /// Environment constant `β` of the LoS probability model.
    pub los_beta: f64,
    pub mu_los_db: f64,
    pub mu_nlos_db: f64,
    pub array_efficiency: f64,
    pub d_min: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub xi_threshold: f64,
    /// Semantic information units per sentence.
    pub info_per_sentence: f64,
    pub words_per_sentence: f64,
    pub w_min: f64,
    pub w_max: f64,
    /// Horizontal cruise speed used for relocation, m/s.
    pub speed_xy: f64,
    /// Climb/descent speed used for relocation, m/s.
    pub speed_z: f64,
    /// Service-phase hover time added to the energy objective; 0 leaves it out.
    pub hover_time_s: f64,
    pub rotor: RotorModel,
    pub similarity: SimilarityModel,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            bandwidth_hz: 2e6,
            noise_density_dbm_hz: -174.0,
            wavelength_m: 0.125,
            los_psi: 9.61,
            los_beta: 0.16,
            mu_los_db: 1.6,
            mu_nlos_db: 20.0,
            array_efficiency: 1.0,
            d_min: 5.0,
            k_min: 1,
            k_max: 20,
            xi_threshold: 0.1,
            info_per_sentence: 40.0,
            words_per_sentence: 20.0,
            w_min: 0.0,
            w_max: 1.0,
            speed_xy: 10.0,
            speed_z: 2.0,
            hover_time_s: 0.0,
            rotor: RotorModel::default(),
            similarity: SimilarityModel::default(),
        }
    }
}

impl SystemParams {
    pub fn carrier_hz(&self) -> f64 {
        SPEED_OF_LIGHT / self.wavelength_m
    }

    /// Thermal noise power `B·N0` in watts.
    pub fn noise_power_w(&self) -> f64 {
        self.bandwidth_hz * dbm_to_watts(self.noise_density_dbm_hz)
    }

    pub fn phase_constant(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.wavelength_m
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("bandwidth_hz", self.bandwidth_hz),
            ("wavelength_m", self.wavelength_m),
            ("los_psi", self.los_psi),
            ("los_beta", self.los_beta),
            ("d_min", self.d_min),
            ("info_per_sentence", self.info_per_sentence),
            ("words_per_sentence", self.words_per_sentence),
            ("speed_xy", self.speed_xy),
            ("speed_z", self.speed_z),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid!("{name} must be positive and finite, got {v}"));
            }
        }
        for (name, v) in [
            ("noise_density_dbm_hz", self.noise_density_dbm_hz),
            ("mu_los_db", self.mu_los_db),
            ("mu_nlos_db", self.mu_nlos_db),
        ] {
            if !v.is_finite() {
                return Err(invalid!("{name} must be finite"));
            }
        }
        if !(self.array_efficiency > 0.0 && self.array_efficiency <= 1.0) {
            return Err(invalid!("array_efficiency must lie in (0, 1]"));
        }
        if self.k_min < 1 || self.k_min > self.k_max {
            return Err(invalid!("need 1 <= k_min <= k_max"));
        }
        if !(0.0..=1.0).contains(&self.xi_threshold) {
            return Err(invalid!("xi_threshold must lie in [0, 1]"));
        }
        if !(self.w_min >= 0.0 && self.w_min < self.w_max && self.w_max.is_finite()) {
            return Err(invalid!("need 0 <= w_min < w_max"));
        }
        if !(self.hover_time_s >= 0.0 && self.hover_time_s.is_finite()) {
            return Err(invalid!("hover_time_s must be non-negative"));
        }
        self.rotor.validate()?;
        self.similarity.validate()?;
        if !self.similarity.covers(self.k_min, self.k_max) {
            return Err(invalid!(
                "similarity table does not cover k in [{}, {}]",
                self.k_min,
                self.k_max
            ));
        }
        Ok(())
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
