//! On-disk formats: scenario files, run configuration and similarity
//! tables, all JSON.

use std::fs;
use std::path::Path;

use dcsf_core::scenario::{generate_scenario, GroundUser, Uav, DEFAULT_TX_POWER_W};
use dcsf_core::semantic::{SimilarityModel, SimilarityRow};
use dcsf_core::solver::SolverConfig;
use dcsf_core::{Bounds, Position3, Scenario, SystemParams};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{missing, CliError, Result};

fn default_power() -> f64 {
    DEFAULT_TX_POWER_W
}

/// Serialized scenario. Positions are `[x, y, z]` in metres.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub seed: u64,
    pub bounds: Bounds,
    pub bs: Position3,
    pub users: Vec<Position3>,
    pub uavs_initial: Vec<Position3>,
    #[serde(default = "default_power")]
    pub user_tx_power_w: f64,
    #[serde(default = "default_power")]
    pub uav_tx_power_w: f64,
}

impl ScenarioFile {
    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            seed: s.seed(),
            bounds: *s.bounds(),
            bs: s.bs_pos(),
            users: s.users().iter().map(|u| u.pos).collect(),
            uavs_initial: s.uavs().iter().map(|v| v.initial_pos).collect(),
            user_tx_power_w: s.users().first().map_or(DEFAULT_TX_POWER_W, |u| u.tx_power),
            uav_tx_power_w: s.uavs().first().map_or(DEFAULT_TX_POWER_W, |v| v.tx_power),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let users = self
            .users
            .iter()
            .enumerate()
            .map(|(id, &pos)| GroundUser {
                id,
                pos,
                tx_power: self.user_tx_power_w,
            })
            .collect();
        let uavs = self
            .uavs_initial
            .iter()
            .enumerate()
            .map(|(id, &pos)| Uav {
                id,
                pos,
                initial_pos: pos,
                tx_power: self.uav_tx_power_w,
            })
            .collect();
        Ok(Scenario::new(users, uavs, self.bs, self.bounds, self.seed)?)
    }
}

/// Area, fleet and seed of a freshly generated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioSpec {
    pub users: usize,
    pub uavs: usize,
    pub area: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub bs: Position3,
    pub seed: u64,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        Self {
            users: 500,
            uavs: 8,
            area: 1000.0,
            z_min: 60.0,
            z_max: 120.0,
            bs: Position3::new(5000.0, 5000.0, 0.0),
            seed: 1,
        }
    }
}

impl ScenarioSpec {
    pub fn generate(&self) -> Result<Scenario> {
        Ok(generate_scenario(
            self.users,
            self.uavs,
            Bounds::square(self.area, self.z_min, self.z_max),
            self.bs,
            self.seed,
        )?)
    }
}

/// Everything a solve needs besides the scenario.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: SystemParams,
    pub solver: SolverConfig,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    if !path.exists() {
        return Err(missing(path.to_path_buf()));
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::read(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::write(path, e))
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    read_json::<ScenarioFile>(path)?.to_scenario()
}

pub fn save_scenario(path: &Path, scenario: &Scenario) -> Result<()> {
    write_json(path, &ScenarioFile::from_scenario(scenario))
}

/// A similarity table: a JSON array of `{"k", "a", "b", "c"}` rows.
pub fn load_similarity(path: &Path) -> Result<SimilarityModel> {
    let rows: Vec<SimilarityRow> = read_json(path)?;
    Ok(SimilarityModel::new(rows)?)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let cfg: RunConfig = read_json(path)?;
    cfg.params.validate()?;
    cfg.solver.validate()?;
    Ok(cfg)
}
