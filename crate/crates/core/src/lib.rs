//! Physical-layer models, the three-objective deployment problem and the
//! alternating-optimization solver for multi-UAV data collection with
//! semantic forwarding.
//!
//! Ground users upload to their nearest UAV; UAVs group into clusters that
//! act as virtual antenna arrays and forward semantically encoded data to a
//! distant base station. A candidate deployment is scored on three
//! objectives:
//!
//! * `f1`: sum user-to-UAV rate in bps (maximize),
//! * `f2`: sum cluster-to-BS semantic rate in suts/s (maximize),
//! * `f3`: total relocation flight energy in joules (minimize).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the HTTP
//! endpoint for the parameter advisor and the command line live in the
//! `dcsf` companion crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` style checks are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod advisor;
pub mod beamforming;
pub mod channel;
pub mod energy;
mod error;
pub mod indicators;
pub mod params;
pub mod problem;
pub mod scenario;
pub mod semantic;
pub mod solver;

pub use error::{Error, Result};
pub use params::SystemParams;
pub use problem::{ClusterAssignment, Individual, ObjectiveTriple};
pub use scenario::{Bounds, GroundUser, Position3, Scenario, Uav};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
