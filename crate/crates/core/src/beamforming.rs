//! Virtual antenna arrays formed by UAV clusters.
//!
//! The array factor uses isotropic elements, so the beam-pattern
//! normalization integral has the closed form
//! `(1/4π)∫|F|² dΩ = Σ_i Σ_j w_i w_j sinc(p·d_ij)`. A Gauss–Legendre ×
//! trapezoid quadrature of the same integral is provided as a check; at
//! real inter-UAV spacings (thousands of wavelengths) only the closed form
//! is practical.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// float math without std; redundant when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{avg_path_loss, LinkGeometry};
use crate::error::{invalid, Error, Result};
use crate::scenario::Position3;
use crate::SystemParams;

#[derive(Clone, Debug, PartialEq)]
pub struct ArraySpec {
    positions: Vec<Position3>,
    weights: Vec<f64>,
    wavelength: f64,
}

impl ArraySpec {
    pub fn new(positions: Vec<Position3>, weights: Vec<f64>, wavelength: f64) -> Result<Self> {
        if positions.is_empty() || positions.len() != weights.len() {
            return Err(invalid!(
                "array needs matching, non-empty positions ({}) and weights ({})",
                positions.len(),
                weights.len()
            ));
        }
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(invalid!("wavelength must be positive"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(invalid!("excitation weights must be finite and non-negative"));
        }
        if positions.iter().any(|p| !p.is_finite()) {
            return Err(invalid!("element positions must be finite"));
        }
        Ok(Self {
            positions,
            weights,
            wavelength,
        })
    }

    pub fn positions(&self) -> &[Position3] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn phase_constant(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    fn centroid(&self) -> Position3 {
        Position3::centroid(&self.positions).expect("array is non-empty")
    }
}

/// Resolution of the normalization quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl QuadratureSpec {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 8 || n_phi < 8 {
            return Err(invalid!("quadrature needs at least 8 nodes per axis"));
        }
        Ok(Self { n_theta, n_phi })
    }
}

/// Complex array factor in direction (`theta`, `phi`).
pub fn array_factor(spec: &ArraySpec, theta: f64, phi: f64) -> Complex64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    factor_along(spec, [st * cp, st * sp, ct])
}

fn factor_along(spec: &ArraySpec, dir: [f64; 3]) -> Complex64 {
    let p = spec.phase_constant();
    spec.positions
        .iter()
        .zip(&spec.weights)
        .map(|(q, &w)| {
            let (s, c) = (p * (q.x * dir[0] + q.y * dir[1] + q.z * dir[2])).sin_cos();
            Complex64::new(w * c, w * s)
        })
        .sum()
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `(1/4π)∫|F|² dΩ` in closed form.
pub fn denominator_closed_form(spec: &ArraySpec) -> f64 {
    let p = spec.phase_constant();
    let n = spec.len();
    let mut total = 0.0;
    for i in 0..n {
        let wi = spec.weights[i];
        total += wi * wi;
        for j in i + 1..n {
            let d = spec.positions[i].distance(&spec.positions[j]);
            total += 2.0 * wi * spec.weights[j] * sinc(p * d);
        }
    }
    total
}

/// `(1/4π)∫|F|² dΩ` by quadrature: Gauss–Legendre in θ over `[0, π]`
/// and the periodic trapezoid rule in φ.
pub fn denominator_quadrature(spec: &ArraySpec, quad: QuadratureSpec) -> f64 {
    sphere_mean(quad, |dir| factor_along(spec, dir).norm_sqr())
}

/// `(1/4π)∫G dΩ`, which equals the array efficiency for a correctly normalized gain.
pub fn mean_gain_quadrature(spec: &ArraySpec, efficiency: f64, quad: QuadratureSpec) -> Result<f64> {
    let denom = checked_denominator(spec)?;
    Ok(sphere_mean(quad, |dir| factor_along(spec, dir).norm_sqr()) * efficiency / denom)
}

fn sphere_mean(quad: QuadratureSpec, mut f: impl FnMut([f64; 3]) -> f64) -> f64 {
    let (nodes, weights) = gauss_legendre(quad.n_theta);
    let dphi = 2.0 * PI / quad.n_phi as f64;
    let azimuths: Vec<(f64, f64)> = (0..quad.n_phi)
        .map(|j| (-PI + j as f64 * dphi).sin_cos())
        .collect();
    let mut total = 0.0;
    for (t, wt) in nodes.iter().zip(&weights) {
        let theta = 0.5 * PI * (t + 1.0);
        let (st, ct) = theta.sin_cos();
        let mut ring = 0.0;
        for &(sp, cp) in &azimuths {
            ring += f([st * cp, st * sp, ct]);
        }
        total += 0.5 * PI * wt * st * ring * dphi;
    }
    total / (4.0 * PI)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn checked_denominator(spec: &ArraySpec) -> Result<f64> {
    let denom = denominator_closed_form(spec);
    if spec.weights.iter().all(|&w| w == 0.0) || !(denom > 0.0) {
        return Err(Error::Domain(format!(
            "array radiates no power (normalization integral {denom})"
        )));
    }
    Ok(denom)
}

/// Directive gain toward (`theta`, `phi`) scaled by the array efficiency.
pub fn array_gain(spec: &ArraySpec, theta: f64, phi: f64, efficiency: f64) -> Result<f64> {
    let denom = checked_denominator(spec)?;
    Ok(array_factor(spec, theta, phi).norm_sqr() * efficiency / denom)
}

/// Polar and azimuth angles of the ray from `from` to `to`.
pub fn direction(from: &Position3, to: &Position3) -> (f64, f64) {
    let (dx, dy, dz) = (to.x - from.x, to.y - from.y, to.z - from.z);
    let r = (dx * dx + dy * dy + dz * dz).sqrt();
    if r == 0.0 {
        return (0.0, 0.0);
    }
    ((dz / r).clamp(-1.0, 1.0).acos(), dy.atan2(dx))
}

/// SNR at the base station for the cluster made of `members`.
///
/// A lone UAV transmits at its own power with no array gain. A larger
/// cluster transmits `Σ w²·P_v` shaped by the array gain toward the BS; the
/// path loss is taken from the cluster centroid.
pub fn cluster_snr(
    members: &[usize],
    positions: &[Position3],
    weights: &[f64],
    tx_powers: &[f64],
    bs_pos: &Position3,
    params: &SystemParams,
) -> Result<f64> {
    let noise = params.noise_power_w();
    match members {
        [] => Err(Error::Contract("cluster has no members".into())),
        [v] => {
            let geom = LinkGeometry::between(&positions[*v], bs_pos)?;
            Ok(tx_powers[*v] * 10f64.powf(-avg_path_loss(&geom, params) / 10.0) / noise)
        }
        _ => {
            let power: f64 = members
                .iter()
                .map(|&v| weights[v] * weights[v] * tx_powers[v])
                .sum();
            if power == 0.0 {
                return Ok(0.0);
            }
            let spec = ArraySpec::new(
                members.iter().map(|&v| positions[v]).collect(),
                members.iter().map(|&v| weights[v]).collect(),
                params.wavelength_m,
            )?;
            let centroid = spec.centroid();
            let (theta, phi) = direction(&centroid, bs_pos);
            let gain = array_gain(&spec, theta, phi, params.array_efficiency)?;
            let geom = LinkGeometry::between(&centroid, bs_pos)?;
            Ok(power * gain * 10f64.powf(-avg_path_loss(&geom, params) / 10.0) / noise)
        }
    }
}
