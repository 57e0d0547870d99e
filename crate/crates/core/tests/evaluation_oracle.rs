//! End-to-end recomputation of all three objectives from scratch with the
//! default constants written out by hand.

mod common;

use common::{paper_scenario, rng};
use dcsf_core::problem::evaluate;
use dcsf_core::scenario::{Position3, Scenario};
use dcsf_core::solver::init::random_individual;
use dcsf_core::{Individual, SystemParams};

const LAMBDA: f64 = 0.125;
const B: f64 = 2e6;

fn noise() -> f64 {
    10f64.powf(-17.4) * 1e-3 * B
}

fn path_gain(a: &Position3, b: &Position3) -> f64 {
    let d = ((a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.z - b.z).powi(2)).sqrt();
    let h = (a.z - b.z).abs();
    let theta = (h / d).asin() * 180.0 / std::f64::consts::PI;
    let p_los = 1.0 / (1.0 + 9.61 * (-0.16 * (theta - 9.61)).exp());
    let fspl = 20.0 * (4.0 * std::f64::consts::PI * d / LAMBDA).log10();
    let loss = p_los * (fspl + 1.6) + (1.0 - p_los) * (fspl + 20.0);
    10f64.powf(-loss / 10.0)
}

fn f1(s: &Scenario, q: &[Position3]) -> f64 {
    let users = s.users();
    let serving: Vec<usize> = users
        .iter()
        .map(|u| {
            let d: Vec<f64> = q
                .iter()
                .map(|v| (u.pos.x - v.x).powi(2) + (u.pos.y - v.y).powi(2) + v.z.powi(2))
                .collect();
            (0..q.len()).fold(0, |best, v| if d[v] < d[best] { v } else { best })
        })
        .collect();
    let mut total = 0.0;
    for (i, u) in users.iter().enumerate() {
        let v = serving[i];
        let signal = 0.1 * path_gain(&u.pos, &q[v]);
        let interference: f64 = users
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && serving[j] == v)
            .map(|(_, o)| 0.1 * path_gain(&o.pos, &q[v]))
            .sum();
        total += B * (1.0 + signal / (interference + noise())).log2();
    }
    total
}

fn cluster_snr(members: &[usize], q: &[Position3], w: &[f64], bs: &Position3) -> f64 {
    if members.len() == 1 {
        return 0.1 * path_gain(&q[members[0]], bs) / noise();
    }
    let n = members.len() as f64;
    let cx = members.iter().map(|&v| q[v].x).sum::<f64>() / n;
    let cy = members.iter().map(|&v| q[v].y).sum::<f64>() / n;
    let cz = members.iter().map(|&v| q[v].z).sum::<f64>() / n;
    let centre = Position3::new(cx, cy, cz);
    let (dx, dy, dz) = (bs.x - cx, bs.y - cy, bs.z - cz);
    let norm = (dx * dx + dy * dy + dz * dz).sqrt();
    let u = [dx / norm, dy / norm, dz / norm];
    let k = 2.0 * std::f64::consts::PI / LAMBDA;
    let (mut re, mut im) = (0.0, 0.0);
    for &v in members {
        let phase = k * (q[v].x * u[0] + q[v].y * u[1] + q[v].z * u[2]);
        re += w[v] * phase.cos();
        im += w[v] * phase.sin();
    }
    let mut denom = 0.0;
    for &i in members {
        for &j in members {
            let d =
                ((q[i].x - q[j].x).powi(2) + (q[i].y - q[j].y).powi(2) + (q[i].z - q[j].z).powi(2)).sqrt();
            let x = k * d;
            denom += w[i] * w[j] * if x == 0.0 { 1.0 } else { x.sin() / x };
        }
    }
    let power: f64 = members.iter().map(|&v| w[v] * w[v] * 0.1).sum();
    if power == 0.0 {
        return 0.0;
    }
    power * (re * re + im * im) / denom * path_gain(&centre, bs) / noise()
}

fn xi(k: u32, snr: f64) -> f64 {
    let t = (k as f64 - 1.0) / 19.0;
    let (a, b, c) = (0.1 + 0.28 * t, 12.0 - 16.0 * t, 0.35);
    if snr == 0.0 {
        return a;
    }
    a + (1.0 - a) / (1.0 + (-c * (10.0 * snr.log10() - b)).exp())
}

fn f2(s: &Scenario, ind: &Individual) -> f64 {
    ind.assignment
        .clusters()
        .iter()
        .zip(&ind.symbols)
        .map(|(members, &k)| {
            let snr = cluster_snr(members, &ind.positions, &ind.weights, &s.bs_pos());
            B * 40.0 / (k as f64 * 20.0) * xi(k, snr)
        })
        .sum()
}

fn rotor_power(v: f64) -> f64 {
    let (p0, pi, tip, v0, d0, rho, sol, area): (f64, f64, f64, f64, f64, f64, f64, f64) =
        (79.86, 88.63, 120.0, 4.03, 0.6, 1.225, 0.05, 0.503);
    p0 * (1.0 + 3.0 * v * v / (tip * tip))
        + pi * ((1.0 + v.powi(4) / (4.0 * v0.powi(4))).sqrt() - v * v / (2.0 * v0 * v0)).sqrt()
        + 0.5 * d0 * rho * sol * area * v.powi(3)
}

fn f3(s: &Scenario, q: &[Position3]) -> f64 {
    s.uavs()
        .iter()
        .zip(q)
        .map(|(uav, to)| {
            let from = uav.initial_pos;
            let flat = ((to.x - from.x).powi(2) + (to.y - from.y).powi(2)).sqrt();
            let climb = (to.z - from.z).max(0.0);
            rotor_power(10.0) * flat / 10.0 + 20.0 * climb
        })
        .sum()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn objectives_match_scalar_recomputation() {
    let p = SystemParams::default();
    let mut r = rng(21);
    for seed in 0..6 {
        let s = paper_scenario(120, 2 + seed as usize, 600.0, seed);
        for _ in 0..5 {
            let ind = random_individual(&s, &p, &mut r).unwrap();
            let got = evaluate(&ind, &s, &p).unwrap().objectives;
            let want = (f1(&s, &ind.positions), f2(&s, &ind), f3(&s, &ind.positions));
            assert!(close(got.f1, want.0), "f1 {} vs {}", got.f1, want.0);
            assert!(close(got.f2, want.1), "f2 {} vs {}", got.f2, want.1);
            assert!(close(got.f3, want.2), "f3 {} vs {}", got.f3, want.2);
        }
    }
}

#[test]
fn evaluation_is_pure() {
    let p = SystemParams::default();
    let s = paper_scenario(50, 4, 500.0, 3);
    let ind = random_individual(&s, &p, &mut rng(5)).unwrap();
    let a = evaluate(&ind, &s, &p).unwrap();
    let b = evaluate(&ind.clone(), &s.clone(), &p.clone()).unwrap();
    assert_eq!(a, b);
}
