//! Binary-spawn utilities, seeded samplers, and independent oracles for
//! the CLI surface tests and the acceptance gate.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use ddi_core::linalg::{self, Matrix};
use ddi_core::qubit::{BlochState, QubitEffect, QubitPovm, StateSet};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ddi")
}

pub fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("DDI_SEED")
        .output()
        .expect("binary runs")
}

pub fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(bin())
        .args(args)
        .env_remove("DDI_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    use std::io::Write;
    child
        .stdin
        .as_mut()
        .expect("stdin handle")
        .write_all(input.as_bytes())
        .expect("stdin write");
    child.wait_with_output().expect("binary runs")
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

// ---------------------------------------------------------------------
// seeded sampling
// ---------------------------------------------------------------------

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn uniform_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(rng)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn unit_vec3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [normal(rng), normal(rng), normal(rng)];
        let n = linalg::norm2(&v);
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn random_povm(rng: &mut ChaCha8Rng, n: usize) -> QubitPovm {
    loop {
        let mut bloch: Vec<[f64; 3]> = (0..n)
            .map(|_| [normal(rng), normal(rng), normal(rng)])
            .collect();
        let mut mean = [0.0; 3];
        for b in &bloch {
            for (m, x) in mean.iter_mut().zip(b) {
                *m += x / n as f64;
            }
        }
        for b in bloch.iter_mut() {
            for (x, m) in b.iter_mut().zip(&mean) {
                *x -= m;
            }
        }
        let weights: Vec<f64> = (0..n).map(|_| uniform(rng) + 0.1).collect();
        let total: f64 = weights.iter().sum();
        let half_traces: Vec<f64> = weights.iter().map(|w| w / total).collect();

        let mut scale = f64::INFINITY;
        for (a, b) in half_traces.iter().zip(&bloch) {
            let margin = a.min(1.0 - a);
            let norm = linalg::norm2(b);
            if norm > 1e-9 {
                scale = scale.min(margin / norm);
            }
        }
        if !scale.is_finite() {
            continue;
        }
        let scale = scale * uniform_in(rng, 0.3, 0.95);
        let effects: Vec<QubitEffect> = half_traces
            .iter()
            .zip(&bloch)
            .map(|(&a, b)| QubitEffect {
                a,
                b: [b[0] * scale, b[1] * scale, b[2] * scale],
            })
            .collect();
        if let Ok(povm) = QubitPovm::new(effects) {
            return povm;
        }
    }
}

/// Probe set that is observationally complete for the support of the
/// measurement: the regular tetrahedron for rank-3 supports, a square in
/// the support plane for rank 2, an antipodal pair for rank 1, one state
/// for rank 0.
pub fn oc_probe_for(povm: &QubitPovm) -> StateSet {
    let b = Matrix::from_fn(povm.outcomes(), 3, |y, k| povm.effect(y).b[k]);
    let support = linalg::range_basis(&b.transpose(), linalg::DEFAULT_TOL);
    match support.cols() {
        0 => StateSet::new(vec![BlochState::new([0.0; 3]).unwrap()]).unwrap(),
        1 => {
            let u = support.col(0);
            StateSet::new(vec![
                BlochState::new([u[0], u[1], u[2]]).unwrap(),
                BlochState::new([-u[0], -u[1], -u[2]]).unwrap(),
            ])
            .unwrap()
        }
        2 => {
            let (u, v) = (support.col(0), support.col(1));
            let states = (0..4)
                .map(|k| {
                    let a = std::f64::consts::FRAC_PI_2 * k as f64;
                    let (c, s) = (a.cos(), a.sin());
                    BlochState::new([
                        c * u[0] + s * v[0],
                        c * u[1] + s * v[1],
                        c * u[2] + s * v[2],
                    ])
                    .unwrap()
                })
                .collect();
            StateSet::new(states).unwrap()
        }
        _ => ddi_core::gen_regular_simplex(),
    }
}

pub fn support_rank(povm: &QubitPovm) -> usize {
    let b = Matrix::from_fn(povm.outcomes(), 3, |y, k| povm.effect(y).b[k]);
    linalg::rank(&b, linalg::DEFAULT_TOL)
}

pub fn exact_probe_table(povm: &QubitPovm, states: &StateSet) -> ddi_core::PointSet {
    let rows: Vec<Vec<f64>> = states.iter().map(|s| ddi_core::born(povm, s)).collect();
    ddi_core::PointSet::new(rows).unwrap()
}

pub fn povm_json(p: &QubitPovm) -> String {
    let effects: Vec<serde_json::Value> = p
        .effects()
        .iter()
        .map(|e| serde_json::json!({"a": e.a, "b": e.b}))
        .collect();
    serde_json::json!({ "effects": effects }).to_string()
}

pub fn states_json(s: &StateSet) -> String {
    let bloch: Vec<[f64; 3]> = s.iter().map(|x| x.coords()).collect();
    serde_json::json!({ "bloch": bloch }).to_string()
}

// ---------------------------------------------------------------------
// independent enclosing-ellipse oracle (grid over shapes + exact minimum
// enclosing circle per shape)
// ---------------------------------------------------------------------

fn circle_from_two(p: [f64; 2], q: [f64; 2]) -> ([f64; 2], f64) {
    let c = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
    let r = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
    (c, r)
}

fn circle_from_three(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<([f64; 2], f64)> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-14 {
        return None;
    }
    let a2 = a[0] * a[0] + a[1] * a[1];
    let b2 = b[0] * b[0] + b[1] * b[1];
    let c2 = c[0] * c[0] + c[1] * c[1];
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
    Some(([ux, uy], r))
}

pub fn min_enclosing_circle(pts: &[[f64; 2]]) -> ([f64; 2], f64) {
    let encloses = |c: [f64; 2], r: f64| {
        pts.iter()
            .all(|p| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt() <= r + 1e-10)
    };
    let mut best: Option<([f64; 2], f64)> = None;
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (c, r) = circle_from_two(pts[i], pts[j]);
            if encloses(c, r) && best.is_none_or(|(_, br)| r < br) {
                best = Some((c, r));
            }
            for k in (j + 1)..n {
                if let Some((c, r)) = circle_from_three(pts[i], pts[j], pts[k]) {
                    if encloses(c, r) && best.is_none_or(|(_, br)| r < br) {
                        best = Some((c, r));
                    }
                }
            }
        }
    }
    best.expect("at least two points")
}

pub fn brute_force_min_ellipse_area(pts: &[[f64; 2]]) -> f64 {
    let area_for = |theta: f64, rho: f64| {
        let (c, s) = (theta.cos(), theta.sin());
        let mapped: Vec<[f64; 2]> = pts
            .iter()
            .map(|p| {
                let x = c * p[0] + s * p[1];
                let y = -s * p[0] + c * p[1];
                [x, rho * y]
            })
            .collect();
        let (_, r) = min_enclosing_circle(&mapped);
        std::f64::consts::PI * r * r / rho
    };

    let mut best = (f64::INFINITY, 0.0, 1.0);
    let mut theta_range = (0.0, std::f64::consts::PI);
    let mut rho_range = (0.02f64, 1.0f64);
    for round in 0..8 {
        let steps = if round == 0 { 48 } else { 16 };
        let mut local = best;
        for i in 0..=steps {
            let theta = theta_range.0 + (theta_range.1 - theta_range.0) * i as f64 / steps as f64;
            for j in 0..=steps {
                let rho = rho_range.0 + (rho_range.1 - rho_range.0) * j as f64 / steps as f64;
                if rho <= 0.0 {
                    continue;
                }
                let a = area_for(theta, rho);
                if a < local.0 {
                    local = (a, theta, rho);
                }
            }
        }
        best = local;
        let theta_step = (theta_range.1 - theta_range.0) / steps as f64;
        let rho_step = (rho_range.1 - rho_range.0) / steps as f64;
        theta_range = (best.1 - theta_step, best.1 + theta_step);
        rho_range = ((best.2 - rho_step).max(1e-3), (best.2 + rho_step).min(1.0));
    }
    best.0
}
