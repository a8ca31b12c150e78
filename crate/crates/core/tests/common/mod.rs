//! Seeded sampling helpers and independent oracles shared by the
//! integration suites.

#![allow(dead_code)]

use ddi_core::linalg::{self, Matrix};
use ddi_core::qubit::{BlochState, QubitEffect, QubitPovm, StateSet};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

/// Random rotation (det +1) from Gram-Schmidt on Gaussian columns.
pub fn random_rotation3(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = Vec::new();
        for _ in 0..3 {
            let mut v = vec![normal(rng), normal(rng), normal(rng)];
            for prev in &cols {
                let proj = linalg::dot(&v, prev);
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= proj * p;
                }
            }
            let n = linalg::norm2(&v);
            if n < 1e-6 {
                cols.clear();
                break;
            }
            cols.push(v.iter().map(|x| x / n).collect());
        }
        if cols.len() < 3 {
            continue;
        }
        let mut m = Matrix::from_fn(3, 3, |i, j| cols[j][i]);
        // force det +1 by flipping the last column if needed
        let det = m.get(0, 0) * (m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1))
            - m.get(0, 1) * (m.get(1, 0) * m.get(2, 2) - m.get(1, 2) * m.get(2, 0))
            + m.get(0, 2) * (m.get(1, 0) * m.get(2, 1) - m.get(1, 1) * m.get(2, 0));
        if det < 0.0 {
            for i in 0..3 {
                m.set(i, 2, -m.get(i, 2));
            }
        }
        return m;
    }
}

/// Random orthogonal map; half the draws are reflections (det -1).
pub fn random_orthogonal3(rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = random_rotation3(rng);
    if uniform(rng) < 0.5 {
        for i in 0..3 {
            m.set(i, 2, -m.get(i, 2));
        }
    }
    m
}

/// Random valid measurement with n outcomes: centered Gaussian Bloch
/// parts scaled inside the positivity margin of random half-traces.
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

/// The Bloch-part matrix of a measurement (n×3).
pub fn bloch_matrix(povm: &QubitPovm) -> Matrix {
    Matrix::from_fn(povm.outcomes(), 3, |y, k| povm.effect(y).b[k])
}

/// A probe set that is observationally complete for the support of the
/// given measurement: the regular tetrahedron for full-rank supports, a
/// square in the support plane for rank 2, an antipodal pair on the
/// support axis for rank 1, and a single state for trivial measurements.
pub fn oc_probe_for(povm: &QubitPovm) -> StateSet {
    let b = bloch_matrix(povm);
    let support = linalg::range_basis(&b.transpose(), linalg::DEFAULT_TOL);
    match support.cols() {
        0 => StateSet::new(vec![BlochState::new([0.0; 3]).unwrap()]).unwrap(),
        1 => {
            let u = support.col(0);
            let u = [u[0], u[1], u[2]];
            StateSet::new(vec![
                BlochState::new(u).unwrap(),
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

/// Exact Born statistics of a measurement probed with a state set, as a
/// point set in distribution space.
pub fn exact_probe_table(povm: &QubitPovm, states: &StateSet) -> ddi_core::PointSet {
    let rows: Vec<Vec<f64>> = states.iter().map(|s| ddi_core::born(povm, s)).collect();
    ddi_core::PointSet::new(rows).unwrap()
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).max_abs()
}

// ---------------------------------------------------------------------
// independent minimum-enclosing-ellipse oracle (2D)
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

/// Exact minimum enclosing circle by enumeration over the pairs and
/// triples that can determine it.
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

/// Smallest enclosing-ellipse area found by brute force over ellipse
/// shapes: every shape class is a linear image of the circle, so for each
/// grid orientation/aspect pair the minimal member is the exact minimum
/// enclosing circle of the transformed points. Grid plus local refinement.
pub fn brute_force_min_ellipse_area(pts: &[[f64; 2]]) -> f64 {
    let area_for = |theta: f64, rho: f64| {
        let (c, s) = (theta.cos(), theta.sin());
        // map candidate ellipses of orientation theta, aspect rho to circles
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

/// Area of a lifted rank-2 ellipsoid, from the product of its two nonzero
/// eigenvalues.
pub fn ellipse_area(e: &ddi_core::RangeEllipsoid) -> f64 {
    let (rank, vol) = ddi_core::ellipsoid_volume(e);
    assert_eq!(rank, 2, "expected a rank-2 ellipsoid");
    vol
}
