//! Minimum-volume range inference for spherical state spaces.
//!
//! Given a set of observed outcome distributions, the inferred range is the
//! minimum-volume ellipsoid that contains them *inside their own affine
//! hull*: the pipeline first reduces the points to full-dimensional
//! coordinates on that hull, solves the minimum-volume enclosing ellipsoid
//! there, and lifts the result back to ambient coordinates as a possibly
//! rank-deficient [`RangeEllipsoid`].
//!
//! The enclosing-ellipsoid solver is barycentric-coordinate ascent on the
//! lifted points (x; 1) — Khachiyan's scheme with Wolfe–Atwood
//! decrease/drop steps, which converge to the 1e-9 duality-gap regime in
//! tens of iterations where the plain increase-only ascent needs millions.

use thiserror::Error;

use crate::linalg::{self, Matrix};

/// Default duality-gap tolerance of the enclosing-ellipsoid solver.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default affine-hull membership tolerance.
pub const DEFAULT_AFFINE_TOL: f64 = 1e-7;
/// Iteration cap of the ascent.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum MveeError {
    #[error("point set must contain at least one point")]
    EmptyPointSet,
    #[error("point {0} has dimension {1}, expected {2}")]
    DimensionMismatch(usize, usize, usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("points do not affinely span the space; reduce to the affine hull first")]
    DegenerateSpan,
    #[error("enclosing-ellipsoid ascent did not converge within {iterations} iterations")]
    NotConverged {
        iterations: usize,
        last: FullDimEllipsoid,
    },
    #[error("invalid ellipsoid data: {0}")]
    InvalidEllipsoid(String),
}

/// A finite set of points in ℝⁿ.
#[derive(Debug, Clone)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, MveeError> {
        let dim = points.first().ok_or(MveeError::EmptyPointSet)?.len();
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(MveeError::DimensionMismatch(i, p.len(), dim));
            }
            if !p.iter().all(|x| x.is_finite()) {
                return Err(MveeError::NonFinite(i));
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.points.iter().map(Vec::as_slice)
    }
}

/// Base point and isometry describing the affine hull of a point set:
/// every input point p satisfies p ≈ p₀ + V Vᵀ(p - p₀).
#[derive(Debug, Clone)]
pub struct AffineFrame {
    base: Vec<f64>,
    basis: Matrix,
}

impl AffineFrame {
    /// Affine dimension d of the hull.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn base_point(&self) -> &[f64] {
        &self.base
    }

    /// The n×d isometry V (VᵀV = I).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Lifts reduced coordinates back to ambient space: p₀ + V x.
    pub fn lift(&self, x: &[f64]) -> Vec<f64> {
        linalg::add_vec(&self.basis.mul_vec(x), &self.base)
    }

    /// Reduced coordinates Vᵀ(p - p₀) of an ambient point.
    pub fn reduce(&self, p: &[f64]) -> Vec<f64> {
        self.basis
            .transpose()
            .mul_vec(&linalg::sub_vec(p, &self.base))
    }
}

/// Full-dimensional ellipsoid {x : (x-c)ᵀ A (x-c) ≤ 1} with A symmetric
/// positive definite.
#[derive(Debug, Clone)]
pub struct FullDimEllipsoid {
    pub center: Vec<f64>,
    pub shape: Matrix,
}

/// Possibly rank-deficient ellipsoid in ambient coordinates, written with
/// the correlation matrix Q and center t:
/// {p : (I - QQ⁺)(p - t) = 0 and (p - t)ᵀ Q⁺ (p - t) ≤ 1}.
#[derive(Debug, Clone)]
pub struct RangeEllipsoid {
    dim: usize,
    center: Vec<f64>,
    corr: Matrix,
    rank: usize,
}

impl RangeEllipsoid {
    /// Validates symmetry and positive semidefiniteness of Q (within 1e-9
    /// relative) and records its numerical rank.
    pub fn new(center: Vec<f64>, corr: Matrix) -> Result<Self, MveeError> {
        Self::with_tolerance(center, corr, 1e-9)
    }

    /// As [`RangeEllipsoid::new`] with an explicit validation slack.
    /// Hand-entered or rounded correlation matrices are often slightly
    /// asymmetric or indefinite; downstream consumers decide at their own
    /// tolerance whether such data are usable.
    pub fn with_tolerance(center: Vec<f64>, corr: Matrix, tol: f64) -> Result<Self, MveeError> {
        let n = center.len();
        if corr.rows() != n || corr.cols() != n {
            return Err(MveeError::InvalidEllipsoid(format!(
                "Q is {}x{}, expected {n}x{n}",
                corr.rows(),
                corr.cols()
            )));
        }
        if !center.iter().all(|x| x.is_finite()) {
            return Err(MveeError::InvalidEllipsoid("non-finite center".into()));
        }
        let scale = corr.max_abs().max(1.0);
        if corr.asymmetry() > tol * scale {
            return Err(MveeError::InvalidEllipsoid("Q is not symmetric".into()));
        }
        let corr = corr.symmetrized();
        let eig = linalg::sym_eig(&corr).map_err(|e| MveeError::InvalidEllipsoid(e.to_string()))?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol * scale {
            return Err(MveeError::InvalidEllipsoid(format!(
                "Q has negative eigenvalue {min:.3e}"
            )));
        }
        let rank = linalg::rank(&corr, linalg::DEFAULT_TOL);
        Ok(RangeEllipsoid {
            dim: n,
            center,
            corr,
            rank,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Center t.
    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Correlation matrix Q.
    pub fn correlation(&self) -> &Matrix {
        &self.corr
    }

    /// Numerical rank of Q (the dimension of the support).
    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Splits a point set into its affine frame and the reduced coordinates
/// Vᵀ(pₓ - p₀), which affinely span ℝᵈ. A single point yields d = 0.
pub fn affine_reduce(ps: &PointSet, tol_aff: f64) -> (AffineFrame, PointSet) {
    let n = ps.dim();
    let base = ps.point(0).to_vec();
    let diffs = Matrix::from_fn(n, ps.len() - 1, |i, j| ps.point(j + 1)[i] - base[i]);
    let basis = if ps.len() == 1 {
        Matrix::zeros(n, 0)
    } else {
        linalg::range_basis(&diffs, tol_aff)
    };
    let frame = AffineFrame { base, basis };
    let reduced: Vec<Vec<f64>> = ps.iter().map(|p| frame.reduce(p)).collect();
    let reduced = PointSet {
        dim: frame.dim(),
        points: reduced,
    };
    (frame, reduced)
}

/// Inverse of a symmetric positive-definite matrix via its spectrum.
///
/// The degeneracy cutoff sits strictly below the square of the default
/// affine-hull tolerance, so any direction that survives
/// [`affine_reduce`] keeps the design matrix invertible.
fn spd_inverse(m: &Matrix) -> Result<Matrix, MveeError> {
    let eig = linalg::sym_eig(m).map_err(|e| MveeError::InvalidEllipsoid(e.to_string()))?;
    let lead = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if lead <= 0.0 || min <= 1e-15 * lead {
        return Err(MveeError::DegenerateSpan);
    }
    let n = m.rows();
    let mut out = Matrix::zeros(n, n);
    for k in 0..n {
        let inv_l = 1.0 / eig.eigenvalues[k];
        for i in 0..n {
            let uik = eig.eigenvectors.get(i, k);
            for j in 0..n {
                let v = out.get(i, j) + uik * inv_l * eig.eigenvectors.get(j, k);
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// Assembles the ellipsoid for a weight vector u:
/// c = Σ uᵢxᵢ, A = (1/d)(Σ uᵢxᵢxᵢᵀ - ccᵀ)⁻¹.
fn ellipsoid_from_weights(ps: &PointSet, u: &[f64]) -> Result<FullDimEllipsoid, MveeError> {
    let d = ps.dim();
    let mut center = vec![0.0; d];
    for (w, p) in u.iter().zip(ps.iter()) {
        for (c, x) in center.iter_mut().zip(p) {
            *c += w * x;
        }
    }
    let mut scatter = Matrix::zeros(d, d);
    for (w, p) in u.iter().zip(ps.iter()) {
        for i in 0..d {
            for j in 0..d {
                let v = scatter.get(i, j) + w * p[i] * p[j];
                scatter.set(i, j, v);
            }
        }
    }
    let centered = scatter.sub(&Matrix::outer(&center, &center)).symmetrized();
    let shape = spd_inverse(&centered)?.scaled(1.0 / d as f64).symmetrized();
    Ok(FullDimEllipsoid { center, shape })
}

/// Minimum-volume enclosing ellipsoid of points that affinely span ℝᵈ.
///
/// Ascent on the design weights u of the lifted points qᵢ = (xᵢ; 1):
/// κᵢ = qᵢᵀ X(u)⁻¹ qᵢ with X(u) = Σ uᵢqᵢqᵢᵀ, increase step toward the
/// largest κ (exact line-search step β = (κ-d-1)/((d+1)(κ-1))), decrease
/// step away from the smallest-κ support point when that promises the
/// larger gain, stop at κ_max ≤ (1+eps)(d+1). Ties in the argmax/argmin
/// break toward the lowest index.
pub fn mvee_full(ps: &PointSet, eps: f64) -> Result<FullDimEllipsoid, MveeError> {
    assert!(eps > 0.0, "eps must be positive");
    let d = ps.dim();
    let m = ps.len();
    if d == 0 || m < d + 1 {
        return Err(MveeError::DegenerateSpan);
    }

    // solve in centered unit-scale coordinates; the lifted design matrix
    // mixes coordinates with a homogeneous 1, so without normalization its
    // conditioning would depend on the absolute spread of the data
    let mut centroid = vec![0.0; d];
    for p in ps.iter() {
        for (c, x) in centroid.iter_mut().zip(p) {
            *c += x / m as f64;
        }
    }
    let mut spread = 0.0f64;
    for p in ps.iter() {
        for (x, c) in p.iter().zip(&centroid) {
            spread = spread.max((x - c).abs());
        }
    }
    if spread == 0.0 {
        return Err(MveeError::DegenerateSpan);
    }
    let normalized = PointSet {
        dim: d,
        points: ps
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&centroid)
                    .map(|(x, c)| (x - c) / spread)
                    .collect()
            })
            .collect(),
    };
    let denormalize = |e: FullDimEllipsoid| FullDimEllipsoid {
        center: e
            .center
            .iter()
            .zip(&centroid)
            .map(|(y, c)| c + spread * y)
            .collect(),
        shape: e.shape.scaled(1.0 / (spread * spread)),
    };
    let ps = &normalized;

    let lifted = Matrix::from_fn(m, d + 1, |i, j| if j < d { ps.point(i)[j] } else { 1.0 });
    let mut u = vec![1.0 / m as f64; m];
    let target = d as f64 + 1.0;
    let threshold = (1.0 + eps) * target;

    for _ in 0..MAX_ITERATIONS {
        let mut design = Matrix::zeros(d + 1, d + 1);
        for (i, w) in u.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            let q = lifted.row(i);
            for a in 0..=d {
                for b in 0..=d {
                    let v = design.get(a, b) + w * q[a] * q[b];
                    design.set(a, b, v);
                }
            }
        }
        let inv = spd_inverse(&design.symmetrized())?;

        let kappa: Vec<f64> = (0..m)
            .map(|i| {
                let q = lifted.row(i);
                let iq = inv.mul_vec(q);
                linalg::dot(q, &iq)
            })
            .collect();

        let mut jmax = 0;
        for (i, k) in kappa.iter().enumerate() {
            if *k > kappa[jmax] {
                jmax = i;
            }
        }
        if kappa[jmax] <= threshold {
            return ellipsoid_from_weights(ps, &u).map(denormalize);
        }

        // candidate decrease step: smallest κ among the active support,
        // guarded so the support never shrinks below d+1 points
        let active = u.iter().filter(|w| **w > 0.0).count();
        let mut jmin = None;
        if active > d + 1 {
            for (i, k) in kappa.iter().enumerate() {
                if u[i] > 0.0 && jmin.is_none_or(|j: usize| *k < kappa[j]) {
                    jmin = Some(i);
                }
            }
        }

        let gain_up = kappa[jmax] - target;
        let (j, beta) = match jmin {
            Some(jm) if (target - kappa[jm]) > gain_up => {
                let k = kappa[jm];
                let step = if k > 1.0 + 1e-12 {
                    (k - target) / (target * (k - 1.0))
                } else {
                    f64::NEG_INFINITY
                };
                let limit = -u[jm] / (1.0 - u[jm]).max(1e-300);
                (jm, step.max(limit))
            }
            _ => {
                let k = kappa[jmax];
                (jmax, (k - target) / (target * (k - 1.0)))
            }
        };

        for w in u.iter_mut() {
            *w *= 1.0 - beta;
        }
        u[j] += beta;
        u[j] = u[j].max(0.0);
    }

    let last = ellipsoid_from_weights(ps, &u).map(denormalize)?;
    Err(MveeError::NotConverged {
        iterations: MAX_ITERATIONS,
        last,
    })
}

/// Minimum-volume range inference for a spherical state space: reduce to
/// the affine hull, enclose with the minimum-volume ellipsoid there, and
/// lift to ambient coordinates as Q = V Ã⁻¹ Vᵀ, t = V c̃ + p₀.
///
/// Degenerate hulls take closed forms: a single point maps to Q = 0 with
/// t at the point; a one-dimensional hull maps to the segment's midpoint
/// and half-length as a rank-1 ellipsoid.
pub fn ddi_spherical(ps: &PointSet, eps: f64, tol_aff: f64) -> Result<RangeEllipsoid, MveeError> {
    let n = ps.dim();
    let (frame, reduced) = affine_reduce(ps, tol_aff);
    let (center, corr) = match frame.dim() {
        0 => (frame.base_point().to_vec(), Matrix::zeros(n, n)),
        1 => {
            let xs: Vec<f64> = reduced.iter().map(|p| p[0]).collect();
            let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let axis = frame.basis().col(0);
            let corr = Matrix::outer(&axis, &axis).scaled(half * half);
            (frame.lift(&[mid]), corr)
        }
        _ => {
            let full = mvee_full(&reduced, eps)?;
            let q_reduced = spd_inverse(&full.shape)?;
            let v = frame.basis();
            let corr = v.mul(&q_reduced).mul(&v.transpose()).symmetrized();
            (frame.lift(&full.center), corr)
        }
    };
    RangeEllipsoid::new(center, corr)
}

/// Membership test for a lifted ellipsoid: the point must lie on the
/// support plane within `tol` and satisfy the quadratic form within `tol`.
pub fn ellipsoid_contains(e: &RangeEllipsoid, p: &[f64], tol: f64) -> bool {
    assert_eq!(p.len(), e.dim(), "dimension mismatch");
    let z = linalg::sub_vec(p, e.center());
    let basis = linalg::range_basis(e.correlation(), linalg::DEFAULT_TOL);
    let in_plane = basis.mul_vec(&basis.transpose().mul_vec(&z));
    let residual = linalg::linf_norm(&linalg::sub_vec(&z, &in_plane));
    if residual > tol {
        return false;
    }
    let pinv = linalg::pinv(e.correlation(), linalg::DEFAULT_TOL);
    linalg::dot(&z, &pinv.mul_vec(&z)) <= 1.0 + tol
}

/// Volume of the unit ball in dimension k.
fn unit_ball_volume(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(k - 2) * 2.0 * std::f64::consts::PI / k as f64,
    }
}

/// Support dimension and volume measured inside the support:
/// vol = V_rank · √(∏ nonzero eigenvalues of Q). Rank 0 yields volume 0.
pub fn ellipsoid_volume(e: &RangeEllipsoid) -> (usize, f64) {
    let r = e.rank();
    if r == 0 {
        return (0, 0.0);
    }
    let eig =
        linalg::sym_eig(e.correlation()).expect("correlation matrix validated at construction");
    let det: f64 = eig.eigenvalues.iter().take(r).product();
    (r, unit_ball_volume(r) * det.max(0.0).sqrt())
}

/// Entrywise comparison of two lifted ellipsoids:
/// |Q₁-Q₂|_max ≤ tol and |t₁-t₂|_∞ ≤ tol.
pub fn ellipsoid_equal(e1: &RangeEllipsoid, e2: &RangeEllipsoid, tol: f64) -> bool {
    assert_eq!(e1.dim(), e2.dim(), "dimension mismatch");
    let dq = e1.correlation().sub(e2.correlation()).max_abs();
    let dt = linalg::linf_norm(&linalg::sub_vec(e1.center(), e2.center()));
    dq <= tol && dt <= tol
}
