//! Observational and informational completeness of probe-state sets.
//!
//! A state set is informationally complete when its Bloch vectors affinely
//! span the full three-dimensional Bloch space. It is observationally
//! complete when its minimum-volume enclosing ellipsoid is the whole Bloch
//! ball — the strictly stronger condition under which range inference
//! recovers any full-support measurement exactly. The support-restricted
//! variant certifies the same property on a subspace: projected states
//! must fill the subspace's unit ball.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::mvee::{ddi_spherical, RangeEllipsoid, DEFAULT_EPS};
use crate::qubit::{BlochState, StateSet};

#[derive(Debug, Error, PartialEq)]
pub enum CompletenessError {
    #[error("projector is not symmetric idempotent (residual {0:.3e})")]
    NotAProjector(f64),
    #[error("polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error("polygon plane must have rank 2, got {0}")]
    NotAPlane(usize),
    #[error("state index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("scale factor must lie in (0, 1], got {0}")]
    BadScaleFactor(f64),
    #[error("unknown solid name: {0}")]
    UnknownSolid(String),
}

/// Orthogonal projector onto a subspace of Bloch space.
#[derive(Debug, Clone)]
pub struct SubspaceProjector {
    p: Matrix,
}

impl SubspaceProjector {
    pub fn new(p: Matrix) -> Result<Self, CompletenessError> {
        if p.rows() != 3 || p.cols() != 3 {
            return Err(CompletenessError::NotAProjector(f64::INFINITY));
        }
        let sym = p.asymmetry();
        let idem = p.mul(&p).sub(&p).max_abs();
        let residual = sym.max(idem);
        if residual > 1e-10 {
            return Err(CompletenessError::NotAProjector(residual));
        }
        Ok(SubspaceProjector { p: p.symmetrized() })
    }

    /// Projector onto the span of two coordinate axes (0 = x, 1 = y, 2 = z).
    pub fn coordinate_plane(i: usize, j: usize) -> Self {
        assert!(i < 3 && j < 3 && i != j);
        let mut p = Matrix::zeros(3, 3);
        p.set(i, i, 1.0);
        p.set(j, j, 1.0);
        SubspaceProjector { p }
    }

    /// Projector onto a single coordinate axis.
    pub fn coordinate_axis(i: usize) -> Self {
        assert!(i < 3);
        let mut p = Matrix::zeros(3, 3);
        p.set(i, i, 1.0);
        SubspaceProjector { p }
    }

    pub fn full() -> Self {
        SubspaceProjector {
            p: Matrix::identity(3),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.p
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.p, linalg::DEFAULT_TOL)
    }

    /// Orthonormal basis of the projected subspace.
    pub fn basis(&self) -> Matrix {
        linalg::range_basis(&self.p, linalg::DEFAULT_TOL)
    }

    pub fn apply(&self, r: &[f64; 3]) -> [f64; 3] {
        let v = self.p.mul_vec(r);
        [v[0], v[1], v[2]]
    }
}

/// Outcome of a completeness check. A negative verdict carries a witness:
/// the inferred ellipsoid that fails to be the ball, or the deficient
/// affine dimension.
#[derive(Debug, Clone)]
pub struct CompletenessVerdict {
    verdict: bool,
    witness: Option<Witness>,
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// The enclosing ellipsoid that differs from the reference ball.
    Ellipsoid(RangeEllipsoid),
    /// The affine dimension actually spanned.
    AffineDim(usize),
}

impl CompletenessVerdict {
    fn pass() -> Self {
        CompletenessVerdict {
            verdict: true,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        CompletenessVerdict {
            verdict: false,
            witness: Some(witness),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.verdict
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

fn solve_states(points: Vec<Vec<f64>>) -> RangeEllipsoid {
    let ps = crate::mvee::PointSet::new(points).expect("state sets are nonempty and finite");
    // the default hull tolerance drops directions too thin for the solver;
    // a set that loses a direction this way cannot enclose the unit ball
    // and fails the verdict through its deficient rank
    ddi_spherical(&ps, DEFAULT_EPS, crate::mvee::DEFAULT_AFFINE_TOL)
        .expect("enclosing-ellipsoid inference cannot fail on a reduced state set")
}

/// True iff the Bloch vectors affinely span ℝ³ (at least four affinely
/// independent states), the condition for conventional tomography.
pub fn is_informationally_complete(states: &StateSet, tol: f64) -> CompletenessVerdict {
    let (frame, _) = crate::mvee::affine_reduce(&states.to_points(), tol.max(1e-12));
    if frame.dim() == 3 {
        CompletenessVerdict::pass()
    } else {
        CompletenessVerdict::fail(Witness::AffineDim(frame.dim()))
    }
}

/// True iff the minimum-volume enclosing ellipsoid of the states is the
/// unit Bloch ball (Q = I, t = 0 within `tol`).
pub fn is_observationally_complete(states: &StateSet, tol: f64) -> CompletenessVerdict {
    let e = solve_states(states.iter().map(|s| s.coords().to_vec()).collect());
    let dq = e.correlation().sub(&Matrix::identity(3)).max_abs();
    let dt = linalg::linf_norm(e.center());
    if dq <= tol && dt <= tol {
        CompletenessVerdict::pass()
    } else {
        CompletenessVerdict::fail(Witness::Ellipsoid(e))
    }
}

/// Support-restricted check: projects the states onto the subspace and
/// requires the enclosing ellipsoid of the projections to be the
/// subspace's unit ball (Q = Π, t = 0 within `tol`). This certifies exact
/// range recovery for every measurement supported on that subspace.
pub fn is_oc_for_support(
    states: &StateSet,
    support: &SubspaceProjector,
    tol: f64,
) -> CompletenessVerdict {
    let projected: Vec<Vec<f64>> = states
        .iter()
        .map(|s| support.apply(&s.coords()).to_vec())
        .collect();
    let e = solve_states(projected);
    let dq = e.correlation().sub(support.matrix()).max_abs();
    let dt = linalg::linf_norm(e.center());
    if dq <= tol && dt <= tol {
        CompletenessVerdict::pass()
    } else {
        CompletenessVerdict::fail(Witness::Ellipsoid(e))
    }
}

fn state(r: [f64; 3]) -> BlochState {
    BlochState::new(r).expect("generator coordinates are unit vectors")
}

/// The regular tetrahedron inscribed in the Bloch sphere: four unit
/// vectors with pairwise inner products -1/3. This is the symmetric
/// informationally complete set, the minimal observationally complete one.
pub fn gen_regular_simplex() -> StateSet {
    let s = 1.0 / 3.0f64.sqrt();
    StateSet::new(vec![
        state([s, s, s]),
        state([s, -s, -s]),
        state([-s, s, -s]),
        state([-s, -s, s]),
    ])
    .expect("four states")
}

/// n unit vectors equally spaced in the given plane, the first on the
/// plane's first basis axis.
pub fn gen_regular_polygon(
    n: usize,
    plane: &SubspaceProjector,
) -> Result<StateSet, CompletenessError> {
    if n < 3 {
        return Err(CompletenessError::PolygonTooSmall(n));
    }
    if plane.rank() != 2 {
        return Err(CompletenessError::NotAPlane(plane.rank()));
    }
    let basis = plane.basis();
    let (u, v) = (basis.col(0), basis.col(1));
    let states = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let (c, s) = (angle.cos(), angle.sin());
            state([
                c * u[0] + s * v[0],
                c * u[1] + s * v[1],
                c * u[2] + s * v[2],
            ])
        })
        .collect();
    Ok(StateSet::new(states).expect("polygon has n >= 3 states"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatonicSolid {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl FromStr for PlatonicSolid {
    type Err = CompletenessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tetrahedron" => Ok(PlatonicSolid::Tetrahedron),
            "octahedron" => Ok(PlatonicSolid::Octahedron),
            "cube" => Ok(PlatonicSolid::Cube),
            "icosahedron" => Ok(PlatonicSolid::Icosahedron),
            "dodecahedron" => Ok(PlatonicSolid::Dodecahedron),
            other => Err(CompletenessError::UnknownSolid(other.to_string())),
        }
    }
}

impl fmt::Display for PlatonicSolid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PlatonicSolid::Tetrahedron => "tetrahedron",
            PlatonicSolid::Octahedron => "octahedron",
            PlatonicSolid::Cube => "cube",
            PlatonicSolid::Icosahedron => "icosahedron",
            PlatonicSolid::Dodecahedron => "dodecahedron",
        };
        f.write_str(name)
    }
}

/// Canonical unit-radius vertex coordinates of a Platonic solid, centroid
/// at the origin.
pub fn gen_platonic(solid: PlatonicSolid) -> StateSet {
    let states = match solid {
        PlatonicSolid::Tetrahedron => return gen_regular_simplex(),
        PlatonicSolid::Octahedron => {
            let mut v = Vec::new();
            for axis in 0..3 {
                for sign in [1.0, -1.0] {
                    let mut r = [0.0; 3];
                    r[axis] = sign;
                    v.push(state(r));
                }
            }
            v
        }
        PlatonicSolid::Cube => {
            let s = 1.0 / 3.0f64.sqrt();
            let mut v = Vec::new();
            for sx in [1.0, -1.0] {
                for sy in [1.0, -1.0] {
                    for sz in [1.0, -1.0] {
                        v.push(state([sx * s, sy * s, sz * s]));
                    }
                }
            }
            v
        }
        PlatonicSolid::Icosahedron => {
            let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
            let norm = (1.0 + phi * phi).sqrt();
            let (a, b) = (1.0 / norm, phi / norm);
            let mut v = Vec::new();
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    v.push(state([0.0, s1 * a, s2 * b]));
                    v.push(state([s1 * a, s2 * b, 0.0]));
                    v.push(state([s2 * b, 0.0, s1 * a]));
                }
            }
            v
        }
        PlatonicSolid::Dodecahedron => {
            let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
            let s = 1.0 / 3.0f64.sqrt();
            let (a, b) = (s / phi, s * phi);
            let mut v = Vec::new();
            for sx in [1.0, -1.0] {
                for sy in [1.0, -1.0] {
                    for sz in [1.0, -1.0] {
                        v.push(state([sx * s, sy * s, sz * s]));
                    }
                }
            }
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    v.push(state([0.0, s1 * a, s2 * b]));
                    v.push(state([s1 * a, s2 * b, 0.0]));
                    v.push(state([s2 * b, 0.0, s1 * a]));
                }
            }
            v
        }
    };
    StateSet::new(states).expect("solids have at least 6 vertices")
}

/// Scales the chosen Bloch vector by `factor`, leaving the rest unchanged.
pub fn perturb_set(
    states: &StateSet,
    index: usize,
    factor: f64,
) -> Result<StateSet, CompletenessError> {
    if index >= states.len() {
        return Err(CompletenessError::IndexOutOfRange(index));
    }
    if !(factor > 0.0 && factor <= 1.0) {
        return Err(CompletenessError::BadScaleFactor(factor));
    }
    let scaled: Vec<BlochState> = states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let r = s.coords();
            if i == index {
                BlochState::new([r[0] * factor, r[1] * factor, r[2] * factor])
                    .expect("shrinking keeps the vector inside the ball")
            } else {
                *s
            }
        })
        .collect();
    Ok(StateSet::new(scaled).expect("same length as input"))
}
