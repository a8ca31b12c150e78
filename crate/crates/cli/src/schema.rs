//! JSON schemas of the machine-readable inputs and reports. Numbers are
//! serialized with `serde_json`'s shortest round-trip encoding, so every
//! report re-parses to the identical value.

use ddi_core::linalg::Matrix;
use ddi_core::{ellipsoid_volume, MveeError, PovmError, QubitEffect, QubitPovm, RangeEllipsoid};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllipsoidJson {
    pub n: usize,
    pub t: Vec<f64>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
}

impl EllipsoidJson {
    pub fn from_ellipsoid(e: &RangeEllipsoid) -> Self {
        let q = (0..e.dim())
            .map(|i| (0..e.dim()).map(|j| e.correlation().get(i, j)).collect())
            .collect();
        let (_, volume) = ellipsoid_volume(e);
        EllipsoidJson {
            n: e.dim(),
            t: e.center().to_vec(),
            q,
            rank: Some(e.rank()),
            volume: Some(volume),
        }
    }

    /// Rebuilds the ellipsoid, accepting rounded data within `tol`.
    pub fn to_ellipsoid(&self, tol: f64) -> Result<RangeEllipsoid, MveeError> {
        if self.t.len() != self.n || self.q.len() != self.n {
            return Err(MveeError::InvalidEllipsoid(format!(
                "fields disagree on the dimension: n = {}, |t| = {}, |Q| = {}",
                self.n,
                self.t.len(),
                self.q.len()
            )));
        }
        for (i, row) in self.q.iter().enumerate() {
            if row.len() != self.n {
                return Err(MveeError::InvalidEllipsoid(format!(
                    "Q row {i} has {} entries, expected {}",
                    row.len(),
                    self.n
                )));
            }
        }
        let q = Matrix::from_fn(self.n, self.n, |i, j| self.q[i][j]);
        RangeEllipsoid::with_tolerance(self.t.clone(), q, tol)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EffectJson {
    pub a: f64,
    pub b: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmJson {
    pub effects: Vec<EffectJson>,
}

impl PovmJson {
    pub fn from_povm(p: &QubitPovm) -> Self {
        PovmJson {
            effects: p
                .effects()
                .iter()
                .map(|e| EffectJson { a: e.a, b: e.b })
                .collect(),
        }
    }

    pub fn to_povm(&self, tol: f64) -> Result<QubitPovm, PovmError> {
        let effects = self
            .effects
            .iter()
            .map(|e| QubitEffect { a: e.a, b: e.b })
            .collect();
        QubitPovm::with_tolerance(effects, tol)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatesJson {
    pub bloch: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectorJson {
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDigest {
    pub rows: usize,
    pub cols: usize,
    pub row_sum_residuals: Vec<f64>,
    pub renormalized: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineSummary {
    pub dim: usize,
    pub base_point: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Validity {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Report emitted by `infer` and `reconstruct`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InferenceReport {
    pub input: InputDigest,
    pub affine: AffineSummary,
    pub ellipsoid: EllipsoidJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub povm: Option<PovmJson>,
    pub validity: Validity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivReport {
    pub outcomes: usize,
    pub equivalent: bool,
    pub delta_q_max: f64,
    pub delta_t_max: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: String,
    pub states: usize,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_affine_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_ellipsoid: Option<EllipsoidJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleJson {
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonuniqueReport {
    pub hull_points: usize,
    pub optimal_area: f64,
    pub flush_edge: usize,
    pub triangle: TriangleJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessPair>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessPair {
    pub first: TriangleJson,
    pub second: TriangleJson,
    pub area_difference: f64,
}
