//! Qubit measurements in the Bloch parametrization.
//!
//! A state is a real 3-vector r with |r| ≤ 1; an effect is a pair (a, b)
//! acting as p = a + b·r. Everything the range formalism needs — the Born
//! map, the gauge-invariant range descriptors (Q, t), range inversion back
//! to a canonical measurement, gauge transformations and finite-shot
//! sampling — has an exact real form here, so no complex operator algebra
//! is involved.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::mvee::{ellipsoid_equal, RangeEllipsoid};
use crate::table::ProbTable;

/// Strict tolerance for exactly-constructed measurements.
pub const STRICT_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum PovmError {
    #[error("Bloch vector has norm {0:.6}, exceeding 1")]
    StateOutsideBall(f64),
    #[error("effect {index}: invalid (a, b) pair: {reason}")]
    InvalidEffect { index: usize, reason: String },
    #[error("a measurement needs at least two outcomes, got {0}")]
    TooFewOutcomes(usize),
    #[error("a state set needs at least one state")]
    EmptyStateSet,
    #[error("effect half-traces sum to {0:.9}, expected 1")]
    HalfTracesNotNormalized(f64),
    #[error("effect Bloch parts sum to {0:.3e} in max-norm, expected 0")]
    BlochPartsUnbalanced(f64),
    #[error("gauge matrix is not orthogonal (|OᵀO - I|_max = {0:.3e})")]
    NotOrthogonal(f64),
}

/// Failure taxonomy of range inversion. Each case means the inference
/// fails for the supplied range: the data are insufficient or inconsistent
/// with a qubit measurement.
#[derive(Debug, Error, PartialEq)]
pub enum InversionError {
    #[error("inconsistent correlation matrix")]
    InconsistentCorrelation,
    #[error("exceeds qubit linear dimension")]
    ExceedsQubitRank,
    #[error("not normalizable as a POVM")]
    NotNormalizable,
    #[error("positivity violated")]
    PositivityViolated,
}

/// A qubit state as a Bloch vector with |r|₂ ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    r: [f64; 3],
}

impl BlochState {
    pub fn new(r: [f64; 3]) -> Result<Self, PovmError> {
        let norm = linalg::norm2(&r);
        if !norm.is_finite() || norm > 1.0 + 1e-12 {
            return Err(PovmError::StateOutsideBall(norm));
        }
        Ok(BlochState { r })
    }

    pub fn coords(&self) -> [f64; 3] {
        self.r
    }
}

/// A set of probe states.
#[derive(Debug, Clone)]
pub struct StateSet {
    states: Vec<BlochState>,
}

impl StateSet {
    pub fn new(states: Vec<BlochState>) -> Result<Self, PovmError> {
        if states.is_empty() {
            return Err(PovmError::EmptyStateSet);
        }
        Ok(StateSet { states })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &BlochState {
        &self.states[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BlochState> {
        self.states.iter()
    }

    /// The Bloch vectors as a point set in ℝ³.
    pub fn to_points(&self) -> crate::mvee::PointSet {
        crate::mvee::PointSet::new(self.states.iter().map(|s| s.r.to_vec()).collect())
            .expect("state sets are nonempty and finite")
    }
}

/// One measurement effect (a, b): outcome probability a + b·r. The
/// eigenvalue constraint 0 ≤ a ± |b| ≤ 1 reads |b|₂ ≤ min(a, 1-a).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitEffect {
    pub a: f64,
    pub b: [f64; 3],
}

impl QubitEffect {
    fn validate(&self, index: usize, tol: f64) -> Result<(), PovmError> {
        let finite = self.a.is_finite() && self.b.iter().all(|x| x.is_finite());
        if !finite {
            return Err(PovmError::InvalidEffect {
                index,
                reason: "non-finite".into(),
            });
        }
        if self.a < -tol || self.a > 1.0 + tol {
            return Err(PovmError::InvalidEffect {
                index,
                reason: format!("half-trace {} outside [0, 1]", self.a),
            });
        }
        let bnorm = linalg::norm2(&self.b);
        if bnorm > self.a.min(1.0 - self.a) + tol {
            return Err(PovmError::InvalidEffect {
                index,
                reason: format!(
                    "|b| = {bnorm:.6} exceeds min(a, 1-a) = {:.6}",
                    self.a.min(1.0 - self.a)
                ),
            });
        }
        Ok(())
    }
}

/// An n-outcome qubit measurement: effects (a_y, b_y) with Σa = 1 and
/// Σb = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitPovm {
    effects: Vec<QubitEffect>,
}

impl QubitPovm {
    /// Validates at the strict tolerance used for exactly-constructed
    /// measurements.
    pub fn new(effects: Vec<QubitEffect>) -> Result<Self, PovmError> {
        Self::with_tolerance(effects, STRICT_TOL)
    }

    /// Validates all invariants within `tol`; ranges inverted from noisy
    /// data need a looser tolerance than exact constructions. The bound on
    /// |Σb| scales as √(n·tol), following 1ᵀQ1 ≤ n·|Q1|_∞.
    pub fn with_tolerance(effects: Vec<QubitEffect>, tol: f64) -> Result<Self, PovmError> {
        let n = effects.len();
        if n < 2 {
            return Err(PovmError::TooFewOutcomes(n));
        }
        for (i, e) in effects.iter().enumerate() {
            e.validate(i, tol)?;
        }
        let a_sum: f64 = effects.iter().map(|e| e.a).sum();
        if (a_sum - 1.0).abs() > tol {
            return Err(PovmError::HalfTracesNotNormalized(a_sum));
        }
        let mut b_sum = [0.0; 3];
        for e in &effects {
            for (s, x) in b_sum.iter_mut().zip(&e.b) {
                *s += x;
            }
        }
        let b_residual = linalg::linf_norm(&b_sum);
        if b_residual > (n as f64 * tol).sqrt() + tol {
            return Err(PovmError::BlochPartsUnbalanced(b_residual));
        }
        Ok(QubitPovm { effects })
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effect(&self, y: usize) -> &QubitEffect {
        &self.effects[y]
    }

    pub fn effects(&self) -> &[QubitEffect] {
        &self.effects
    }

    /// The trivial two-outcome coin: both effects (1/2, 0).
    pub fn trivial() -> Self {
        let half = QubitEffect {
            a: 0.5,
            b: [0.0; 3],
        };
        QubitPovm {
            effects: vec![half, half],
        }
    }
}

/// An orthogonal transformation of Bloch space. Rotations (det +1)
/// correspond to unitary conjugation, reflections (det -1) to
/// anti-unitary conjugation; the range cannot tell the two apart.
#[derive(Debug, Clone)]
pub struct GaugeTransform {
    o: Matrix,
}

impl GaugeTransform {
    pub fn new(o: Matrix) -> Result<Self, PovmError> {
        if o.rows() != 3 || o.cols() != 3 {
            return Err(PovmError::NotOrthogonal(f64::INFINITY));
        }
        let residual = o.transpose().mul(&o).sub(&Matrix::identity(3)).max_abs();
        if residual > 1e-10 {
            return Err(PovmError::NotOrthogonal(residual));
        }
        Ok(GaugeTransform { o })
    }

    pub fn identity() -> Self {
        GaugeTransform {
            o: Matrix::identity(3),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.o
    }

    pub fn det(&self) -> f64 {
        let m = &self.o;
        m.get(0, 0) * (m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1))
            - m.get(0, 1) * (m.get(1, 0) * m.get(2, 2) - m.get(1, 2) * m.get(2, 0))
            + m.get(0, 2) * (m.get(1, 0) * m.get(2, 1) - m.get(1, 1) * m.get(2, 0))
    }
}

/// Outcome distribution of a measurement on a state: p_y = a_y + b_y·r,
/// clamped to [0, 1]. Measurements validated at a loose tolerance can
/// produce raw values slightly outside the interval; the clamp absorbs
/// them.
pub fn born(povm: &QubitPovm, state: &BlochState) -> Vec<f64> {
    let r = state.coords();
    povm.effects()
        .iter()
        .map(|e| (e.a + linalg::dot(&e.b, &r)).clamp(0.0, 1.0))
        .collect()
}

/// Gauge-invariant range descriptors of a measurement: t_y = a_y and
/// Q = B Bᵀ, the Gram matrix of the effect Bloch parts.
pub fn povm_range(povm: &QubitPovm) -> RangeEllipsoid {
    let n = povm.outcomes();
    let t: Vec<f64> = povm.effects().iter().map(|e| e.a).collect();
    let q = Matrix::from_fn(n, n, |x, y| {
        linalg::dot(&povm.effect(x).b, &povm.effect(y).b)
    });
    RangeEllipsoid::new(t, q).expect("a Gram matrix is symmetric PSD")
}

/// Inverts a range back to a measurement in canonical gauge: a_y = t_y and
/// b_y = row y of U_r Λ_r^{1/2}, with the eigendecomposition ordered and
/// sign-fixed by [`linalg::sym_eig`] and eigen-axis k mapped to Bloch axis
/// k. Degenerate eigenvalues leave a residual gauge freedom inside the
/// eigenspace; any orthonormal choice yields the same range.
///
/// All decisions are taken at `tol`: eigenvalues below -tol make the
/// correlation matrix inconsistent, eigenvalues within tol of zero are
/// dropped (each contributes at most tol entrywise), and more than three
/// remaining directions cannot come from a qubit.
pub fn range_invert(e: &RangeEllipsoid, tol: f64) -> Result<QubitPovm, InversionError> {
    let n = e.dim();
    let q = e.correlation();
    let t = e.center();

    let eig = linalg::sym_eig(q).map_err(|_| InversionError::InconsistentCorrelation)?;
    if eig.eigenvalues.last().copied().unwrap_or(0.0) < -tol {
        return Err(InversionError::InconsistentCorrelation);
    }
    let rank = eig.eigenvalues.iter().take_while(|&&l| l > tol).count();
    if rank > 3 {
        return Err(InversionError::ExceedsQubitRank);
    }

    let t_sum: f64 = t.iter().sum();
    let ones = vec![1.0; n];
    let row_residual = linalg::linf_norm(&q.mul_vec(&ones));
    if (t_sum - 1.0).abs() > tol || row_residual > tol {
        return Err(InversionError::NotNormalizable);
    }

    let mut effects = Vec::with_capacity(n);
    for (y, &a) in t.iter().enumerate() {
        let mut b = [0.0; 3];
        for (k, bk) in b.iter_mut().enumerate().take(rank) {
            *bk = eig.eigenvectors.get(y, k) * eig.eigenvalues[k].max(0.0).sqrt();
        }
        if a < -tol || a > 1.0 + tol {
            return Err(InversionError::NotNormalizable);
        }
        if linalg::norm2(&b) > a.min(1.0 - a) + tol {
            return Err(InversionError::PositivityViolated);
        }
        effects.push(QubitEffect { a, b });
    }

    QubitPovm::with_tolerance(effects, tol).map_err(|_| InversionError::NotNormalizable)
}

/// Rotates/reflects every effect Bloch part: b_y ↦ O b_y. The range is
/// unchanged.
pub fn gauge_apply(povm: &QubitPovm, gauge: &GaugeTransform) -> QubitPovm {
    let effects = povm
        .effects()
        .iter()
        .map(|e| {
            let b = gauge.matrix().mul_vec(&e.b);
            QubitEffect {
                a: e.a,
                b: [b[0], b[1], b[2]],
            }
        })
        .collect();
    QubitPovm { effects }
}

/// Two measurements are gauge-equivalent iff their ranges coincide: equal
/// (Q, t) within `tol`. For equal Gram matrices an explicit orthogonal map
/// between the Bloch-part lists always exists.
pub fn gauge_equivalent(p1: &QubitPovm, p2: &QubitPovm, tol: f64) -> bool {
    assert_eq!(p1.outcomes(), p2.outcomes(), "outcome count mismatch");
    ellipsoid_equal(&povm_range(p1), &povm_range(p2), tol)
}

/// Uniform double in [0, 1) from the top 53 bits of the generator.
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples `shots` outcomes per probe state by inverse-CDF multinomial
/// draws from a ChaCha8 stream seeded with `seed`. Deterministic for a
/// fixed seed on every platform.
pub fn simulate_counts(
    povm: &QubitPovm,
    states: &StateSet,
    shots: u64,
    seed: u64,
) -> (Vec<Vec<u64>>, ProbTable) {
    assert!(shots >= 1, "shots must be at least 1");
    let n = povm.outcomes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(states.len());
    let mut freq_rows = Vec::with_capacity(states.len());
    for state in states.iter() {
        let p = born(povm, state);
        let mut cdf = vec![0.0; n];
        let mut acc = 0.0;
        for (c, py) in cdf.iter_mut().zip(&p) {
            acc += py;
            *c = acc;
        }
        cdf[n - 1] = f64::INFINITY; // absorb rounding in the last bin

        let mut row = vec![0u64; n];
        for _ in 0..shots {
            let u = uniform(&mut rng);
            let y = cdf.iter().position(|c| u < *c).unwrap_or(n - 1);
            row[y] += 1;
        }
        freq_rows.push(row.iter().map(|&c| c as f64 / shots as f64).collect());
        counts.push(row);
    }
    let freqs = ProbTable::from_rows(&freq_rows).expect("simulated rows are well-formed");
    (counts, freqs)
}

/// The four-outcome measurement mixing two orthogonal bases with equal
/// weight: a_y = 1/4 and Bloch parts ±ẑ/4, ±x̂/4.
pub fn two_basis_povm() -> QubitPovm {
    let q = 0.25;
    QubitPovm::new(vec![
        QubitEffect {
            a: q,
            b: [0.0, 0.0, q],
        },
        QubitEffect {
            a: q,
            b: [0.0, 0.0, -q],
        },
        QubitEffect {
            a: q,
            b: [q, 0.0, 0.0],
        },
        QubitEffect {
            a: q,
            b: [-q, 0.0, 0.0],
        },
    ])
    .expect("ideal two-basis measurement is valid")
}

/// Projective measurement of the basis along a unit Bloch axis.
pub fn projective_povm(axis: [f64; 3]) -> QubitPovm {
    let half = [axis[0] / 2.0, axis[1] / 2.0, axis[2] / 2.0];
    QubitPovm::new(vec![
        QubitEffect { a: 0.5, b: half },
        QubitEffect {
            a: 0.5,
            b: [-half[0], -half[1], -half[2]],
        },
    ])
    .expect("projective measurement along a unit axis is valid")
}
