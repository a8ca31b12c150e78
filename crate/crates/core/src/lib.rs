//! Inference and reconstruction of qubit measurements from bare outcome
//! statistics.
//!
//! Given only the outcome distributions an unknown measurement produced,
//! the most noncommittal assignment consistent with the data is the
//! measurement whose range — its image of the whole state space — has
//! minimum volume among those containing every observed distribution. For
//! state spaces that are balls (the qubit in its Bloch parametrization),
//! that minimum-volume range is the unique minimum-volume enclosing
//! ellipsoid of the data, and it pins the measurement down up to the
//! orthogonal symmetries of the ball.
//!
//! The crate provides the full pipeline:
//!
//! - [`mvee`]: affine-hull reduction, the minimum-volume enclosing
//!   ellipsoid solver, and the lifted-ellipsoid algebra of ranges;
//! - [`qubit`]: the Bloch-parametrized measurement model — Born map, range
//!   descriptors (Q, t), range inversion to a canonical measurement, gauge
//!   transformations, and seeded finite-shot simulation;
//! - [`completeness`]: checkers for informational and observational
//!   completeness of probe-state sets, plus canonical generators (regular
//!   simplex, polygons, Platonic solids);
//! - [`simplex2d`]: minimum-area enclosing triangles, demonstrating that
//!   simplicial ranges are generally not unique;
//! - [`linalg`]: the small dense linear algebra everything runs on;
//! - [`table`]: frequency tables of observed outcome distributions.

pub mod completeness;
pub mod linalg;
pub mod mvee;
pub mod qubit;
pub mod simplex2d;
pub mod table;

pub use completeness::{
    gen_platonic, gen_regular_polygon, gen_regular_simplex, is_informationally_complete,
    is_observationally_complete, is_oc_for_support, perturb_set, CompletenessVerdict,
    PlatonicSolid, SubspaceProjector, Witness,
};
pub use linalg::Matrix;
pub use mvee::{
    affine_reduce, ddi_spherical, ellipsoid_contains, ellipsoid_equal, ellipsoid_volume, mvee_full,
    AffineFrame, FullDimEllipsoid, MveeError, PointSet, RangeEllipsoid,
};
pub use qubit::{
    born, gauge_apply, gauge_equivalent, povm_range, range_invert, simulate_counts, BlochState,
    GaugeTransform, InversionError, PovmError, QubitEffect, QubitPovm, StateSet,
};
pub use simplex2d::{
    min_area_enclosing_triangle, nonuniqueness_witness, triangle_contains, Triangle, TriangleError,
    TriangleSolution,
};
pub use table::{ProbTable, TableError};
