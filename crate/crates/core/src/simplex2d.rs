//! Minimum-area enclosing triangles in the plane.
//!
//! For a simplicial state space the minimum-volume enclosing range is a
//! simplex, and unlike the ellipsoidal case it is generally not unique.
//! This module computes an optimal enclosing triangle and can exhibit a
//! pair of distinct co-optimal ones.
//!
//! The solver enumerates a closed candidate set built on the classical
//! characterization of local minima: every side of a locally minimal
//! enclosing triangle touches the convex hull, at least one side is flush
//! with a hull edge, and each non-flush side's midpoint is its contact
//! vertex. Candidates are (a) triangles bounded by three hull-edge support
//! lines and (b) triangles with two flush sides and the third side's
//! midpoint pinned to a hull vertex; one-flush local minima form
//! equal-area families whose endpoints are of type (a) or (b), so the
//! global optimum is always in the set. Inputs are tiny (desk-scale point
//! sets), so the O(hull³) enumeration is the whole algorithm.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TriangleError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("input points are collinear")]
    Collinear,
    #[error("non-finite coordinate in input")]
    NonFinite,
}

pub type Point2 = [f64; 2];

/// Non-degenerate triangle given by its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    pub vertices: [Point2; 3],
}

impl Triangle {
    pub fn area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs()
    }
}

/// An optimal enclosing triangle together with its area and the index of
/// the hull edge its flush side contains.
#[derive(Debug, Clone)]
pub struct TriangleSolution {
    pub triangle: Triangle,
    pub area: f64,
    pub flush_edge: usize,
}

/// Barycentric membership test: true iff all three coordinates of `p` are
/// at least `-tol`.
pub fn triangle_contains(t: &Triangle, p: Point2, tol: f64) -> bool {
    let [a, b, c] = t.vertices;
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    if det.abs() < 1e-300 {
        return false;
    }
    let l1 = ((b[0] - p[0]) * (c[1] - p[1]) - (c[0] - p[0]) * (b[1] - p[1])) / det;
    let l2 = ((c[0] - p[0]) * (a[1] - p[1]) - (a[0] - p[0]) * (c[1] - p[1])) / det;
    let l3 = 1.0 - l1 - l2;
    l1 >= -tol && l2 >= -tol && l3 >= -tol
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull in counterclockwise order (monotone chain). Collinear
/// points on the boundary are dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// A line a·x = c with unit normal a, hull on the side a·x ≤ c.
#[derive(Debug, Clone, Copy)]
struct SupportLine {
    normal: Point2,
    offset: f64,
}

impl SupportLine {
    fn through_edge(p: Point2, q: Point2) -> Self {
        let d = [q[0] - p[0], q[1] - p[1]];
        let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
        // outward normal of a CCW hull edge
        let normal = [d[1] / len, -d[0] / len];
        SupportLine {
            normal,
            offset: normal[0] * p[0] + normal[1] * p[1],
        }
    }

    fn intersect(&self, other: &SupportLine) -> Option<Point2> {
        let det = self.normal[0] * other.normal[1] - self.normal[1] * other.normal[0];
        if det.abs() < 1e-12 {
            return None;
        }
        Some([
            (self.offset * other.normal[1] - other.offset * self.normal[1]) / det,
            (self.normal[0] * other.offset - other.normal[0] * self.offset) / det,
        ])
    }

    /// Point on the line at parameter s along its direction, measured from
    /// the foot of the normal.
    fn at(&self, s: f64) -> Point2 {
        let dir = [-self.normal[1], self.normal[0]];
        [
            self.normal[0] * self.offset + s * dir[0],
            self.normal[1] * self.offset + s * dir[1],
        ]
    }
}

fn encloses(t: &Triangle, points: &[Point2], tol: f64) -> bool {
    points.iter().all(|&p| triangle_contains(t, p, tol))
}

const ENCLOSE_TOL: f64 = 1e-9;
const MIN_AREA: f64 = 1e-12;

/// All candidate triangles that can be locally minimal, tagged with the
/// index of a flush hull edge.
fn candidates(hull: &[Point2]) -> Vec<(Triangle, usize)> {
    let ne = hull.len();
    let lines: Vec<SupportLine> = (0..ne)
        .map(|i| SupportLine::through_edge(hull[i], hull[(i + 1) % ne]))
        .collect();

    let mut out = Vec::new();

    // (a) three flush sides
    for i in 0..ne {
        for j in (i + 1)..ne {
            for k in (j + 1)..ne {
                let (Some(v1), Some(v2), Some(v3)) = (
                    lines[i].intersect(&lines[j]),
                    lines[j].intersect(&lines[k]),
                    lines[k].intersect(&lines[i]),
                ) else {
                    continue;
                };
                out.push((
                    Triangle {
                        vertices: [v1, v2, v3],
                    },
                    i,
                ));
            }
        }
    }

    // (b) two flush sides i, j plus a side whose midpoint is hull vertex v:
    // endpoints A on line i and B on line j with (A + B)/2 = v
    for i in 0..ne {
        for j in 0..ne {
            if i == j {
                continue;
            }
            let Some(w) = lines[i].intersect(&lines[j]) else {
                continue;
            };
            for &v in hull.iter() {
                // A = lines[i].at(s), B = lines[j].at(t); A + B = 2v gives a
                // 2x2 linear system in (s, t)
                let di = [-lines[i].normal[1], lines[i].normal[0]];
                let dj = [-lines[j].normal[1], lines[j].normal[0]];
                let bi = lines[i].at(0.0);
                let bj = lines[j].at(0.0);
                let rhs = [2.0 * v[0] - bi[0] - bj[0], 2.0 * v[1] - bi[1] - bj[1]];
                let det = di[0] * dj[1] - di[1] * dj[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let s = (rhs[0] * dj[1] - rhs[1] * dj[0]) / det;
                let t = (di[0] * rhs[1] - di[1] * rhs[0]) / det;
                let a = lines[i].at(s);
                let b = lines[j].at(t);
                out.push((
                    Triangle {
                        vertices: [w, a, b],
                    },
                    i,
                ));
            }
        }
    }

    out
}

fn hull_of_input(points: &[Point2]) -> Result<Vec<Point2>, TriangleError> {
    if points
        .iter()
        .any(|p| !p[0].is_finite() || !p[1].is_finite())
    {
        return Err(TriangleError::NonFinite);
    }
    if points.len() < 3 {
        return Err(TriangleError::TooFewPoints(points.len()));
    }
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return Err(TriangleError::Collinear);
    }
    Ok(hull)
}

/// Minimum-area triangle enclosing the points (within barycentric
/// tolerance 1e-9).
pub fn min_area_enclosing_triangle(points: &[Point2]) -> Result<TriangleSolution, TriangleError> {
    let hull = hull_of_input(points)?;
    let mut best: Option<(Triangle, f64, usize)> = None;
    for (tri, edge) in candidates(&hull) {
        let area = tri.area();
        if area < MIN_AREA || !encloses(&tri, points, ENCLOSE_TOL) {
            continue;
        }
        if best.as_ref().is_none_or(|(_, a, _)| area < *a) {
            best = Some((tri, area, edge));
        }
    }
    let (triangle, area, flush_edge) = best.ok_or(TriangleError::Collinear)?;
    Ok(TriangleSolution {
        triangle,
        area,
        flush_edge,
    })
}

/// Hausdorff distance between the vertex sets of two triangles.
pub fn vertex_hausdorff(t1: &Triangle, t2: &Triangle) -> f64 {
    let dir = |a: &Triangle, b: &Triangle| {
        a.vertices
            .iter()
            .map(|p| {
                b.vertices
                    .iter()
                    .map(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    dir(t1, t2).max(dir(t2, t1))
}

/// Searches the locally optimal flush-edge triangles for two distinct
/// enclosing triangles whose areas are both within `tol` of the optimum
/// and whose vertex sets differ by more than `tol` in Hausdorff distance.
/// Returns `None` when the optimum is unique.
pub fn nonuniqueness_witness(
    points: &[Point2],
    tol: f64,
) -> Result<Option<(Triangle, Triangle)>, TriangleError> {
    let hull = hull_of_input(points)?;
    let mut enclosing: Vec<(Triangle, f64)> = candidates(&hull)
        .into_iter()
        .filter_map(|(tri, _)| {
            let area = tri.area();
            (area >= MIN_AREA && encloses(&tri, points, ENCLOSE_TOL)).then_some((tri, area))
        })
        .collect();
    if enclosing.is_empty() {
        return Err(TriangleError::Collinear);
    }
    enclosing.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let optimum = enclosing[0].1;
    let near: Vec<&(Triangle, f64)> = enclosing
        .iter()
        .take_while(|(_, a)| *a <= optimum + tol.max(optimum * tol))
        .collect();
    for other in near.iter().skip(1) {
        if vertex_hausdorff(&near[0].0, &other.0) > tol.max(1e-6) {
            return Ok(Some((near[0].0.clone(), other.0.clone())));
        }
    }
    Ok(None)
}

/// Vertices of the regular n-gon with circumradius 1, first vertex on the
/// x-axis.
pub fn regular_polygon_points(n: usize) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}
