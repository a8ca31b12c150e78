//! Static SVG rendering of an inference: the data points in reduced
//! (affine-hull) coordinates with the inferred ellipse, projected onto the
//! first two hull axes when the hull has more than two dimensions.

use ddi_core::linalg::{self, Matrix};
use ddi_core::{AffineFrame, PointSet, RangeEllipsoid};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn render(frame: &AffineFrame, reduced: &PointSet, e: &RangeEllipsoid) -> String {
    let d = frame.dim();
    let pts: Vec<[f64; 2]> = reduced
        .iter()
        .map(|p| match d {
            0 => [0.0, 0.0],
            1 => [p[0], 0.0],
            _ => [p[0], p[1]],
        })
        .collect();

    // shadow of the inferred ellipsoid on the first two hull axes:
    // c̃ = Vᵀ(t - p₀), Q̃ = Vᵀ Q V, then the leading 2×2 block
    let (center2, ellipse2) = if d >= 1 {
        let v = frame.basis();
        let c = v
            .transpose()
            .mul_vec(&linalg::sub_vec(e.center(), frame.base_point()));
        let q = v.transpose().mul(e.correlation()).mul(v);
        if d == 1 {
            ([c[0], 0.0], [[q.get(0, 0), 0.0], [0.0, 0.0]])
        } else {
            (
                [c[0], c[1]],
                [[q.get(0, 0), q.get(0, 1)], [q.get(1, 0), q.get(1, 1)]],
            )
        }
    } else {
        ([0.0, 0.0], [[0.0, 0.0], [0.0, 0.0]])
    };

    let qm = Matrix::from_rows(&[ellipse2[0].to_vec(), ellipse2[1].to_vec()]);
    let eig = linalg::sym_eig(&qm).expect("2x2 symmetric block");
    let semi_major = eig.eigenvalues[0].max(0.0).sqrt();
    let semi_minor = eig.eigenvalues[1].max(0.0).sqrt();
    let angle_deg = eig
        .eigenvectors
        .get(1, 0)
        .atan2(eig.eigenvectors.get(0, 0))
        .to_degrees();

    // world window covering points and ellipse
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |x: f64, y: f64| {
        lo[0] = lo[0].min(x);
        lo[1] = lo[1].min(y);
        hi[0] = hi[0].max(x);
        hi[1] = hi[1].max(y);
    };
    for p in &pts {
        grow(p[0], p[1]);
    }
    let reach = semi_major.max(1e-6);
    grow(center2[0] - reach, center2[1] - reach);
    grow(center2[0] + reach, center2[1] + reach);
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let sx = |x: f64| MARGIN + (x - lo[0]) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - lo[1]) * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
         viewBox=\"0 0 {SIZE} {SIZE}\">\n",
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if semi_major > 0.0 {
        svg.push_str(&format!(
            "  <ellipse cx=\"0\" cy=\"0\" rx=\"{:.4}\" ry=\"{:.4}\" fill=\"none\" \
             stroke=\"#1f77b4\" stroke-width=\"1.5\" \
             transform=\"translate({:.4} {:.4}) rotate({:.4})\"/>\n",
            semi_major * scale,
            semi_minor.max(1e-4 / scale) * scale,
            sx(center2[0]),
            sy(center2[1]),
            -angle_deg,
        ));
    }
    for p in &pts {
        svg.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"4\" fill=\"#d62728\"/>\n",
            sx(p[0]),
            sy(p[1])
        ));
    }
    svg.push_str(&format!(
        "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"2.5\" fill=\"#1f77b4\"/>\n",
        sx(center2[0]),
        sy(center2[1])
    ));
    svg.push_str("</svg>\n");
    svg
}
