//! Independent floating-point oracles and the randomized suite runner.
//!
//! Nothing here reuses the exact solver: polygon norms are evaluated as
//! gauges of the primal ball, and minimization is plain search.

mod random;
mod suites;

use crate::geom::Point;
use crate::norm::{PolyNorm, SmoothNorm, Vec2};

pub use random::{Flavor, RandomInstance};
pub use suites::{run_suite, Status, TrialRecord, SUITES};

/// A norm evaluated in floating point for the oracle.
#[derive(Clone, Debug)]
pub enum FloatNorm {
    /// Gauge of the polygon with these counter-clockwise vertices.
    Gauge(Vec<Vec2>),
    Lp(SmoothNorm),
}

impl FloatNorm {
    pub fn from_poly(norm: &PolyNorm) -> Self {
        FloatNorm::Gauge(norm.ball().iter().map(Point::to_f64).collect())
    }

    /// For the gauge: `v = αa + βb` with `α, β ≥ 0` over the edge `[a, b]`
    /// whose cone contains `v`; the norm is `α + β`.
    pub fn norm(&self, v: Vec2) -> f64 {
        match self {
            FloatNorm::Lp(n) => n.norm(v),
            FloatNorm::Gauge(vs) => {
                if v == [0.0, 0.0] {
                    return 0.0;
                }
                let cross = |a: Vec2, b: Vec2| a[0] * b[1] - a[1] * b[0];
                let k = vs.len();
                let mut best = 0.0f64;
                for i in 0..k {
                    let (a, b) = (vs[i], vs[(i + 1) % k]);
                    let det = cross(a, b);
                    let alpha = cross(v, b) / det;
                    let beta = cross(a, v) / det;
                    if alpha >= -1e-12 && beta >= -1e-12 {
                        return alpha + beta;
                    }
                    best = best.max(alpha + beta);
                }
                best
            }
        }
    }

    pub fn objective(&self, sites: &[Vec2], x: Vec2) -> f64 {
        sites.iter().map(|s| self.norm([s[0] - x[0], s[1] - x[1]])).sum()
    }
}

/// Axis-aligned box `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub lo: Vec2,
    pub hi: Vec2,
}

impl BBox {
    /// The bounding box of the sites, grown by its larger side in every
    /// direction.
    pub fn around(sites: &[Vec2]) -> BBox {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for s in sites {
            for k in 0..2 {
                lo[k] = lo[k].min(s[k]);
                hi[k] = hi[k].max(s[k]);
            }
        }
        let pad = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
        BBox { lo: [lo[0] - pad, lo[1] - pad], hi: [hi[0] + pad, hi[1] + pad] }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimum of a convex function on `[a, b]`.
fn golden(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-11 * (1.0 + a.abs().max(b.abs())) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Grid search at step `resolution`, then a nested golden-section search
/// over the whole box (the objective is convex, so the inner minimum is a
/// convex function of the outer coordinate). Returns the better of the two.
pub fn brute_force_min(norm: &FloatNorm, sites: &[Vec2], bbox: BBox, resolution: f64) -> (Vec2, f64) {
    let f = |x: Vec2| norm.objective(sites, x);
    let steps = |k: usize| (((bbox.hi[k] - bbox.lo[k]) / resolution).ceil() as usize).clamp(1, 400);
    let (nx, ny) = (steps(0), steps(1));
    let mut best = (bbox.lo, f(bbox.lo));
    for i in 0..=nx {
        for j in 0..=ny {
            let x = [
                bbox.lo[0] + (bbox.hi[0] - bbox.lo[0]) * i as f64 / nx as f64,
                bbox.lo[1] + (bbox.hi[1] - bbox.lo[1]) * j as f64 / ny as f64,
            ];
            let v = f(x);
            if v < best.1 {
                best = (x, v);
            }
        }
    }
    let inner = |x: f64| golden(bbox.lo[1], bbox.hi[1], |y| f([x, y]));
    let (x, _) = golden(bbox.lo[0], bbox.hi[0], |x| inner(x).1);
    let (y, v) = inner(x);
    if v < best.1 {
        best = ([x, y], v);
    }
    best
}
