//! Critical and absorbing angles.
//!
//! For arms with norming faces `F₁`, `F₂` (dual-ball faces), everything
//! reduces to the set `S = {‖φ₁ + φ₂‖* : φᵢ ∈ Fᵢ}`. The dual norm is
//! continuous and convex and `F₁ × F₂` is a connected polytope, so `S` is
//! the whole interval `[min, max]`; the maximum sits at an endpoint pair
//! and the minimum is an LP. Then
//!
//! * critical ⇔ `1 ∈ S` (some `x₃` completes a zero-sum selection),
//! * absorbing ⇔ `min S ≤ 1`.

use std::cmp::Ordering;

use num_traits::One;

use crate::cert::{self, sum_gauge_range, Mode};
use crate::error::{Error, Result};
use crate::geom::{max_gap_vs_pi, Point};
use crate::norm::{DualFace, PolyNorm, SmoothNorm, Vec2};
use crate::scalar::Scalar;

/// The angle at `vertex` between the rays towards `arms[0]` and `arms[1]`.
#[derive(Clone, Debug)]
pub struct AngleQuery<'a> {
    pub norm: &'a PolyNorm,
    pub vertex: Point,
    pub arms: [Point; 2],
}

/// `(min, max)` of `‖φ₁ + φ₂‖*` over `φ₁ ∈ F1`, `φ₂ ∈ F2`.
pub fn sum_norm_range(norm: &PolyNorm, f1: &DualFace, f2: &DualFace) -> (Scalar, Scalar) {
    sum_gauge_range(norm.ball(), f1, f2)
}

impl<'a> AngleQuery<'a> {
    pub fn new(norm: &'a PolyNorm, vertex: Point, arm1: Point, arm2: Point) -> Self {
        AngleQuery { norm, vertex, arms: [arm1, arm2] }
    }

    fn arm_vectors(&self) -> Result<[Point; 2]> {
        let v = [&self.arms[0] - &self.vertex, &self.arms[1] - &self.vertex];
        if v.iter().any(Point::is_zero) {
            return Err(Error::ZeroArm);
        }
        Ok(v)
    }

    fn faces(&self) -> Result<[DualFace; 2]> {
        let [u, v] = self.arm_vectors()?;
        Ok([self.norm.norming_face(&u)?, self.norm.norming_face(&v)?])
    }

    pub fn range(&self) -> Result<(Scalar, Scalar)> {
        let [f1, f2] = self.faces()?;
        Ok(sum_norm_range(self.norm, &f1, &f2))
    }

    pub fn is_straight(&self) -> Result<bool> {
        let [u, v] = self.arm_vectors()?;
        Ok(max_gap_vs_pi(&[u, v]) == Ordering::Equal)
    }

    pub fn is_critical(&self) -> Result<bool> {
        let [f1, f2] = self.faces()?;
        if self.is_straight()? && !(f1.is_edge() && f2 == f1.negate()) {
            return Ok(false);
        }
        let (lo, hi) = sum_norm_range(self.norm, &f1, &f2);
        Ok(lo <= Scalar::one() && Scalar::one() <= hi)
    }

    pub fn is_absorbing(&self) -> Result<bool> {
        Ok(self.range()?.0 <= Scalar::one())
    }
}

/// True if some line through the origin has every direction strictly on one side.
pub fn is_pointed(dirs: &[Point]) -> bool {
    max_gap_vs_pi(dirs) == Ordering::Greater
}

/// Whether `x₀` is a floating FT point of `{a₁, a₂, a₃}`: the star is not
/// pointed and all three angles at `x₀` are critical.
///
/// The answer is checked against a direct search for a floating
/// certificate; disagreement is reported as an inconsistency.
pub fn is_floating_deg3(norm: &PolyNorm, x0: &Point, arms: [&Point; 3]) -> Result<bool> {
    let dirs: Vec<Point> = arms.iter().map(|a| *a - x0).collect();
    if dirs.iter().any(Point::is_zero) {
        return Err(Error::ZeroArm);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if dirs[i].same_direction(&dirs[j]) {
            return Err(Error::DegenerateConfig(format!("arms {i} and {j} share a direction")));
        }
    }
    let mut floating = !is_pointed(&dirs);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !floating {
            break;
        }
        floating = AngleQuery::new(norm, x0.clone(), arms[i].clone(), arms[j].clone()).is_critical()?;
    }
    let sites: Vec<Point> = arms.iter().map(|a| (*a).clone()).collect();
    let direct = cert::select_functionals(norm, &sites, x0, Mode::Floating)?.is_some();
    if direct != floating {
        return Err(Error::Inconsistent(format!(
            "angle criterion says {floating}, certificate search says {direct}"
        )));
    }
    Ok(floating)
}

fn smooth_sum(norm: &SmoothNorm, x0: Vec2, x1: Vec2, x2: Vec2) -> Result<f64> {
    let u = [x1[0] - x0[0], x1[1] - x0[1]];
    let v = [x2[0] - x0[0], x2[1] - x0[1]];
    if norm.norm(u) == 0.0 || norm.norm(v) == 0.0 {
        return Err(Error::ZeroArm);
    }
    let (a, b) = (norm.norming(u)?, norm.norming(v)?);
    Ok(norm.dual_norm([a[0] + b[0], a[1] + b[1]]))
}

/// Smooth norms have one functional per arm: critical iff `|‖φ₁ + φ₂‖* − 1| ≤ tol`.
pub fn is_critical_smooth(norm: &SmoothNorm, x0: Vec2, x1: Vec2, x2: Vec2, tol: f64) -> Result<bool> {
    Ok((smooth_sum(norm, x0, x1, x2)? - 1.0).abs() <= tol)
}

pub fn is_absorbing_smooth(norm: &SmoothNorm, x0: Vec2, x1: Vec2, x2: Vec2, tol: f64) -> Result<bool> {
    Ok(smooth_sum(norm, x0, x1, x2)? <= 1.0 + tol)
}
