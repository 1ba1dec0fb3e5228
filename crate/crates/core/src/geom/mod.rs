//! Exact planar primitives.
//!
//! Points and covectors share one representation: a pair of [`Scalar`]s.
//! A covector `φ` acts on a point `v` through [`Point::pair`]
//! (`φ(v) = φₓvₓ + φᵧvᵧ`). No floating point is used in this module.

mod region;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};

pub use region::{convex_hull, intersect_halfplanes, polar_dual, ConvexRegion, HalfPlane, Recession};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[String; 2]", try_from = "[String; 2]")]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

/// An element of the dual plane.
pub type Covector = Point;

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(scalar::int(x), scalar::int(y))
    }

    pub fn from_ratios((xn, xd): (i64, i64), (yn, yd): (i64, i64)) -> Self {
        Point::new(scalar::ratio(xn, xd), scalar::ratio(yn, yd))
    }

    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Bilinear pairing `φ(v)` between a covector and a point.
    pub fn pair(&self, v: &Point) -> Scalar {
        &self.x * &v.x + &self.y * &v.y
    }

    /// `self × other` (z-component of the 3D cross product).
    pub fn cross(&self, other: &Point) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn div(&self, s: &Scalar) -> Point {
        Point::new(&self.x / s, &self.y / s)
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        self + &(other - self).scale(t)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        (self + other).div(&scalar::int(2))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [scalar::to_f64(&self.x), scalar::to_f64(&self.y)]
    }

    /// True if `self` and `other` are positive multiples of each other.
    pub fn same_direction(&self, other: &Point) -> bool {
        !self.is_zero()
            && !other.is_zero()
            && self.cross(other).is_zero()
            && self.pair(other).is_positive()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            scalar::format_scalar(&self.x),
            scalar::format_scalar(&self.y)
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Point> for [String; 2] {
    fn from(p: Point) -> Self {
        [scalar::format_scalar(&p.x), scalar::format_scalar(&p.y)]
    }
}

impl TryFrom<[String; 2]> for Point {
    type Error = crate::Error;

    fn try_from([x, y]: [String; 2]) -> Result<Self, Self::Error> {
        Ok(Point::new(scalar::parse_scalar(&x)?, scalar::parse_scalar(&y)?))
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &'a Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &'a Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<&Scalar> for &Point {
    type Output = Point;
    fn mul(self, rhs: &Scalar) -> Point {
        self.scale(rhs)
    }
}

/// Sign of the turn `a → b → c`: `1` left, `-1` right, `0` collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    scalar::sign(&(b - a).cross(&(c - a)))
}

/// Half of the plane a nonzero vector points into; `0` for angles in `[0, π)`.
fn half(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Orders nonzero vectors by polar angle in `[0, 2π)`, exactly.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Counter-clockwise angular gap from `a` to `b`, classified against `π`.
///
/// Equal directions give `Less` (a zero gap); callers that need the full
/// turn for a lone direction handle that case themselves.
pub fn gap_vs_pi(a: &Point, b: &Point) -> Ordering {
    let c = a.cross(b);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else if a.pair(b).is_positive() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Distinct directions of the nonzero inputs, sorted by polar angle.
pub fn sorted_directions<'a>(vs: impl IntoIterator<Item = &'a Point>) -> Vec<Point> {
    let mut dirs: Vec<Point> = vs.into_iter().filter(|v| !v.is_zero()).cloned().collect();
    dirs.sort_by(angle_cmp);
    dirs.dedup_by(|b, a| angle_cmp(a, b) == Ordering::Equal);
    dirs
}

/// Largest counter-clockwise gap between consecutive directions, against `π`.
///
/// `Greater` means every input lies in some open half-plane through the
/// origin, `Less` means the inputs positively span the plane.
pub fn max_gap_vs_pi(vs: &[Point]) -> Ordering {
    let dirs = sorted_directions(vs);
    match dirs.len() {
        0 | 1 => Ordering::Greater,
        n => (0..n)
            .map(|i| gap_vs_pi(&dirs[i], &dirs[(i + 1) % n]))
            .max()
            .unwrap_or(Ordering::Greater),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orient_signs() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(3, 3)), 0);
    }

    #[test]
    fn angular_order() {
        let mut v = vec![p(0, -1), p(-1, 0), p(1, 0), p(0, 1), p(1, 1)];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1)]);
    }

    #[test]
    fn gaps() {
        assert_eq!(max_gap_vs_pi(&[p(1, 0), p(0, 1)]), Ordering::Greater);
        assert_eq!(max_gap_vs_pi(&[p(1, 0), p(-1, 0)]), Ordering::Equal);
        assert_eq!(max_gap_vs_pi(&[p(1, 0), p(0, 1), p(-1, -1)]), Ordering::Less);
        assert_eq!(max_gap_vs_pi(&[p(2, 0), p(1, 0)]), Ordering::Greater);
    }

    #[test]
    fn serde_uses_rational_strings() {
        let q = Point::from_ratios((1, 2), (-3, 1));
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["1/2","-3"]"#);
        let back: Point = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }
}
