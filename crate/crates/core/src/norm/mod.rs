//! Norms on the plane.
//!
//! [`PolyNorm`] is a norm whose unit ball is a centrally symmetric convex
//! polygon with rational vertices; everything about it is exact. The dual
//! ball is kept edge-aligned with the primal one: `dual[i]` is the unit
//! covector exposing the edge `ball[i] → ball[i + 1]`, so norming faces and
//! exposed faces can be read off by index.
//!
//! [`SmoothNorm`] covers the `L_p` family for `1 < p < ∞` in floating point.

mod smooth;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, polar_dual, ConvexRegion, Covector, Point};
use crate::scalar::{self, Scalar};

pub use smooth::{SmoothNorm, Vec2};

/// A point or a segment on the boundary of a polygon.
///
/// Used both for faces of the unit ball and for faces of its dual; a dual
/// face is the set of norming functionals of some direction.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub enum Face {
    Vertex(Point),
    /// Endpoints in counter-clockwise order along the boundary.
    Edge(Point, Point),
}

pub type DualFace = Face;

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Face::Vertex(a), Face::Vertex(b)) => a == b,
            (Face::Edge(a, b), Face::Edge(c, d)) => (a == c && b == d) || (a == d && b == c),
            _ => false,
        }
    }
}

impl Face {
    /// Both endpoints; a vertex is returned twice.
    pub fn endpoints(&self) -> (&Point, &Point) {
        match self {
            Face::Vertex(a) => (a, a),
            Face::Edge(a, b) => (a, b),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Face::Vertex(a) => a == p,
            Face::Edge(a, b) => ConvexRegion::Segment(a.clone().min(b.clone()), a.clone().max(b.clone())).contains(p),
        }
    }

    pub fn negate(&self) -> Face {
        match self {
            Face::Vertex(a) => Face::Vertex(-a),
            Face::Edge(a, b) => Face::Edge(-a, -b),
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self, Face::Edge(..))
    }

    pub fn to_region(&self) -> ConvexRegion {
        let (a, b) = self.endpoints();
        convex_hull(&[a.clone(), b.clone()])
    }
}

/// A proper exposed face of the unit ball together with the unit covector
/// exposing it (unique for edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExposedFace {
    pub face: Face,
    pub normal: Option<Covector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeClass {
    Parallelogram,
    AffineRegularHexagon,
    OtherPolygon,
}

/// A nonzero vector and its exact unit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub v: Point,
    pub unit: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyNorm {
    ball: Vec<Point>,
    dual: Vec<Covector>,
    dual_region: ConvexRegion,
}

impl PolyNorm {
    /// Builds a norm from the vertices of its unit ball, in any order.
    pub fn new(vertices: &[Point]) -> Result<Self> {
        let region = convex_hull(vertices);
        let ball = match &region {
            ConvexRegion::Polygon(vs) => vs.clone(),
            other => return Err(Error::NotAPolygon(other.kind())),
        };
        let dual_region = polar_dual(&region)?;
        let n = ball.len();
        let dual = (0..n)
            .map(|i| {
                let a = &ball[i];
                let b = &ball[(i + 1) % n];
                Point::new(&b.y - &a.y, &a.x - &b.x).div(&a.cross(b))
            })
            .collect();
        Ok(PolyNorm { ball, dual, dual_region })
    }

    /// The `L_1` (Manhattan) norm; unit ball `conv{±(1,0), ±(0,1)}`.
    pub fn l1() -> Self {
        Self::from_int_vertices(&[(1, 0), (0, 1), (-1, 0), (0, -1)])
    }

    /// The maximum norm; unit ball `[-1, 1]²`.
    pub fn linf() -> Self {
        Self::from_int_vertices(&[(1, 1), (-1, 1), (-1, -1), (1, -1)])
    }

    /// Affine regular hexagon `conv{±x, ±y, ±(x - y)}` with `x = (1,0)`, `y = (0,1)`.
    pub fn hexagon() -> Self {
        Self::from_int_vertices(&[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])
    }

    /// An octagon with vertices `(±2, ±1)`, `(±1, ±2)`.
    pub fn octagon() -> Self {
        Self::from_int_vertices(&[(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)])
    }

    pub fn from_int_vertices(vs: &[(i64, i64)]) -> Self {
        let pts: Vec<Point> = vs.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        Self::new(&pts).expect("valid built-in ball")
    }

    /// Ball vertices, counter-clockwise from the lexicographically smallest.
    pub fn ball(&self) -> &[Point] {
        &self.ball
    }

    pub fn ball_region(&self) -> ConvexRegion {
        ConvexRegion::Polygon(self.ball.clone())
    }

    /// Dual-ball vertices, `dual_vertices()[i]` exposing edge `i` of the ball.
    pub fn dual_vertices(&self) -> &[Covector] {
        &self.dual
    }

    pub fn dual_region(&self) -> &ConvexRegion {
        &self.dual_region
    }

    pub fn num_vertices(&self) -> usize {
        self.ball.len()
    }

    /// Support-function form: `‖v‖ = max φ(v)` over dual vertices.
    pub fn norm(&self, v: &Point) -> Scalar {
        self.dual.iter().map(|phi| phi.pair(v)).max().expect("nonempty dual")
    }

    pub fn dist(&self, a: &Point, b: &Point) -> Scalar {
        self.norm(&(b - a))
    }

    /// `‖φ‖* = max φ(v)` over ball vertices.
    pub fn dual_norm(&self, phi: &Covector) -> Scalar {
        self.ball.iter().map(|v| phi.pair(v)).max().expect("nonempty ball")
    }

    pub fn unit(&self, v: &Point) -> Result<Point> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(v.div(&self.norm(v)))
    }

    pub fn direction(&self, v: &Point) -> Result<Direction> {
        Ok(Direction { v: v.clone(), unit: self.unit(v)? })
    }

    /// Sum of distances from `x` to every site.
    pub fn objective(&self, sites: &[Point], x: &Point) -> Scalar {
        sites.iter().fold(Scalar::zero(), |acc, s| acc + self.dist(x, s))
    }

    /// Indices of dual vertices attaining `‖v‖`: one, or two adjacent ones.
    fn norming_indices(&self, v: &Point) -> Vec<usize> {
        let values: Vec<Scalar> = self.dual.iter().map(|phi| phi.pair(v)).collect();
        let best = values.iter().max().expect("nonempty dual").clone();
        let idx: Vec<usize> = (0..values.len()).filter(|&i| values[i] == best).collect();
        match idx.as_slice() {
            [0, last] if *last == self.dual.len() - 1 => vec![*last, 0],
            _ => idx,
        }
    }

    /// All norming functionals of `v`: `{φ : ‖φ‖* = 1, φ(v) = ‖v‖}`.
    ///
    /// An edge of the dual ball when `un(v)` is a ball vertex, otherwise a
    /// single dual vertex.
    pub fn norming_face(&self, v: &Point) -> Result<DualFace> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let idx = self.norming_indices(v);
        Ok(match idx.as_slice() {
            [i] => Face::Vertex(self.dual[*i].clone()),
            [i, j] => Face::Edge(self.dual[*i].clone(), self.dual[*j].clone()),
            _ => unreachable!("a direction is normed by at most two adjacent dual vertices"),
        })
    }

    /// Face of the ball exposed by a unit covector: `{v ∈ B : φ(v) = 1}`.
    pub fn exposed_by(&self, phi: &Covector) -> Face {
        let values: Vec<Scalar> = self.ball.iter().map(|v| phi.pair(v)).collect();
        let best = values.iter().max().expect("nonempty ball").clone();
        let n = self.ball.len();
        let idx: Vec<usize> = (0..n).filter(|&i| values[i] == best).collect();
        match idx.as_slice() {
            [i] => Face::Vertex(self.ball[*i].clone()),
            [0, j] if *j == n - 1 => Face::Edge(self.ball[*j].clone(), self.ball[0].clone()),
            [i, j] => Face::Edge(self.ball[*i].clone(), self.ball[*j].clone()),
            _ => unreachable!("a covector exposes a vertex or an edge"),
        }
    }

    /// Smallest ball face containing `un(v)`.
    pub fn face_of_direction(&self, v: &Point) -> Result<Face> {
        let u = self.unit(v)?;
        if let Some(vertex) = self.ball.iter().find(|b| **b == u) {
            return Ok(Face::Vertex(vertex.clone()));
        }
        let i = self.norming_indices(v)[0];
        let n = self.ball.len();
        Ok(Face::Edge(self.ball[i].clone(), self.ball[(i + 1) % n].clone()))
    }

    /// True if `un(v)` lies in the relative interior of a ball edge.
    pub fn is_edge_direction(&self, v: &Point) -> Result<bool> {
        Ok(self.face_of_direction(v)?.is_edge())
    }

    /// Every proper exposed face of the ball: vertices first, then edges,
    /// each in counter-clockwise order from the first ball vertex.
    pub fn exposed_faces(&self) -> Vec<ExposedFace> {
        let n = self.ball.len();
        let vertices = self.ball.iter().map(|v| ExposedFace { face: Face::Vertex(v.clone()), normal: None });
        let edges = (0..n).map(|i| ExposedFace {
            face: Face::Edge(self.ball[i].clone(), self.ball[(i + 1) % n].clone()),
            normal: Some(self.dual[i].clone()),
        });
        vertices.chain(edges).collect()
    }

    pub fn shape_class(&self) -> ShapeClass {
        let vs = &self.ball;
        match vs.len() {
            4 => ShapeClass::Parallelogram,
            6 if (0..6).all(|i| vs[(i + 2) % 6] == &vs[(i + 1) % 6] - &vs[i]) => {
                ShapeClass::AffineRegularHexagon
            }
            _ => ShapeClass::OtherPolygon,
        }
    }

    /// Polygonal balls always have an edge.
    pub fn is_strictly_convex(&self) -> bool {
        false
    }

    /// Polygonal balls always have a corner.
    pub fn is_smooth(&self) -> bool {
        false
    }

    /// Ball vertices as exact strings, for serialization.
    pub fn vertex_strings(&self) -> Vec<[String; 2]> {
        self.ball
            .iter()
            .map(|v| [scalar::format_scalar(&v.x), scalar::format_scalar(&v.y)])
            .collect()
    }
}
