use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{gap_vs_pi, orient, sorted_directions, Covector, Point};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Closed half-plane `{v : normal(v) ≤ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub normal: Covector,
    pub offset: Scalar,
}

impl HalfPlane {
    pub fn new(normal: Covector, offset: Scalar) -> Self {
        HalfPlane { normal, offset }
    }

    /// `{v : normal(v) ≤ normal(anchor)}`.
    pub fn through(normal: Covector, anchor: &Point) -> Self {
        let offset = normal.pair(anchor);
        HalfPlane { normal, offset }
    }

    /// Signed slack `normal(v) - offset`; non-positive inside.
    pub fn excess(&self, v: &Point) -> Scalar {
        self.normal.pair(v) - &self.offset
    }

    pub fn contains(&self, v: &Point) -> bool {
        !self.excess(v).is_positive()
    }

    /// Rescales so the first nonzero normal component has absolute value 1.
    fn normalized(&self) -> HalfPlane {
        let lead = if !self.normal.x.is_zero() {
            self.normal.x.abs()
        } else {
            self.normal.y.abs()
        };
        if lead.is_zero() {
            return self.clone();
        }
        HalfPlane {
            normal: self.normal.div(&lead),
            offset: &self.offset / &lead,
        }
    }
}

/// Recession cone of an unbounded region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recession {
    Ray(Point),
    /// Pointed cone swept counter-clockwise from the first generator to the second.
    Angle(Point, Point),
    /// Closed half-plane to the left of the given boundary direction.
    HalfPlane(Point),
    Line(Point),
    Plane,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexRegion {
    Empty,
    Point(Point),
    /// Endpoints in lexicographic order.
    Segment(Point, Point),
    /// At least three vertices, counter-clockwise, no three collinear,
    /// starting at the lexicographically smallest vertex.
    Polygon(Vec<Point>),
    Unbounded {
        /// Vertices along the boundary chain, counter-clockwise.
        vertices: Vec<Point>,
        recession: Recession,
        halfplanes: Vec<HalfPlane>,
    },
}

impl ConvexRegion {
    pub fn kind(&self) -> &'static str {
        match self {
            ConvexRegion::Empty => "empty",
            ConvexRegion::Point(_) => "point",
            ConvexRegion::Segment(..) => "segment",
            ConvexRegion::Polygon(_) => "polygon",
            ConvexRegion::Unbounded { .. } => "unbounded",
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexRegion::Empty)
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, ConvexRegion::Unbounded { .. })
    }

    /// Vertices (endpoints for a segment), in canonical order.
    pub fn vertices(&self) -> Vec<Point> {
        match self {
            ConvexRegion::Empty => vec![],
            ConvexRegion::Point(p) => vec![p.clone()],
            ConvexRegion::Segment(a, b) => vec![a.clone(), b.clone()],
            ConvexRegion::Polygon(vs) => vs.clone(),
            ConvexRegion::Unbounded { vertices, .. } => vertices.clone(),
        }
    }

    /// Exact membership.
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            ConvexRegion::Empty => false,
            ConvexRegion::Point(q) => p == q,
            ConvexRegion::Segment(a, b) => on_segment(a, b, p),
            ConvexRegion::Polygon(vs) => {
                let n = vs.len();
                (0..n).all(|i| orient(&vs[i], &vs[(i + 1) % n], p) >= 0)
            }
            ConvexRegion::Unbounded { halfplanes, .. } => halfplanes.iter().all(|h| h.contains(p)),
        }
    }

    /// True if `p` is in the region but not on its relative boundary.
    pub fn contains_in_relative_interior(&self, p: &Point) -> bool {
        match self {
            ConvexRegion::Empty => false,
            ConvexRegion::Point(q) => p == q,
            ConvexRegion::Segment(a, b) => on_segment(a, b, p) && p != a && p != b,
            ConvexRegion::Polygon(vs) => {
                let n = vs.len();
                (0..n).all(|i| orient(&vs[i], &vs[(i + 1) % n], p) > 0)
            }
            ConvexRegion::Unbounded { halfplanes, .. } => {
                halfplanes.iter().all(|h| h.excess(p).is_negative())
            }
        }
    }

    /// Half-plane description; equalities appear as opposite pairs.
    pub fn to_halfplanes(&self) -> Vec<HalfPlane> {
        let axis = [Point::from_ints(1, 0), Point::from_ints(0, 1)];
        match self {
            ConvexRegion::Empty => vec![
                HalfPlane::new(axis[0].clone(), scalar::int(-1)),
                HalfPlane::new(-&axis[0], scalar::int(-1)),
            ],
            ConvexRegion::Point(p) => axis
                .iter()
                .flat_map(|a| [HalfPlane::through(a.clone(), p), HalfPlane::through(-a, p)])
                .collect(),
            ConvexRegion::Segment(a, b) => {
                let d = b - a;
                let n = d.perp();
                vec![
                    HalfPlane::through(n.clone(), a),
                    HalfPlane::through(-&n, a),
                    HalfPlane::through(d.clone(), b),
                    HalfPlane::through(-&d, a),
                ]
            }
            ConvexRegion::Polygon(vs) => {
                let n = vs.len();
                (0..n)
                    .map(|i| {
                        let e = &vs[(i + 1) % n] - &vs[i];
                        // Outward normal of a counter-clockwise edge.
                        HalfPlane::through(Point::new(e.y.clone(), -&e.x), &vs[i])
                    })
                    .collect()
            }
            ConvexRegion::Unbounded { halfplanes, .. } => halfplanes.clone(),
        }
    }

    pub fn intersect(&self, other: &ConvexRegion) -> ConvexRegion {
        let mut hs = self.to_halfplanes();
        hs.extend(other.to_halfplanes());
        intersect_halfplanes(&hs)
    }

    /// True if every point of `self` lies in `other` (bounded `self` only).
    pub fn is_subset_of(&self, other: &ConvexRegion) -> bool {
        debug_assert!(self.is_bounded());
        self.vertices().iter().all(|v| other.contains(v))
    }

    pub fn translate(&self, by: &Point) -> ConvexRegion {
        match self {
            ConvexRegion::Empty => ConvexRegion::Empty,
            _ if self.is_bounded() => {
                convex_hull(&self.vertices().iter().map(|v| v + by).collect::<Vec<_>>())
            }
            _ => {
                let hs: Vec<HalfPlane> = self
                    .to_halfplanes()
                    .into_iter()
                    .map(|h| {
                        let offset = &h.offset + &h.normal.pair(by);
                        HalfPlane::new(h.normal, offset)
                    })
                    .collect();
                intersect_halfplanes(&hs)
            }
        }
    }
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == 0
        && (&a.x).min(&b.x) <= &p.x
        && &p.x <= (&a.x).max(&b.x)
        && (&a.y).min(&b.y) <= &p.y
        && &p.y <= (&a.y).max(&b.y)
}

/// Smallest convex region containing every input point.
///
/// Andrew's monotone chain with exact turns; collinear and repeated points
/// are dropped, so the result is in canonical form.
pub fn convex_hull(points: &[Point]) -> ConvexRegion {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return ConvexRegion::Empty,
        1 => return ConvexRegion::Point(pts.pop().unwrap()),
        _ => {}
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p.clone());
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull.pop();
    if hull.len() <= 2 {
        // All collinear: the chain collapses to the two extreme points.
        let first = pts.first().unwrap().clone();
        let last = pts.last().unwrap().clone();
        return ConvexRegion::Segment(first, last);
    }
    ConvexRegion::Polygon(hull)
}

fn line_intersection(h: &HalfPlane, g: &HalfPlane) -> Option<Point> {
    let det = h.normal.cross(&g.normal);
    if det.is_zero() {
        return None;
    }
    let x = (&h.offset * &g.normal.y - &g.offset * &h.normal.y) / &det;
    let y = (&h.normal.x * &g.offset - &g.normal.x * &h.offset) / &det;
    Some(Point::new(x, y))
}

/// Clips a convex vertex cycle (possibly degenerate) against a half-plane.
fn clip(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let ep = h.excess(p);
        let eq = h.excess(q);
        if !ep.is_positive() {
            out.push(p.clone());
        }
        if (ep.is_positive() && eq.is_negative()) || (ep.is_negative() && eq.is_positive()) {
            let t = &ep / &(&ep - &eq);
            out.push(p.lerp(q, &t));
        }
    }
    out
}

/// Exact intersection of closed half-planes `{v : φ(v) ≤ c}`.
///
/// Works by clipping a box that strictly contains every pairwise
/// intersection of boundary lines, so bounded results are exact. The
/// recession cone is computed separately from the normals; a nontrivial
/// cone marks the result as unbounded.
pub fn intersect_halfplanes(halfplanes: &[HalfPlane]) -> ConvexRegion {
    let mut hs: Vec<HalfPlane> = Vec::with_capacity(halfplanes.len());
    for h in halfplanes {
        if h.normal.is_zero() {
            if h.offset.is_negative() {
                return ConvexRegion::Empty;
            }
            continue;
        }
        let n = h.normalized();
        if !hs.contains(&n) {
            hs.push(n);
        }
    }

    let mut bound = scalar::one();
    for (i, h) in hs.iter().enumerate() {
        for g in &hs[i + 1..] {
            if let Some(p) = line_intersection(h, g) {
                bound = bound.max(p.x.abs()).max(p.y.abs());
            }
        }
        // A lone line's closest point to the origin also has to fit.
        let nn = h.normal.pair(&h.normal);
        let foot = h.normal.scale(&(&h.offset / &nn));
        bound = bound.max(foot.x.abs()).max(foot.y.abs());
    }
    let r = (bound + scalar::one()) * scalar::int(2);
    let mr = -r.clone();
    let mut poly = vec![
        Point::new(mr.clone(), mr.clone()),
        Point::new(r.clone(), mr.clone()),
        Point::new(r.clone(), r.clone()),
        Point::new(mr.clone(), r.clone()),
    ];
    for h in &hs {
        poly = clip(&poly, h);
        if poly.is_empty() {
            return ConvexRegion::Empty;
        }
        poly = convex_hull(&poly).vertices();
    }
    let clipped = convex_hull(&poly);
    if clipped.is_empty() {
        return ConvexRegion::Empty;
    }

    let recession = recession_cone(&hs);
    match recession {
        None => clipped,
        Some(recession) => {
            let on_box = |v: &Point| v.x.abs() == r || v.y.abs() == r;
            let cycle = clipped.vertices();
            let n = cycle.len();
            // Rotate so the interior chain is contiguous.
            let start = (0..n)
                .find(|&i| on_box(&cycle[(i + n - 1) % n]) && !on_box(&cycle[i]))
                .unwrap_or(0);
            let vertices = (0..n)
                .map(|k| cycle[(start + k) % n].clone())
                .filter(|v| !on_box(v))
                .collect();
            ConvexRegion::Unbounded { vertices, recession, halfplanes: hs }
        }
    }
}

/// `{d : φ(d) ≤ 0 for every normal φ}`, or `None` when it is `{o}`.
fn recession_cone(hs: &[HalfPlane]) -> Option<Recession> {
    let normals = sorted_directions(hs.iter().map(|h| &h.normal));
    let n = normals.len();
    if n == 0 {
        return Some(Recession::Plane);
    }
    if n == 1 {
        return Some(Recession::HalfPlane(normals[0].perp()));
    }
    let gaps: Vec<Ordering> = (0..n).map(|i| gap_vs_pi(&normals[i], &normals[(i + 1) % n])).collect();
    if let Some(i) = gaps.iter().position(|g| *g == Ordering::Greater) {
        // The normals span the pointed cone from normals[i+1] round to normals[i].
        let first = &normals[(i + 1) % n];
        let last = &normals[i];
        return Some(Recession::Angle(last.perp(), -&first.perp()));
    }
    let straight = gaps.iter().filter(|g| **g == Ordering::Equal).count();
    match straight {
        0 => None,
        2 if n == 2 => Some(Recession::Line(normals[0].perp())),
        _ => {
            // Normals fill the half-plane swept from -b round to b; the
            // cone is the ray opposite its middle direction -perp(b).
            let i = gaps.iter().position(|g| *g == Ordering::Equal).unwrap();
            Some(Recession::Ray(normals[i].perp()))
        }
    }
}

/// Polar body `{y : ⟨x, y⟩ ≤ 1 for all x ∈ B}` of a centrally symmetric polygon.
pub fn polar_dual(ball: &ConvexRegion) -> Result<ConvexRegion> {
    let vs = match ball {
        ConvexRegion::Polygon(vs) => vs,
        other => return Err(Error::NotAPolygon(other.kind())),
    };
    let mut negated: Vec<Point> = vs.iter().map(|v| -v).collect();
    negated.sort();
    let mut sorted = vs.clone();
    sorted.sort();
    if negated != sorted {
        return Err(Error::NotSymmetric);
    }
    if !ball.contains_in_relative_interior(&Point::origin()) {
        return Err(Error::OriginNotInterior);
    }
    let n = vs.len();
    let duals: Vec<Point> = (0..n)
        .map(|i| {
            let a = &vs[i];
            let b = &vs[(i + 1) % n];
            let det = a.cross(b);
            Point::new(&b.y - &a.y, &a.x - &b.x).div(&det)
        })
        .collect();
    Ok(convex_hull(&duals))
}
