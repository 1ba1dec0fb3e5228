//! Structural classification of site sets.
//!
//! [`classify_instance`] computes the locus and then checks the known
//! structure theorems against it; a failed check is returned as
//! [`Error::TheoremViolated`], which in practice means a bug upstream.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cert::{self, Mode};
use crate::engine::{self, d_concurrent_locus};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, intersect_halfplanes, ConvexRegion, HalfPlane, Point};
use crate::norm::{Face, PolyNorm, ShapeClass};
use crate::scalar::{self, Scalar};

/// Largest set searched exhaustively for a pairing.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCluster {
    /// Index pairs `(i, j)` with `un(xᵢ − xⱼ)` in `face`.
    pub pairs: Vec<(usize, usize)>,
    pub face: Face,
    /// False when the set was too large for the exhaustive search.
    pub exhaustive: bool,
    /// The d-segments of the pairs have a common point.
    pub concurrent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDoubleCluster {
    /// Pairing of the remaining sites; empty when only the centre and the
    /// extra point are present.
    pub cluster: Option<DoubleCluster>,
    pub centre: usize,
    pub extra: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HullRelation {
    LocusInsideHull,
    LocusTouchesBoundary,
    LocusEscapesHull,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub locus: ConvexRegion,
    pub value: Scalar,
    pub double_cluster: Option<DoubleCluster>,
    pub pseudo_double_cluster: Option<PseudoDoubleCluster>,
    pub hull_relation: HullRelation,
    /// Indices of the sites that are FT points.
    pub a_cap_ft: Vec<usize>,
    pub shape: ShapeClass,
}

/// `v ∈ pos(F)`, `v ≠ o`.
fn in_face_cone(face: &Face, v: &Point) -> bool {
    if v.is_zero() {
        return false;
    }
    match face {
        Face::Vertex(a) => a.same_direction(v),
        Face::Edge(a, b) => scalar::sign(&a.cross(v)) >= 0 && scalar::sign(&v.cross(b)) >= 0,
    }
}

struct Matcher<'a> {
    norm: &'a PolyNorm,
    points: &'a [&'a Point],
    face: &'a Face,
    backtrack: bool,
    /// Only accept pairings whose d-segments share a point.
    concurrent: bool,
}

impl Matcher<'_> {
    fn extend(&self, matched: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, common: Option<&ConvexRegion>) -> bool {
        let Some(i) = matched.iter().position(|m| !m) else {
            return true;
        };
        matched[i] = true;
        for j in i + 1..self.points.len() {
            if matched[j] {
                continue;
            }
            let (p, q) = (self.points[i], self.points[j]);
            let pair = if in_face_cone(self.face, &(p - q)) {
                (i, j)
            } else if in_face_cone(self.face, &(q - p)) {
                (j, i)
            } else {
                continue;
            };
            let next = if self.concurrent {
                let Ok(seg) = engine::d_segment(self.norm, p, q) else { continue };
                let meet = match common {
                    Some(c) => c.intersect(&seg),
                    None => seg,
                };
                if meet.is_empty() {
                    continue;
                }
                Some(meet)
            } else {
                None
            };
            matched[j] = true;
            pairs.push(pair);
            if self.extend(matched, pairs, next.as_ref()) {
                return true;
            }
            pairs.pop();
            matched[j] = false;
            if !self.backtrack {
                break;
            }
        }
        matched[i] = false;
        false
    }
}

/// With `prefer_concurrent`, a pairing with d-concurrent d-segments is
/// searched for first; any valid pairing is the fallback.
fn double_cluster_of(norm: &PolyNorm, points: &[&Point], prefer_concurrent: bool) -> Option<DoubleCluster> {
    let exhaustive = points.len() <= EXHAUSTIVE_LIMIT;
    let faces = norm.exposed_faces();
    let passes: &[bool] = if prefer_concurrent { &[true, false] } else { &[false] };
    for &concurrent in passes {
        for f in &faces {
            let m = Matcher { norm, points, face: &f.face, backtrack: exhaustive, concurrent };
            let mut matched = vec![false; points.len()];
            let mut pairs = Vec::new();
            if m.extend(&mut matched, &mut pairs, None) {
                let concurrent = concurrent || {
                    let owned: Vec<(Point, Point)> =
                        pairs.iter().map(|&(i, j)| (points[i].clone(), points[j].clone())).collect();
                    matches!(d_concurrent_locus(norm, &owned), Ok(Some(_)))
                };
                return Some(DoubleCluster { pairs, face: f.face.clone(), exhaustive, concurrent });
            }
        }
    }
    None
}

/// Searches for a pairing of `sites` whose difference directions share a
/// ball face.
///
/// A pairing with d-concurrent d-segments is returned if one is found;
/// only then is the locus their intersection. Within each pass faces are
/// tried in the order of [`PolyNorm::exposed_faces`] (vertices, then
/// edges, counter-clockwise). Sets above [`EXHAUSTIVE_LIMIT`] are matched
/// greedily, which can miss pairings.
pub fn detect_double_cluster(norm: &PolyNorm, sites: &[Point]) -> Result<Option<DoubleCluster>> {
    engine::check_sites(sites, 0)?;
    if sites.len() % 2 == 1 {
        return Err(Error::OddCardinality(sites.len()));
    }
    if sites.is_empty() {
        return Ok(None);
    }
    let refs: Vec<&Point> = sites.iter().collect();
    Ok(double_cluster_of(norm, &refs, true))
}

/// Searches for a centre and an extra point whose removal leaves a double
/// cluster having the centre as an FT point.
pub fn detect_pseudo_double_cluster(
    norm: &PolyNorm,
    sites: &[Point],
    centre: Option<usize>,
) -> Result<Option<PseudoDoubleCluster>> {
    engine::check_sites(sites, 2)?;
    if sites.len() % 2 == 1 {
        return Err(Error::OddCardinality(sites.len()));
    }
    let centres: Vec<usize> = match centre {
        Some(c) => vec![c],
        None => (0..sites.len()).collect(),
    };
    for &c in &centres {
        for e in (0..sites.len()).filter(|&e| e != c) {
            let rest: Vec<usize> = (0..sites.len()).filter(|&i| i != c && i != e).collect();
            if rest.is_empty() {
                return Ok(Some(PseudoDoubleCluster { cluster: None, centre: c, extra: e }));
            }
            let points: Vec<&Point> = rest.iter().map(|&i| &sites[i]).collect();
            let Some(mut dc) = double_cluster_of(norm, &points, false) else { continue };
            let owned: Vec<Point> = points.iter().map(|p| (*p).clone()).collect();
            if cert::select_functionals(norm, &owned, &sites[c], Mode::Floating)?.is_none() {
                continue;
            }
            dc.pairs = dc.pairs.iter().map(|&(i, j)| (rest[i], rest[j])).collect();
            return Ok(Some(PseudoDoubleCluster { cluster: Some(dc), centre: c, extra: e }));
        }
    }
    Ok(None)
}

fn hull_relation(locus: &ConvexRegion, hull: &ConvexRegion) -> HullRelation {
    if !locus.is_subset_of(hull) {
        HullRelation::LocusEscapesHull
    } else if matches!(hull, ConvexRegion::Polygon(_))
        && locus.vertices().iter().all(|v| hull.contains_in_relative_interior(v))
    {
        HullRelation::LocusInsideHull
    } else {
        HullRelation::LocusTouchesBoundary
    }
}

/// Builds the report and checks it against the structure theorems.
pub fn classify_instance(norm: &PolyNorm, sites: &[Point]) -> Result<ClassificationReport> {
    engine::check_sites(sites, 3)?;
    let n = sites.len();
    let ft = engine::ft_locus(norm, sites)?;
    let locus = ft.locus;
    let hull = convex_hull(sites);
    let relation = hull_relation(&locus, &hull);
    let a_cap_ft: Vec<usize> = (0..n).filter(|&i| locus.contains(&sites[i])).collect();
    let shape = norm.shape_class();
    let even = n.is_multiple_of(2);
    let double_cluster = if even { detect_double_cluster(norm, sites)? } else { None };

    let mut violations = Vec::new();

    if locus.intersect(&hull).is_empty() {
        violations.push("locus misses the convex hull".to_string());
    }
    if !even && relation == HullRelation::LocusEscapesHull {
        violations.push("odd set with locus outside its hull".to_string());
    }
    if relation == HullRelation::LocusEscapesHull {
        match &double_cluster {
            Some(dc) => {
                let pairs: Vec<(Point, Point)> =
                    dc.pairs.iter().map(|&(i, j)| (sites[i].clone(), sites[j].clone())).collect();
                if d_concurrent_locus(norm, &pairs)?.as_ref() != Some(&locus) {
                    violations.push("locus differs from the d-segment intersection of the pairs".to_string());
                }
            }
            None if n <= EXHAUSTIVE_LIMIT => {
                violations.push("locus leaves the hull but the set is not a double cluster".to_string())
            }
            None => {}
        }
    }

    let hull_vertex_centre = if let ConvexRegion::Polygon(vs) = &hull {
        a_cap_ft.iter().copied().find(|&i| vs.contains(&sites[i]))
    } else {
        None
    };
    let pseudo_double_cluster = if even {
        let found = detect_pseudo_double_cluster(norm, sites, hull_vertex_centre)?;
        if let (Some(c), None) = (hull_vertex_centre, &found) {
            violations.push(format!("hull vertex {c} is an FT point but no pseudo double cluster is centred there"));
        }
        match (hull_vertex_centre, found) {
            (Some(_), f) => f,
            (None, _) => detect_pseudo_double_cluster(norm, sites, None)?,
        }
    } else {
        None
    };

    let checked_edges = matches!(locus, ConvexRegion::Point(_));
    if let ConvexRegion::Polygon(vs) = &hull {
        for k in 0..vs.len() {
            let (a, b) = (&vs[k], &vs[(k + 1) % vs.len()]);
            let edge = ConvexRegion::Segment(a.clone().min(b.clone()), a.clone().max(b.clone()));
            let touch = locus.intersect(&edge);
            // Checked only for a single FT point; larger loci can touch a
            // hull edge with fewer sites on it.
            let off_sites_interior = checked_edges && match &touch {
                ConvexRegion::Point(q) => q != a && q != b && !sites.contains(q),
                ConvexRegion::Segment(..) => true,
                _ => false,
            };
            if off_sites_interior {
                let on_edge = sites.iter().filter(|s| edge.contains(s)).count();
                if 2 * on_edge < n {
                    violations.push(format!("locus meets the interior of hull edge {k} with only {on_edge} of {n} sites on it"));
                }
            }
        }
    }

    let cap: Vec<Point> = a_cap_ft.iter().map(|&i| sites[i].clone()).collect();
    let cap_hull = convex_hull(&cap);
    let cap_vertices = cap_hull.vertices();
    let faces = norm.exposed_faces();
    for p in &cap {
        if !cap_vertices.contains(p) {
            violations.push(format!("site {p} in the locus is not a vertex of the hull of such sites"));
        }
        let dirs: Vec<Point> = cap
            .iter()
            .filter(|q| *q != p)
            .map(|q| norm.unit(&(q - p)))
            .collect::<Result<_>>()?;
        if !dirs.is_empty() && !faces.iter().any(|f| dirs.iter().all(|d| f.face.contains(d))) {
            violations.push(format!("directions from site {p} to the other optimal sites share no face"));
        }
    }

    match cap.len() {
        0..=2 => {}
        // Three optimal sites force the hexagon only when they are all of A.
        3 if n > 3 => {}
        3 | 4 => {
            let expected = if cap.len() == 4 { ShapeClass::Parallelogram } else { ShapeClass::AffineRegularHexagon };
            if shape != expected {
                violations.push(format!("{} optimal sites but ball shape {shape:?}", cap.len()));
            }
            if locus != cap_hull {
                violations.push("locus is not the hull of the optimal sites".to_string());
            }
        }
        k => violations.push(format!("{k} sites are FT points")),
    }

    if !violations.is_empty() {
        return Err(Error::TheoremViolated(violations.join("; ")));
    }
    Ok(ClassificationReport {
        locus,
        value: ft.value,
        double_cluster,
        pseudo_double_cluster,
        hull_relation: relation,
        a_cap_ft,
        shape,
    })
}

/// Closed convex angle swept counter-clockwise from `u` to `v` (at most a
/// half-turn) contains `w`.
fn angle_contains(u: &Point, v: &Point, w: &Point) -> bool {
    let c = u.cross(v);
    if c.is_zero() && u.same_direction(v) {
        return u.same_direction(w);
    }
    if c.is_zero() {
        // Straight angle: the closed half-plane to the left of u.
        return scalar::sign(&u.cross(w)) >= 0;
    }
    let (a, b) = if scalar::sign(&c) > 0 { (u, v) } else { (v, u) };
    scalar::sign(&a.cross(w)) >= 0 && scalar::sign(&w.cross(b)) >= 0
}

/// For every ordered pair `i ≠ j`, the closed angle `∢pᵢ p₀ pⱼ` contains
/// `2p₀ − p_k` for some `k`.
///
/// When it holds, `p₀` is confirmed to be an FT point of `{p₀} ∪ sites`
/// and a failure is reported as [`Error::TheoremViolated`].
pub fn reflection_condition(norm: &PolyNorm, p0: &Point, sites: &[Point]) -> Result<bool> {
    engine::check_sites(sites, 1)?;
    if sites.contains(p0) {
        return Err(Error::DegenerateConfig("p0 coincides with a site".into()));
    }
    let dirs: Vec<Point> = sites.iter().map(|s| s - p0).collect();
    let holds = (0..dirs.len()).all(|i| {
        (0..dirs.len())
            .filter(|&j| j != i)
            .all(|j| dirs.iter().any(|d| angle_contains(&dirs[i], &dirs[j], &-d)))
    });
    if holds {
        let mut all = vec![p0.clone()];
        all.extend(sites.iter().cloned());
        if cert::select_functionals(norm, &all, p0, Mode::Absorbing(0))?.is_none() {
            return Err(Error::TheoremViolated("reflection condition holds but p0 is not an FT point".into()));
        }
    }
    Ok(holds)
}

/// A site set with the origin as an FT point in the interior of an edge of
/// its convex hull, the origin itself not being a site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFixture {
    pub sites: Vec<Point>,
    /// The hull edge containing the origin.
    pub edge: (Point, Point),
}

/// Builds an [`EdgeFixture`] from a corner `x₀` of the ball.
///
/// Sites `±x₀, ±2x₀` carry functionals from the dual edge `F = [φ₀, φ₁]`
/// norming `x₀` and its negative, which can sum to any `s(φ₁ − φ₀)` with
/// `|s| ≤ 2`. A chord `[ψₐ, ψ_b]` of the dual ball parallel to `F` and
/// short enough gives two more sites `x₂`, `x₃` normed by `−ψₐ` and `ψ_b`,
/// both on the same side of the line through `x₀`.
pub fn edge_interior_fixture(norm: &PolyNorm) -> Option<EdgeFixture> {
    let x0 = norm.ball()[0].clone();
    let Face::Edge(phi0, phi1) = norm.norming_face(&x0).ok()? else { return None };
    let d = &phi1 - &phi0;
    let c_face = d.cross(&phi0);
    let dual_planes = ConvexRegion::Polygon(norm.dual_region().vertices()).to_halfplanes();
    let line_normal = Point::new(-&d.y, d.x.clone());
    for k in 1..16 {
        let c = &c_face * (scalar::one() - scalar::ratio(1, 1 << k));
        let mut planes = dual_planes.clone();
        planes.push(HalfPlane::new(line_normal.clone(), c.clone()));
        planes.push(HalfPlane::new(-&line_normal, -&c));
        let ConvexRegion::Segment(a, b) = intersect_halfplanes(&planes) else { continue };
        let s = (&b - &a).pair(&d) / d.pair(&d);
        let (psi_a, psi_b, s) = if s > Scalar::zero() { (a, b, s) } else { (b, a, -s) };
        if s > scalar::int(2) {
            continue;
        }
        let pick = |psi: &Point| match norm.exposed_by(psi) {
            Face::Vertex(v) => v,
            Face::Edge(u, w) => u.midpoint(&w),
        };
        let x2 = pick(&-&psi_a);
        let mut x3 = pick(&psi_b);
        if x3 == x2 {
            x3 = x3.scale(&scalar::int(2));
        }
        let two = scalar::int(2);
        let sites = vec![x0.clone(), x0.scale(&two), -&x0, -(x0.scale(&two)), x2, x3];
        return Some(EdgeFixture { edge: (-(x0.scale(&two)), x0.scale(&two)), sites });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn l1_double_cluster() {
        let l1 = PolyNorm::l1();
        let sites = [p(1, 0), p(0, 2), p(2, 1), p(-1, 3)];
        let dc = detect_double_cluster(&l1, &sites).unwrap().unwrap();
        let expected = Face::Edge(p(0, 1), p(-1, 0));
        assert!(dc.face == expected || dc.face == expected.negate());
        let mut unordered: Vec<(usize, usize)> = dc.pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        unordered.sort();
        assert_eq!(unordered, vec![(0, 1), (2, 3)]);
        assert!(matches!(detect_double_cluster(&l1, &sites[..3]), Err(Error::OddCardinality(3))));
    }

    #[test]
    fn collinear_vertex_cluster() {
        let l1 = PolyNorm::l1();
        let sites = [p(0, 0), p(1, 0), p(5, 0), p(7, 0)];
        let dc = detect_double_cluster(&l1, &sites).unwrap().unwrap();
        assert!(matches!(dc.face, Face::Vertex(_)));
    }

    #[test]
    fn octagon_generic_set_is_not_a_cluster() {
        let oct = PolyNorm::octagon();
        let sites = [p(0, 0), p(10, 0), p(0, 10), p(7, 3)];
        assert_eq!(detect_double_cluster(&oct, &sites).unwrap(), None);
    }

    #[test]
    fn rectilinear_report() {
        let sites: Vec<Point> = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| Point::from_ratios((x, 2), (y, 2)))
            .collect();
        let r = classify_instance(&PolyNorm::l1(), &sites).unwrap();
        assert_eq!(r.a_cap_ft, vec![0, 1, 2, 3]);
        assert_eq!(r.shape, ShapeClass::Parallelogram);
        assert_eq!(r.locus, convex_hull(&sites));
        assert_eq!(r.hull_relation, HullRelation::LocusTouchesBoundary);
    }

    #[test]
    fn hexagon_report() {
        let r = classify_instance(&PolyNorm::hexagon(), &[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert_eq!(r.a_cap_ft.len(), 3);
        assert_eq!(r.shape, ShapeClass::AffineRegularHexagon);
    }

    #[test]
    fn escaping_double_cluster() {
        let r = classify_instance(&PolyNorm::l1(), &[p(1, 0), p(0, 2), p(2, 1), p(-1, 3)]).unwrap();
        assert_eq!(r.hull_relation, HullRelation::LocusEscapesHull);
        assert!(r.double_cluster.is_some());
    }

    #[test]
    fn reflections() {
        let l1 = PolyNorm::l1();
        let o = p(0, 0);
        assert!(!reflection_condition(&l1, &o, &[p(1, 0), p(2, 0)]).unwrap());
        assert!(reflection_condition(&l1, &o, &[p(1, 0), p(-1, 0), p(0, 1)]).unwrap());
        // Rational approximations of the regular pentagon directions.
        let pentagon = [p(100, 0), p(31, 95), p(-81, 59), p(-81, -59), p(31, -95)];
        assert!(reflection_condition(&l1, &o, &pentagon).unwrap());
    }

    #[test]
    fn fixture_on_standard_balls() {
        for norm in [PolyNorm::l1(), PolyNorm::linf(), PolyNorm::hexagon(), PolyNorm::octagon()] {
            let fx = edge_interior_fixture(&norm).expect("fixture");
            let o = Point::origin();
            assert!(!fx.sites.contains(&o));
            let cert = cert::certify(&norm, &fx.sites, &o).unwrap();
            assert!(cert.is_some(), "origin optimal for {:?}", norm.ball());
            let hull = convex_hull(&fx.sites);
            assert!(hull.vertices().contains(&fx.edge.0) && hull.vertices().contains(&fx.edge.1));
            assert!(classify_instance(&norm, &fx.sites).is_ok());
        }
    }
}
