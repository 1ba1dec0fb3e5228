use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConvexRegion, Point};
use crate::norm::{Face, PolyNorm};

use super::check_sites;

/// `[ab]_d`, all `z` with `‖a − z‖ + ‖z − b‖ = ‖a − b‖`.
///
/// A straight segment unless `un(b − a)` is inside a ball edge `[e₁, e₂]`;
/// then `b − a = λe₁ + μe₂` and the d-segment is the parallelogram with
/// vertices `a`, `a + λe₁`, `b`, `a + μe₂`.
pub fn d_segment(norm: &PolyNorm, a: &Point, b: &Point) -> Result<ConvexRegion> {
    if a == b {
        return Err(Error::CoincidentPoints);
    }
    let u = b - a;
    Ok(match norm.face_of_direction(&u)? {
        Face::Vertex(_) => convex_hull(&[a.clone(), b.clone()]),
        Face::Edge(e1, e2) => {
            let det = e1.cross(&e2);
            let lambda = u.cross(&e2) / &det;
            let mu = e1.cross(&u) / &det;
            convex_hull(&[a.clone(), a + &e1.scale(&lambda), b.clone(), a + &e2.scale(&mu)])
        }
    })
}

/// Intersection of the d-segments of `pairs`, or `None` if it is empty.
pub fn d_concurrent_locus(norm: &PolyNorm, pairs: &[(Point, Point)]) -> Result<Option<ConvexRegion>> {
    let all: Vec<Point> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    check_sites(&all, 2)?;
    let mut region: Option<ConvexRegion> = None;
    for (a, b) in pairs {
        let seg = d_segment(norm, a, b)?;
        let next = match region {
            None => seg,
            Some(r) => r.intersect(&seg),
        };
        if next.is_empty() {
            return Ok(None);
        }
        region = Some(next);
    }
    Ok(region)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCollinear {
    /// Site indices in metric-line order, starting at the endpoint of
    /// smaller index.
    pub order: Vec<usize>,
    pub locus: ConvexRegion,
}

/// Orders `sites` along a metric line if they lie on one.
///
/// The endpoints are the farthest pair; sorting by distance from one of
/// them gives the only possible order, which is then checked for
/// additivity on every triple.
pub fn d_collinear_analyze(norm: &PolyNorm, sites: &[Point]) -> Result<Option<DCollinear>> {
    check_sites(sites, 2)?;
    let n = sites.len();
    let dist = |i: usize, j: usize| norm.dist(&sites[i], &sites[j]);
    let mut ends = (0, 1);
    let mut far = dist(0, 1);
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(i, j);
            if d > far {
                far = d;
                ends = (i, j);
            }
        }
    }
    let start = ends.0;
    let from_start: Vec<_> = (0..n).map(|i| dist(start, i)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| from_start[i].cmp(&from_start[j]));
    if order.windows(2).any(|w| from_start[w[0]].cmp(&from_start[w[1]]) == Ordering::Equal) {
        return Ok(None);
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (order[i], order[j], order[k]);
                if dist(a, c) != dist(a, b) + dist(b, c) {
                    return Ok(None);
                }
            }
        }
    }
    let locus = if n.is_multiple_of(2) {
        d_segment(norm, &sites[order[n / 2 - 1]], &sites[order[n / 2]])?
    } else {
        ConvexRegion::Point(sites[order[n / 2]].clone())
    };
    Ok(Some(DCollinear { order, locus }))
}
