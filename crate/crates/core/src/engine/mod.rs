//! Fermat–Torricelli points and loci.
//!
//! The exact path works in three steps:
//!
//! 1. An FT point comes from the LP dual of `min Σtᵢ, tᵢ ≥ φ(x − xᵢ)`:
//!    weights `λᵢₖ ≥ 0` on the dual vertices, one convex combination per
//!    site, summing to `o`. Its two translation rows carry the optimal `x`
//!    as their multipliers, and the tableau has `n + 2` rows instead of
//!    `n·m`.
//! 2. If that point is a site, short probes along ball-vertex directions
//!    look for an optimal point off the sites. Every edge of the locus is
//!    parallel to some ball vertex, so a nontrivial locus always has one.
//! 3. A floating certificate `(φᵢ)` at such a point gives the locus as the
//!    intersection of the cones `xᵢ − pos(Fᵢ)`, `Fᵢ` the ball face exposed
//!    by `φᵢ`.

mod dseg;
mod smooth;

use num_traits::{One, Signed, Zero};

use crate::cancel::CancelToken;
use crate::cert::{self, Certificate, Mode};
use crate::error::{Error, Result};
use crate::geom::{intersect_halfplanes, ConvexRegion, HalfPlane, Point};
use crate::lp::{LinearProgram, Relation};
use crate::norm::{Face, PolyNorm};
use crate::scalar::{self, Scalar};

pub use dseg::{d_collinear_analyze, d_concurrent_locus, d_segment, DCollinear};
pub use smooth::{ft_point_smooth, weiszfeld, WeiszfeldOptions};

/// The cone `C(x, φ) = x − {a : φ(a) = ‖a‖}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Point,
    /// The ball face exposed by `φ`; the cone is spanned by its negation.
    pub face: Face,
}

impl Cone {
    pub fn new(norm: &PolyNorm, apex: &Point, phi: &Point) -> Cone {
        Cone { apex: apex.clone(), face: norm.exposed_by(phi) }
    }

    /// Extreme directions, one for a ray and two (counter-clockwise) for an angle.
    pub fn directions(&self) -> Vec<Point> {
        match &self.face {
            Face::Vertex(v) => vec![-v],
            Face::Edge(a, b) => vec![-a, -b],
        }
    }

    pub fn contains(&self, z: &Point) -> bool {
        self.halfplanes().iter().all(|h| h.contains(z))
    }

    /// Half-planes whose intersection is the cone; a ray needs three.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        let x = &self.apex;
        match &self.face {
            // x − z ∈ pos{a, b} ⇔ a × (x − z) ≥ 0 and (x − z) × b ≥ 0.
            Face::Edge(a, b) => vec![
                HalfPlane::through(Point::new(-&a.y, a.x.clone()), x),
                HalfPlane::through(Point::new(b.y.clone(), -&b.x), x),
            ],
            Face::Vertex(v) => {
                let across = Point::new(-&v.y, v.x.clone());
                vec![
                    HalfPlane::through(across.clone(), x),
                    HalfPlane::through(-across, x),
                    HalfPlane::through(v.clone(), x),
                ]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtResult {
    pub locus: ConvexRegion,
    pub value: Scalar,
    pub certificate: Certificate,
    /// The optimal point the certificate was built at.
    pub witness: Point,
    /// True when the locus is a single site and was not built from cones.
    pub singleton_in_a: bool,
}

pub(crate) fn check_sites(sites: &[Point], min: usize) -> Result<()> {
    if sites.len() < min {
        return Err(Error::TooFewSites(min));
    }
    for (j, s) in sites.iter().enumerate() {
        if let Some(i) = sites[..j].iter().position(|t| t == s) {
            return Err(Error::DuplicateSites(j, i));
        }
    }
    Ok(())
}

/// An exact FT point and the optimal value.
pub fn ft_point(norm: &PolyNorm, sites: &[Point]) -> Result<(Point, Scalar)> {
    ft_point_with(norm, sites, &CancelToken::never())
}

pub fn ft_point_with(norm: &PolyNorm, sites: &[Point], cancel: &CancelToken) -> Result<(Point, Scalar)> {
    check_sites(sites, 1)?;
    if sites.len() == 1 {
        return Ok((sites[0].clone(), Scalar::zero()));
    }
    let dual = norm.dual_vertices();
    let (n, m) = (sites.len(), dual.len());
    let mut lp = LinearProgram::new(n * m);
    let mut objective = Vec::with_capacity(n * m);
    for s in sites {
        objective.extend(dual.iter().map(|phi| phi.pair(s)));
    }
    lp.set_objective(objective);
    for i in 0..n {
        let mut row = vec![Scalar::zero(); n * m];
        for slot in &mut row[i * m..(i + 1) * m] {
            *slot = Scalar::one();
        }
        lp.add_row(row, Relation::Eq, Scalar::one());
    }
    let xs: Vec<Scalar> = (0..n).flat_map(|_| dual.iter().map(|phi| phi.x.clone())).collect();
    let ys: Vec<Scalar> = (0..n).flat_map(|_| dual.iter().map(|phi| phi.y.clone())).collect();
    lp.add_row(xs, Relation::Eq, Scalar::zero());
    lp.add_row(ys, Relation::Eq, Scalar::zero());
    let sol = lp
        .solve_cancellable(cancel)?
        .optimal()
        .ok_or_else(|| Error::Inconsistent("FT dual program has no optimum".into()))?;
    let p = Point::new(sol.duals[n].clone(), sol.duals[n + 1].clone());
    let value = norm.objective(sites, &p);
    if value != -&sol.value {
        return Err(Error::Inconsistent(format!(
            "objective {} at recovered point, program value {}",
            scalar::format_scalar(&value),
            scalar::format_scalar(&-sol.value)
        )));
    }
    Ok((p, value))
}

/// An optimal point that is not a site, starting from an optimal site `x`.
fn probe_off_site(norm: &PolyNorm, sites: &[Point], x: &Point, value: &Scalar) -> Option<Point> {
    let dirs = norm.ball();
    for d in dirs {
        let mut first: Option<Scalar> = None;
        for s in sites {
            for v in dirs {
                let denom = v.cross(d);
                if denom.is_zero() {
                    continue;
                }
                let eps = v.cross(&(s - x)) / denom;
                if eps.is_positive() && first.as_ref().is_none_or(|f| eps < *f) {
                    first = Some(eps);
                }
            }
        }
        let step = first.unwrap_or_else(|| scalar::int(2)) / scalar::int(2);
        let q = x + &d.scale(&step);
        if norm.objective(sites, &q) == *value {
            return Some(q);
        }
    }
    None
}

/// The whole FT locus, exactly.
pub fn ft_locus(norm: &PolyNorm, sites: &[Point]) -> Result<FtResult> {
    ft_locus_with(norm, sites, &CancelToken::never())
}

pub fn ft_locus_with(norm: &PolyNorm, sites: &[Point], cancel: &CancelToken) -> Result<FtResult> {
    check_sites(sites, 2)?;
    let (p, value) = ft_point_with(norm, sites, cancel)?;
    let witness = if sites.contains(&p) {
        match probe_off_site(norm, sites, &p, &value) {
            Some(q) => q,
            None => {
                let certificate = cert::certify(norm, sites, &p)?
                    .ok_or_else(|| Error::Inconsistent("optimal site has no certificate".into()))?;
                return Ok(FtResult {
                    locus: ConvexRegion::Point(p.clone()),
                    value,
                    certificate,
                    witness: p,
                    singleton_in_a: true,
                });
            }
        }
    } else {
        p
    };
    let certificate = cert::select_functionals(norm, sites, &witness, Mode::Floating)?
        .ok_or_else(|| Error::Inconsistent("optimal point has no floating certificate".into()))?;
    let halfplanes: Vec<HalfPlane> = certificate
        .site_functionals
        .iter()
        .flat_map(|(i, phi)| Cone::new(norm, &sites[*i], phi).halfplanes())
        .collect();
    let locus = intersect_halfplanes(&halfplanes);
    if !locus.is_bounded() || locus.is_empty() {
        return Err(Error::Inconsistent(format!("cone intersection is {}", locus.kind())));
    }
    if let Some(v) = locus.vertices().iter().find(|v| norm.objective(sites, v) != value) {
        return Err(Error::Inconsistent(format!("locus vertex {v} is not optimal")));
    }
    Ok(FtResult { locus, value, certificate, witness, singleton_in_a: false })
}

/// The cones `C(xᵢ, φᵢ)` of a floating certificate.
pub fn cones(norm: &PolyNorm, sites: &[Point], certificate: &Certificate) -> Vec<Cone> {
    certificate
        .site_functionals
        .iter()
        .map(|(i, phi)| Cone::new(norm, &sites[*i], phi))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;
    use crate::scalar::int;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn l1_triangle_point() {
        let (q, v) = ft_point(&PolyNorm::l1(), &[p(0, 0), p(2, 0), p(1, 3)]).unwrap();
        assert_eq!(q, p(1, 0));
        assert_eq!(v, int(5));
    }

    #[test]
    fn single_site() {
        let (q, v) = ft_point(&PolyNorm::hexagon(), &[p(5, 7)]).unwrap();
        assert_eq!((q, v), (p(5, 7), int(0)));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            ft_point(&PolyNorm::l1(), &[p(0, 0), p(1, 0), p(0, 0)]),
            Err(Error::DuplicateSites(2, 0))
        ));
    }

    #[test]
    fn rectilinear_locus_is_the_hull() {
        let sites = vec![
            Point::from_ratios((1, 2), (1, 2)),
            Point::from_ratios((-1, 2), (1, 2)),
            Point::from_ratios((-1, 2), (-1, 2)),
            Point::from_ratios((1, 2), (-1, 2)),
        ];
        let r = ft_locus(&PolyNorm::l1(), &sites).unwrap();
        assert_eq!(r.locus, convex_hull(&sites));
        assert!(!r.singleton_in_a);
    }

    #[test]
    fn hexagon_triangle() {
        let sites = [p(0, 0), p(1, 0), p(0, 1)];
        let r = ft_locus(&PolyNorm::hexagon(), &sites).unwrap();
        assert_eq!(r.locus, convex_hull(&sites));
    }

    #[test]
    fn double_cluster_square() {
        let sites = [p(1, 0), p(0, 2), p(2, 1), p(-1, 3)];
        let r = ft_locus(&PolyNorm::l1(), &sites).unwrap();
        assert_eq!(r.locus, convex_hull(&[p(0, 1), p(1, 1), p(1, 2), p(0, 2)]));
    }

    #[test]
    fn singleton_site_locus() {
        let sites = [p(0, 0), p(1, 0), p(3, 0)];
        let r = ft_locus(&PolyNorm::l1(), &sites).unwrap();
        assert!(r.singleton_in_a);
        assert_eq!(r.locus, ConvexRegion::Point(p(1, 0)));
        assert_eq!(r.certificate.mode, Mode::Absorbing(1));
    }

    #[test]
    fn site_on_nontrivial_locus() {
        // The L1 locus of (0,0),(2,1) is the box; the LP may land on a site.
        let sites = [p(0, 0), p(2, 1)];
        let r = ft_locus(&PolyNorm::l1(), &sites).unwrap();
        assert_eq!(r.locus, convex_hull(&[p(0, 0), p(2, 0), p(2, 1), p(0, 1)]));
    }

    #[test]
    fn cone_membership() {
        let l1 = PolyNorm::l1();
        let c = Cone::new(&l1, &p(0, 0), &p(1, 1));
        assert_eq!(c.directions(), vec![p(-1, 0), p(0, -1)]);
        assert!(c.contains(&p(-1, -5)) && !c.contains(&p(1, -1)));
        let ray = Cone::new(&l1, &p(0, 0), &Point::from_ratios((1, 1), (1, 2)));
        assert!(ray.contains(&p(-3, 0)) && !ray.contains(&p(3, 0)) && !ray.contains(&p(-3, 1)));
    }
}
