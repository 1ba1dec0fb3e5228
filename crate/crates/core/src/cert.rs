//! Optimality certificates.
//!
//! A point `p` minimizes `Σ‖xᵢ − p‖` exactly when norming functionals
//! `φᵢ` of `xᵢ − p` can be chosen so that
//!
//! * `Σ φᵢ = o` if `p` is not a site (floating), or
//! * `‖Σ_{i≠j} φᵢ‖* ≤ 1` if `p = x_j` (absorbing).
//!
//! For a polygonal norm each set of norming functionals is a vertex or an
//! edge of the dual ball, so a choice is one parameter `sᵢ ∈ [0, 1]` per
//! site and both conditions are linear in the `sᵢ`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ThreeFaceClause};
use crate::geom::{convex_hull, max_gap_vs_pi, Covector, Point};
use crate::lp::{LinearProgram, Relation};
use crate::norm::{Face, PolyNorm, SmoothNorm, Vec2};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Floating,
    /// The point coincides with the site of this index.
    Absorbing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `(i, φᵢ)` for every site other than the absorbing one.
    pub site_functionals: Vec<(usize, Covector)>,
    pub mode: Mode,
    pub residual: Covector,
}

/// The mode `p` calls for: absorbing at the site equal to `p`, if any.
pub fn mode_at(sites: &[Point], p: &Point) -> Mode {
    sites
        .iter()
        .position(|s| s == p)
        .map_or(Mode::Floating, Mode::Absorbing)
}

fn check_mode(sites: &[Point], p: &Point, mode: Mode) -> Result<()> {
    if mode_at(sites, p) == mode {
        Ok(())
    } else {
        Err(Error::ModeMismatch)
    }
}

pub fn verify_certificate(norm: &PolyNorm, sites: &[Point], p: &Point, cert: &Certificate) -> Result<bool> {
    check_mode(sites, p, cert.mode)?;
    let skip = match cert.mode {
        Mode::Absorbing(j) => Some(j),
        Mode::Floating => None,
    };
    let mut seen = vec![false; sites.len()];
    let mut sum = Point::origin();
    for (i, phi) in &cert.site_functionals {
        if *i >= sites.len() || seen[*i] || Some(*i) == skip {
            return Ok(false);
        }
        seen[*i] = true;
        let v = &sites[*i] - p;
        if norm.dual_norm(phi) != Scalar::one() || phi.pair(&v) != norm.norm(&v) {
            return Ok(false);
        }
        sum = sum + phi.clone();
    }
    if (0..sites.len()).any(|i| !seen[i] && Some(i) != skip) {
        return Ok(false);
    }
    Ok(match cert.mode {
        Mode::Floating => sum.is_zero(),
        Mode::Absorbing(_) => norm.dual_norm(&sum) <= Scalar::one(),
    })
}

/// Searches for a certificate at `p`; `None` means `p` is not an FT point.
///
/// When many selections work, the one returned is the first vertex the
/// simplex reaches, which is otherwise arbitrary.
pub fn select_functionals(norm: &PolyNorm, sites: &[Point], p: &Point, mode: Mode) -> Result<Option<Certificate>> {
    check_mode(sites, p, mode)?;
    let skip = match mode {
        Mode::Absorbing(j) => Some(j),
        Mode::Floating => None,
    };
    let mut base = Vec::new();
    let mut free: Vec<(usize, Covector)> = Vec::new();
    for (i, s) in sites.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (u, w) = match norm.norming_face(&(s - p))? {
            Face::Vertex(u) => (u.clone(), u),
            Face::Edge(u, w) => (u, w),
        };
        if u != w {
            free.push((base.len(), &w - &u));
        }
        base.push((i, u));
    }
    let fixed = base.iter().fold(Point::origin(), |acc, (_, u)| acc + u.clone());

    let params = if free.is_empty() {
        let ok = match mode {
            Mode::Floating => fixed.is_zero(),
            Mode::Absorbing(_) => norm.dual_norm(&fixed) <= Scalar::one(),
        };
        if !ok {
            return Ok(None);
        }
        Vec::new()
    } else {
        let k = free.len();
        let mut lp = LinearProgram::new(k);
        for v in 0..k {
            lp.add_upper_bound(v, Scalar::one());
        }
        match mode {
            Mode::Floating => {
                let xs = free.iter().map(|(_, d)| d.x.clone()).collect();
                let ys = free.iter().map(|(_, d)| d.y.clone()).collect();
                lp.add_row(xs, Relation::Eq, -&fixed.x);
                lp.add_row(ys, Relation::Eq, -&fixed.y);
            }
            Mode::Absorbing(_) => {
                for v in norm.ball() {
                    let row = free.iter().map(|(_, d)| d.pair(v)).collect();
                    lp.add_row(row, Relation::Le, Scalar::one() - fixed.pair(v));
                }
            }
        }
        match lp.solve().optimal() {
            Some(sol) => sol.x,
            None => return Ok(None),
        }
    };

    for ((slot, d), s) in free.iter().zip(&params) {
        base[*slot].1 = &base[*slot].1 + &d.scale(s);
    }
    let residual = base.iter().fold(Point::origin(), |acc, (_, phi)| acc + phi.clone());
    Ok(Some(Certificate { site_functionals: base, mode, residual }))
}

/// Certificate at `p` in whichever mode `p` calls for.
pub fn certify(norm: &PolyNorm, sites: &[Point], p: &Point) -> Result<Option<Certificate>> {
    select_functionals(norm, sites, p, mode_at(sites, p))
}

/// Floating-point counterpart of [`verify_certificate`] for smooth norms,
/// where every functional is determined by its site.
pub fn verify_smooth(norm: &SmoothNorm, sites: &[Vec2], p: Vec2, tol: f64) -> Result<bool> {
    let at = sites.iter().position(|s| (s[0] - p[0]).abs() <= tol && (s[1] - p[1]).abs() <= tol);
    let mut sum = [0.0, 0.0];
    for (i, s) in sites.iter().enumerate() {
        if Some(i) == at {
            continue;
        }
        let g = norm.norming([s[0] - p[0], s[1] - p[1]])?;
        sum[0] += g[0];
        sum[1] += g[1];
    }
    let r = norm.dual_norm(sum);
    Ok(match at {
        None => r <= tol,
        Some(_) => r <= 1.0 + tol,
    })
}

/// `(min, max)` of the gauge `w ↦ max_t t·w` over `w ∈ F1 + F2`.
///
/// The gauge is convex, so the maximum sits at a pair of endpoints; the
/// minimum is a small LP. Pass dual-ball vertices to measure in the norm,
/// ball vertices to measure in the dual norm.
pub(crate) fn sum_gauge_range(tests: &[Point], f1: &Face, f2: &Face) -> (Scalar, Scalar) {
    let gauge = |w: &Point| tests.iter().map(|t| t.pair(w)).max().expect("nonempty gauge");
    let (a1, b1) = f1.endpoints();
    let (a2, b2) = f2.endpoints();
    let max = [(a1, a2), (a1, b2), (b1, a2), (b1, b2)]
        .iter()
        .map(|(u, v)| gauge(&(*u + *v)))
        .max()
        .expect("four combinations");

    // Variables: s, r ∈ [0, 1] then λ free; minimise λ with t·(a1 + a2 + s d1 + r d2) ≤ λ.
    let d1 = b1 - a1;
    let d2 = b2 - a2;
    let base = a1 + a2;
    let mut lp = LinearProgram::new(3);
    lp.set_free(2)
        .add_upper_bound(0, Scalar::one())
        .add_upper_bound(1, Scalar::one())
        .set_objective(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
    for t in tests {
        lp.add_row(vec![t.pair(&d1), t.pair(&d2), -Scalar::one()], Relation::Le, -t.pair(&base));
    }
    let min = lp.solve().optimal().expect("gauge minimum is bounded").value;
    (min, max)
}

/// Picks `aᵢ ∈ Fᵢ` with `a₁ + a₂ + a₃ = o` for three faces of the unit
/// ball of `norm`.
///
/// Preconditions are checked in order: every `Fᵢ` must be a face of the
/// ball, the faces must not fit in a closed half-plane through `o`, and each
/// pair must admit `‖aᵢ + aⱼ‖ = 1`.
pub fn select_three(norm: &PolyNorm, faces: [&Face; 3]) -> Result<[Point; 3]> {
    let exposed: Vec<Face> = norm.exposed_faces().into_iter().map(|f| f.face).collect();
    for (i, f) in faces.iter().enumerate() {
        if !exposed.contains(f) {
            return Err(Error::PreconditionViolated(ThreeFaceClause::NotAFace(i)));
        }
    }
    let endpoints: Vec<Point> = faces
        .iter()
        .flat_map(|f| {
            let (a, b) = f.endpoints();
            [a.clone(), b.clone()]
        })
        .collect();
    if max_gap_vs_pi(&endpoints) != std::cmp::Ordering::Less {
        return Err(Error::PreconditionViolated(ThreeFaceClause::HalfPlane));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (lo, hi) = sum_gauge_range(norm.dual_vertices(), faces[i], faces[j]);
        if lo > Scalar::one() || hi < Scalar::one() {
            return Err(Error::PreconditionViolated(ThreeFaceClause::PairwiseUnitSum(i, j)));
        }
    }
    match select_three_lp(faces) {
        Some(a) => Ok(a),
        None => select_three_geometric(faces)
            .ok_or_else(|| Error::Inconsistent("no zero-sum selection despite preconditions".into())),
    }
}

fn select_three_lp(faces: [&Face; 3]) -> Option<[Point; 3]> {
    let ends: Vec<(&Point, &Point)> = faces.iter().map(|f| f.endpoints()).collect();
    let dirs: Vec<Point> = ends.iter().map(|(a, b)| *b - *a).collect();
    let fixed = ends.iter().fold(Point::origin(), |acc, (a, _)| acc + (*a).clone());
    let mut lp = LinearProgram::new(3);
    for v in 0..3 {
        lp.add_upper_bound(v, Scalar::one());
    }
    lp.add_row(dirs.iter().map(|d| d.x.clone()).collect(), Relation::Eq, -&fixed.x);
    lp.add_row(dirs.iter().map(|d| d.y.clone()).collect(), Relation::Eq, -&fixed.y);
    let s = lp.solve().optimal()?.x;
    let pick = |i: usize| ends[i].0 + &dirs[i].scale(&s[i]);
    Some([pick(0), pick(1), pick(2)])
}

/// Geometric route: a point of `(F1 + F2) ∩ (−F3)`, then split between `F1`
/// and `F2`.
pub(crate) fn select_three_geometric(faces: [&Face; 3]) -> Option<[Point; 3]> {
    let (a1, b1) = faces[0].endpoints();
    let (a2, b2) = faces[1].endpoints();
    let sum = convex_hull(&[a1 + a2, a1 + b2, b1 + a2, b1 + b2]);
    let c = sum.intersect(&faces[2].negate().to_region()).vertices().into_iter().next()?;
    let shifted: Vec<Point> = [a2, b2].iter().map(|q| &c - *q).collect();
    let x1 = faces[0]
        .to_region()
        .intersect(&convex_hull(&shifted))
        .vertices()
        .into_iter()
        .next()?;
    let x2 = &c - &x1;
    Some([x1, x2, -c])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn rectilinear_sites() -> Vec<Point> {
        vec![
            Point::from_ratios((1, 2), (1, 2)),
            Point::from_ratios((-1, 2), (1, 2)),
            Point::from_ratios((-1, 2), (-1, 2)),
            Point::from_ratios((1, 2), (-1, 2)),
        ]
    }

    #[test]
    fn rectilinear_certificate_verifies() {
        let l1 = PolyNorm::l1();
        let cert = Certificate {
            site_functionals: vec![(0, p(1, 1)), (1, p(-1, 1)), (2, p(-1, -1)), (3, p(1, -1))],
            mode: Mode::Floating,
            residual: Point::origin(),
        };
        assert!(verify_certificate(&l1, &rectilinear_sites(), &Point::origin(), &cert).unwrap());
        let found = select_functionals(&l1, &rectilinear_sites(), &Point::origin(), Mode::Floating)
            .unwrap()
            .unwrap();
        assert!(found.residual.is_zero());
    }

    #[test]
    fn wrong_sum_is_rejected() {
        let l1 = PolyNorm::l1();
        let sites = [p(2, 0), p(0, 2)];
        let cert = Certificate {
            site_functionals: vec![(0, p(1, 1)), (1, p(1, 1))],
            mode: Mode::Floating,
            residual: p(2, 2),
        };
        assert!(!verify_certificate(&l1, &sites, &Point::origin(), &cert).unwrap());
        let absorbing = Certificate { mode: Mode::Absorbing(0), ..cert };
        assert!(matches!(
            verify_certificate(&l1, &sites, &Point::origin(), &absorbing),
            Err(Error::ModeMismatch)
        ));
    }

    #[test]
    fn coordinate_median_has_certificate() {
        let l1 = PolyNorm::l1();
        let sites = [p(0, 0), p(2, 0), p(1, 3)];
        let cert = certify(&l1, &sites, &p(1, 0)).unwrap().unwrap();
        assert_eq!(cert.mode, Mode::Floating);
        assert!(verify_certificate(&l1, &sites, &p(1, 0), &cert).unwrap());
        assert!(certify(&l1, &sites, &p(1, 1)).unwrap().is_none());
        // An absorbing site: (0,0) is not optimal, but the middle of three collinear sites is.
        assert!(certify(&l1, &sites, &p(0, 0)).unwrap().is_none());
        let line = [p(0, 0), p(1, 0), p(3, 0)];
        let cert = certify(&l1, &line, &p(1, 0)).unwrap().unwrap();
        assert_eq!(cert.mode, Mode::Absorbing(1));
        assert!(verify_certificate(&l1, &line, &p(1, 0), &cert).unwrap());
    }

    #[test]
    fn smooth_certificates() {
        let e = SmoothNorm::euclidean();
        let h = 3f64.sqrt() / 2.0;
        let sites = [[1.0, 0.0], [-0.5, h], [-0.5, -h]];
        assert!(verify_smooth(&e, &sites, [0.0, 0.0], 1e-12).unwrap());
        assert!(!verify_smooth(&e, &[[-1.0, 0.0], [1.0, 0.0]], [0.0, 1.0], 1e-9).unwrap());
    }

    #[test]
    fn sum_range_examples() {
        let l1 = PolyNorm::l1();
        let f1 = Face::Edge(p(1, -1), p(1, 1));
        let f2 = Face::Edge(p(1, 1), p(-1, 1));
        assert_eq!(sum_gauge_range(l1.ball(), &f1, &f2), (int(0), int(2)));
        let v = |x, y| Face::Vertex(p(x, y));
        assert_eq!(sum_gauge_range(l1.ball(), &v(1, 0), &v(-1, 0)), (int(0), int(0)));
        assert_eq!(sum_gauge_range(PolyNorm::linf().ball(), &v(1, 0), &v(1, 0)), (int(2), int(2)));
    }

    fn int(n: i64) -> Scalar {
        crate::scalar::int(n)
    }

    #[test]
    fn three_faces_of_the_square() {
        let sq = PolyNorm::linf();
        let f1 = Face::Edge(p(1, -1), p(1, 1));
        let f2 = Face::Edge(p(1, 1), p(-1, 1));
        let f3 = Face::Vertex(p(-1, -1));
        let a = select_three(&sq, [&f1, &f2, &f3]).unwrap();
        assert_eq!(a, [p(1, 0), p(0, 1), p(-1, -1)]);
        let g = select_three_geometric([&f1, &f2, &f3]).unwrap();
        assert!(f1.contains(&g[0]) && f2.contains(&g[1]) && f3.contains(&g[2]));
        assert!((&g[0] + &g[1] + g[2].clone()).is_zero());
    }

    #[test]
    fn three_vertices_of_the_hexagon() {
        let hex = PolyNorm::hexagon();
        let faces = [Face::Vertex(p(1, 0)), Face::Vertex(p(-1, 1)), Face::Vertex(p(0, -1))];
        let a = select_three(&hex, [&faces[0], &faces[1], &faces[2]]).unwrap();
        assert_eq!(a, [p(1, 0), p(-1, 1), p(0, -1)]);
    }

    #[test]
    fn three_face_preconditions() {
        let hex = PolyNorm::hexagon();
        let f = Face::Vertex(p(1, 0));
        assert!(matches!(
            select_three(&hex, [&f, &f, &f]),
            Err(Error::PreconditionViolated(ThreeFaceClause::HalfPlane))
        ));
        let not_face = Face::Vertex(Point::from_ratios((1, 2), (1, 2)));
        assert!(matches!(
            select_three(&hex, [&f, &not_face, &f]),
            Err(Error::PreconditionViolated(ThreeFaceClause::NotAFace(1)))
        ));
        // Opposite vertices of the square plus a third: x + (−x) = o has norm 0 ≠ 1.
        let sq = PolyNorm::linf();
        let (a, b, c) = (Face::Vertex(p(1, 1)), Face::Vertex(p(-1, -1)), Face::Vertex(p(-1, 1)));
        assert!(matches!(
            select_three(&sq, [&a, &b, &c]),
            Err(Error::PreconditionViolated(ThreeFaceClause::HalfPlane))
        ));
        let (a, b, c) = (Face::Vertex(p(1, 1)), Face::Vertex(p(-1, 1)), Face::Edge(p(-1, -1), p(1, -1)));
        assert!(matches!(
            select_three(&sq, [&a, &b, &c]),
            Err(Error::PreconditionViolated(ThreeFaceClause::PairwiseUnitSum(0, 1)))
        ));
    }
}
