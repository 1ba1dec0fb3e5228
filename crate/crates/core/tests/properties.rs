use proptest::prelude::*;

use minkowski_ft::angle::AngleQuery;
use minkowski_ft::cert::{certify, verify_certificate};
use minkowski_ft::engine::ft_locus;
use minkowski_ft::geom::{convex_hull, intersect_halfplanes, orient, polar_dual, ConvexRegion, HalfPlane, Point};
use minkowski_ft::norm::PolyNorm;
use minkowski_ft::oracle::run_suite;
use minkowski_ft::problem::{NormSpec, ProblemFile};
use minkowski_ft::render::Scene;
use minkowski_ft::scalar::{int, ratio};

fn point(r: i64) -> impl Strategy<Value = Point> {
    (-r..=r, -r..=r).prop_map(|(x, y)| Point::from_ints(x, y))
}

fn rational_point() -> impl Strategy<Value = Point> {
    (-12i64..=12, -12i64..=12, 1i64..=4).prop_map(|(x, y, d)| Point::from_ratios((x, d), (y, d)))
}

fn norm() -> impl Strategy<Value = PolyNorm> {
    let named = prop_oneof![
        Just(PolyNorm::l1()),
        Just(PolyNorm::linf()),
        Just(PolyNorm::hexagon()),
        Just(PolyNorm::octagon()),
    ];
    let random = prop::collection::vec(point(4), 2..=4).prop_filter_map("degenerate ball", |half| {
        let mut vs = half.clone();
        vs.extend(half.iter().map(|p| -p));
        PolyNorm::new(&vs).ok()
    });
    prop_oneof![named, random]
}

fn distinct_sites(min: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set(point(6), min..=max).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn polar_is_an_involution(n in norm()) {
        let ball = n.ball_region();
        prop_assert_eq!(polar_dual(&polar_dual(&ball).unwrap()).unwrap(), ball);
    }

    #[test]
    fn hull_is_idempotent(ps in prop::collection::vec(point(5), 1..12)) {
        let hull = convex_hull(&ps);
        prop_assert_eq!(convex_hull(&hull.vertices()), hull.clone());
        for p in &ps {
            prop_assert!(hull.contains(p));
        }
    }

    #[test]
    fn orientation_is_antisymmetric(a in point(9), b in point(9), c in point(9)) {
        prop_assert_eq!(orient(&a, &b, &c), -orient(&b, &a, &c));
        prop_assert_eq!(orient(&a, &b, &c), orient(&b, &c, &a));
    }

    #[test]
    fn halfplane_intersection_matches_membership(
        hs in prop::collection::vec((point(3), -4i64..=4), 1..6),
        probes in prop::collection::vec(point(6), 40),
    ) {
        let hs: Vec<HalfPlane> = hs
            .into_iter()
            .filter(|(n, _)| !n.is_zero())
            .map(|(n, c)| HalfPlane::new(n, int(c)))
            .collect();
        let region = intersect_halfplanes(&hs);
        for z in &probes {
            prop_assert_eq!(region.contains(z), hs.iter().all(|h| h.contains(z)), "{:?}", z);
        }
    }

    #[test]
    fn norm_axioms(n in norm(), u in rational_point(), v in rational_point(), t in -5i64..=5) {
        prop_assert!(n.norm(&(&u + &v)) <= n.norm(&u) + n.norm(&v));
        prop_assert_eq!(n.norm(&u.scale(&int(t))), n.norm(&u) * int(t.abs()));
        prop_assert_eq!(n.norm(&-&u), n.norm(&u));
        prop_assert_eq!(n.norm(&u) == int(0), u.is_zero());
    }

    #[test]
    fn norming_functionals_are_dual_unit(n in norm(), v in rational_point()) {
        prop_assume!(!v.is_zero());
        let face = n.norming_face(&v).unwrap();
        let (a, b) = face.endpoints();
        for phi in [a, b, &a.midpoint(b)] {
            prop_assert_eq!(n.dual_norm(phi), int(1));
            prop_assert_eq!(phi.pair(&v), n.norm(&v));
        }
        prop_assert_eq!(n.norming_face(&-&v).unwrap(), face.negate());
    }

    #[test]
    fn certificates_match_optimality(n in norm(), sites in distinct_sites(2, 6), q in rational_point()) {
        let r = ft_locus(&n, &sites).unwrap();
        let cert = certify(&n, &sites, &r.witness).unwrap().expect("witness is optimal");
        prop_assert!(verify_certificate(&n, &sites, &r.witness, &cert).unwrap());
        prop_assert!(n.objective(&sites, &r.witness) <= n.objective(&sites, &q));
        let optimal = n.objective(&sites, &q) == r.value;
        prop_assert_eq!(certify(&n, &sites, &q).unwrap().is_some(), optimal);
    }

    #[test]
    fn angles_ignore_scale_and_translation(
        n in norm(),
        x0 in point(4),
        a in point(4),
        b in point(4),
        s in 1i64..=5,
        shift in point(7),
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let q = AngleQuery::new(&n, x0.clone(), &x0 + &a, &x0 + &b);
        let scaled = AngleQuery::new(&n, x0.clone(), &x0 + &a.scale(&ratio(s, 3)), &x0 + &b.scale(&int(s)));
        let moved = AngleQuery::new(&n, &x0 + &shift, &(&x0 + &a) + &shift, &(&x0 + &b) + &shift);
        let range = q.range().unwrap();
        prop_assert_eq!(scaled.range().unwrap(), range.clone());
        prop_assert_eq!(moved.range().unwrap(), range);
        prop_assert_eq!(scaled.is_critical().unwrap(), q.is_critical().unwrap());
        prop_assert_eq!(scaled.is_absorbing().unwrap(), q.is_absorbing().unwrap());
    }

    #[test]
    fn wider_angles_have_smaller_sums(n in norm(), a in point(4), b in point(4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let o = Point::origin();
        let q = AngleQuery::new(&n, o.clone(), a.clone(), b.clone());
        let straight = AngleQuery::new(&n, o.clone(), a.clone(), -&a);
        let closed = AngleQuery::new(&n, o, a.clone(), a.scale(&int(2)));
        let (lo, hi) = q.range().unwrap();
        prop_assert!(lo <= hi && hi <= int(2));
        prop_assert_eq!(straight.range().unwrap().0, int(0));
        prop_assert_eq!(closed.range().unwrap().1, int(2));
        prop_assert!(straight.is_absorbing().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // 100 cases of 100 probes each.
    #[test]
    fn locus_is_the_optimal_set(n in norm(), sites in distinct_sites(2, 7), probes in prop::collection::vec(rational_point(), 100)) {
        let r = ft_locus(&n, &sites).unwrap();
        for z in r.locus.vertices().iter().chain(&probes) {
            prop_assert_eq!(r.locus.contains(z), n.objective(&sites, z) == r.value, "{:?}", z);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn problem_files_round_trip(n in norm(), sites in distinct_sites(0, 6), title in "[a-z ]{0,12}") {
        let file = ProblemFile {
            norm: NormSpec::Polygon { vertices: n.ball().to_vec() },
            points: sites,
            task: (!title.is_empty()).then(|| minkowski_ft::problem::TaskParams { title: Some(title), ..Default::default() }),
        };
        let again = ProblemFile::parse(&file.to_json()).unwrap();
        prop_assert_eq!(&again, &file);
        prop_assert_eq!(again.to_json(), file.to_json());
    }

    #[test]
    fn rendering_is_deterministic(n in norm(), sites in distinct_sites(2, 5)) {
        let file = ProblemFile {
            norm: NormSpec::Polygon { vertices: n.ball().to_vec() },
            points: sites,
            task: None,
        };
        let a = Scene::from_problem(&file.validate().unwrap()).unwrap().to_svg();
        let b = Scene::from_problem(&ProblemFile::parse(&file.to_json()).unwrap().validate().unwrap()).unwrap().to_svg();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn suites_are_deterministic() {
    for name in ["optimality", "locus_equalities", "dcollinear"] {
        assert_eq!(run_suite(name, 6, 321).unwrap(), run_suite(name, 6, 321).unwrap());
    }
}

#[test]
fn locus_of_segment_is_region() {
    let n = PolyNorm::l1();
    let sites = [Point::from_ints(0, 0), Point::from_ints(2, 0)];
    assert_eq!(ft_locus(&n, &sites).unwrap().locus, ConvexRegion::Segment(sites[0].clone(), sites[1].clone()));
}
