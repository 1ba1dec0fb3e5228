use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::{random_norm, random_sites, rng_for};
use super::{brute_force_min, BBox, FloatNorm, RandomInstance};
use crate::angle::is_floating_deg3;
use crate::cert::{self, verify_certificate};
use crate::classify::{classify_instance, HullRelation};
use crate::engine::{d_collinear_analyze, d_segment, ft_locus, ft_point};
use crate::error::{Error, Result};
use crate::geom::{ConvexRegion, Point};
use crate::norm::{Face, PolyNorm};
use crate::scalar::{self, int, ratio};

pub const SUITES: [&str; 6] = [
    "optimality",
    "locus_equalities",
    "hull_relations",
    "angles_deg3",
    "classification",
    "dcollinear",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub suite: String,
    pub status: Status,
    pub message: String,
}

impl TrialRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain record")
    }
}

type Trial = fn(u64) -> Result<String>;

/// Runs `trials` independent trials in parallel; trial `i` uses seed
/// `seed + i` and the records come back in that order.
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<Vec<TrialRecord>> {
    let trial: Trial = match name {
        "optimality" => optimality,
        "locus_equalities" => locus_equalities,
        "hull_relations" => hull_relations,
        "angles_deg3" => angles_deg3,
        "classification" => classification,
        "dcollinear" => dcollinear,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok((0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let (status, message) = match trial(s) {
                Ok(m) => (Status::Pass, m),
                Err(e) => (Status::Fail, e.to_string()),
            };
            TrialRecord { seed: s, suite: name.to_string(), status, message }
        })
        .collect())
}

fn fail(msg: String) -> Error {
    Error::Inconsistent(msg)
}

fn floats(sites: &[Point]) -> Vec<[f64; 2]> {
    sites.iter().map(Point::to_f64).collect()
}

fn optimality(seed: u64) -> Result<String> {
    let inst = RandomInstance::generate(seed);
    let (p, value) = ft_point(&inst.norm, &inst.sites)?;
    let cert = cert::certify(&inst.norm, &inst.sites, &p)?.ok_or_else(|| fail("no certificate at LP optimum".into()))?;
    if !verify_certificate(&inst.norm, &inst.sites, &p, &cert)? {
        return Err(fail("certificate does not verify".into()));
    }
    let pts = floats(&inst.sites);
    let (_, oracle) = brute_force_min(&FloatNorm::from_poly(&inst.norm), &pts, BBox::around(&pts), 0.1);
    let exact = scalar::to_f64(&value);
    if (oracle - exact).abs() > 1e-6 {
        return Err(fail(format!("LP value {exact} vs oracle {oracle}")));
    }
    Ok(format!("value {}", scalar::format_scalar(&value)))
}

/// Points in and around the locus: vertices, edge midpoints, centroid,
/// and random lattice points of a slightly larger box.
fn sample_points(rng: &mut impl Rng, locus: &ConvexRegion, count: usize) -> Vec<Point> {
    let vs = locus.vertices();
    let mut out = vs.clone();
    for i in 0..vs.len() {
        out.push(vs[i].midpoint(&vs[(i + 1) % vs.len()]));
    }
    let mut lo = vs[0].clone();
    let mut hi = vs[0].clone();
    for v in &vs {
        lo = Point::new(lo.x.clone().min(v.x.clone()), lo.y.clone().min(v.y.clone()));
        hi = Point::new(hi.x.clone().max(v.x.clone()), hi.y.clone().max(v.y.clone()));
    }
    let pad = int(1);
    for _ in 0..count {
        let t = ratio(rng.gen_range(-8..=72), 64);
        let u = ratio(rng.gen_range(-8..=72), 64);
        let x = &lo.x - &pad + (&hi.x - &lo.x + int(2) * &pad) * t;
        let y = &lo.y - &pad + (&hi.y - &lo.y + int(2) * &pad) * u;
        out.push(Point::new(x, y));
    }
    out
}

fn locus_equalities(seed: u64) -> Result<String> {
    let inst = RandomInstance::generate(seed);
    let (norm, sites) = (&inst.norm, &inst.sites);
    let r = ft_locus(norm, sites)?;
    let (_, lp_value) = ft_point(norm, sites)?;
    if r.value != lp_value {
        return Err(fail("locus value differs from LP value".into()));
    }
    let mut rng = rng_for(seed ^ 0x5eed);
    for z in sample_points(&mut rng, &r.locus, 150) {
        let v = norm.objective(sites, &z);
        let inside = r.locus.contains(&z);
        if inside != (v == r.value) {
            return Err(fail(format!("sample {z}: inside = {inside}, objective optimal = {}", v == r.value)));
        }
    }
    if !r.singleton_in_a {
        let p = &r.witness;
        // Moving each site along its ray from p keeps p optimal with the same functionals.
        let moved: Vec<Point> = sites
            .iter()
            .enumerate()
            .map(|(i, s)| p + &(s - p).scale(&ratio(1 + (i as i64 % 3), 2)))
            .collect();
        if !verify_certificate(norm, &moved, p, &r.certificate)? {
            return Err(fail("certificate not preserved along rays".into()));
        }
        let mut with_p = sites.clone();
        with_p.push(p.clone());
        if ft_locus(norm, &with_p)?.locus != ConvexRegion::Point(p.clone()) {
            return Err(fail("adding an FT point does not collapse the locus".into()));
        }
    }
    let pair = [sites[0].clone(), sites[1].clone()];
    if ft_locus(norm, &pair)?.locus != d_segment(norm, &pair[0], &pair[1])? {
        return Err(fail("pair locus differs from d-segment".into()));
    }
    Ok(format!("locus {}", r.locus.kind()))
}

fn hull_relations(seed: u64) -> Result<String> {
    let inst = RandomInstance::generate(seed);
    let r = ft_locus(&inst.norm, &inst.sites)?;
    let hull = inst.hull();
    if r.locus.intersect(&hull).is_empty() {
        return Err(fail("locus misses the hull".into()));
    }
    let escapes = !r.locus.is_subset_of(&hull);
    if escapes && inst.sites.len() % 2 == 1 {
        return Err(fail("odd set escapes its hull".into()));
    }
    if escapes {
        let dc = crate::classify::detect_double_cluster(&inst.norm, &inst.sites)?
            .ok_or_else(|| fail("escaping set is not a double cluster".into()))?;
        let pairs: Vec<(Point, Point)> =
            dc.pairs.iter().map(|&(i, j)| (inst.sites[i].clone(), inst.sites[j].clone())).collect();
        if crate::engine::d_concurrent_locus(&inst.norm, &pairs)? != Some(r.locus.clone()) {
            return Err(fail("d-segment intersection differs from locus".into()));
        }
        return Ok("escapes; double cluster".into());
    }
    Ok("inside".into())
}

/// A random direction, biased towards ball vertices so that boundary cases occur.
fn random_arm(rng: &mut impl Rng, norm: &PolyNorm) -> Point {
    loop {
        let v = if rng.gen_bool(0.3) {
            let b = norm.ball().choose(rng).expect("nonempty").clone();
            b.scale(&ratio(rng.gen_range(1..=3), 1))
        } else if rng.gen_bool(0.3) {
            let dual = norm.dual_vertices().choose(rng).expect("nonempty");
            match norm.exposed_by(dual) {
                Face::Edge(a, b) => a.lerp(&b, &ratio(rng.gen_range(1..=3), 4)),
                Face::Vertex(a) => a,
            }
        } else {
            Point::from_ints(rng.gen_range(-5..=5), rng.gen_range(-5..=5))
        };
        if !v.is_zero() {
            return v;
        }
    }
}

fn angles_deg3(seed: u64) -> Result<String> {
    let mut rng = rng_for(seed);
    let norm = random_norm(&mut rng);
    let x0 = Point::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    loop {
        let arms: Vec<Point> = (0..3).map(|_| &x0 + &random_arm(&mut rng, &norm)).collect();
        let d: Vec<Point> = arms.iter().map(|a| a - &x0).collect();
        if d[0].same_direction(&d[1]) || d[0].same_direction(&d[2]) || d[1].same_direction(&d[2]) {
            continue;
        }
        let floating = is_floating_deg3(&norm, &x0, [&arms[0], &arms[1], &arms[2]])?;
        return Ok(format!("floating {floating}"));
    }
}

fn classification(seed: u64) -> Result<String> {
    let inst = RandomInstance::generate(seed);
    let report = classify_instance(&inst.norm, &inst.sites)?;
    if report.a_cap_ft.len() > 4 {
        return Err(fail(format!("{} sites in the locus", report.a_cap_ft.len())));
    }
    Ok(format!(
        "{:?}, {} optimal sites",
        report.hull_relation,
        report.a_cap_ft.len()
    ))
    .map(|m| if report.hull_relation == HullRelation::LocusEscapesHull { m + ", escapes" } else { m })
}

fn dcollinear(seed: u64) -> Result<String> {
    let mut rng = rng_for(seed);
    let norm = random_norm(&mut rng);
    let faces = norm.exposed_faces();
    let face = faces.choose(&mut rng).expect("nonempty").face.clone();
    let (a, b) = match &face {
        Face::Vertex(v) => (v.clone(), v.clone()),
        Face::Edge(a, b) => (a.clone(), b.clone()),
    };
    let n = rng.gen_range(2..=9);
    let mut points = vec![random_sites(&mut rng, 1, 5, true).remove(0)];
    while points.len() < n {
        let step = a.scale(&ratio(rng.gen_range(0..=4), 2)) + b.scale(&ratio(rng.gen_range(0..=4), 2));
        if step.is_zero() {
            continue;
        }
        let next = points.last().expect("nonempty") + &step;
        points.push(next);
    }
    let mut shuffled = points.clone();
    shuffled.shuffle(&mut rng);
    let r = d_collinear_analyze(&norm, &shuffled)?.ok_or_else(|| fail("constructed set not recognised".into()))?;
    let ordered: Vec<&Point> = r.order.iter().map(|&i| &shuffled[i]).collect();
    let forward = ordered.iter().zip(&points).all(|(p, q)| *p == q);
    let backward = ordered.iter().zip(points.iter().rev()).all(|(p, q)| *p == q);
    if !forward && !backward {
        return Err(fail("order differs from construction".into()));
    }
    let expected = ft_locus(&norm, &shuffled)?.locus;
    if r.locus != expected {
        return Err(fail(format!("locus {:?} vs FT locus {:?}", r.locus, expected)));
    }
    Ok(format!("{n} points"))
}
