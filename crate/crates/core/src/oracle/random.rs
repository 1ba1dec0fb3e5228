use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{convex_hull, ConvexRegion, Point};
use crate::norm::{Face, PolyNorm};
use crate::scalar::{int, ratio, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Sites anywhere in `[−10, 10]²`, some with half-integer coordinates.
    Generic,
    /// Sites on a small integer grid, so coincidences and collinearities are common.
    Lattice,
    /// An even set paired along one ball edge, so the locus often leaves the hull.
    DoubleCluster,
}

/// A norm and a site set, reproducible from `seed` alone.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub flavor: Flavor,
    pub norm: PolyNorm,
    pub sites: Vec<Point>,
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A centrally symmetric polygon with 4 to 12 vertices.
pub(crate) fn random_norm(rng: &mut impl Rng) -> PolyNorm {
    loop {
        let k = rng.gen_range(2..=6);
        let mut pts = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let v = Point::new(
                ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
                ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
            );
            if v.is_zero() {
                continue;
            }
            pts.push(-&v);
            pts.push(v);
        }
        if let Ok(norm) = PolyNorm::new(&pts) {
            return norm;
        }
    }
}

fn coordinate(rng: &mut impl Rng, range: i64, halves: bool) -> Scalar {
    if halves && rng.gen_bool(0.3) {
        ratio(rng.gen_range(-2 * range..=2 * range), 2)
    } else {
        int(rng.gen_range(-range..=range))
    }
}

pub(crate) fn random_sites(rng: &mut impl Rng, n: usize, range: i64, halves: bool) -> Vec<Point> {
    let mut sites: Vec<Point> = Vec::with_capacity(n);
    while sites.len() < n {
        let p = Point::new(coordinate(rng, range, halves), coordinate(rng, range, halves));
        if !sites.contains(&p) {
            sites.push(p);
        }
    }
    sites
}

/// `k` pairs `(x, x − d)` with every `d` in the cone of one ball edge.
fn cluster_sites(rng: &mut impl Rng, norm: &PolyNorm, k: usize) -> Vec<Point> {
    let edges: Vec<(Point, Point)> = norm
        .exposed_faces()
        .into_iter()
        .filter_map(|f| match f.face {
            Face::Edge(a, b) => Some((a, b)),
            Face::Vertex(_) => None,
        })
        .collect();
    let (a, b) = edges.choose(rng).expect("polygon has edges").clone();
    loop {
        let mut sites: Vec<Point> = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let x = Point::new(coordinate(rng, 6, true), coordinate(rng, 6, true));
            let s = ratio(rng.gen_range(0..=4), 2);
            let t = ratio(rng.gen_range(0..=4), 2);
            let d = a.scale(&s) + b.scale(&t);
            if d.is_zero() {
                continue;
            }
            let y = &x - &d;
            for p in [x, y] {
                if !sites.contains(&p) {
                    sites.push(p);
                }
            }
        }
        let inside = |p: &Point| p.x.abs() <= int(10) && p.y.abs() <= int(10);
        if sites.len() == 2 * k && sites.iter().all(inside) {
            sites.shuffle(rng);
            return sites;
        }
    }
}

impl RandomInstance {
    pub fn generate(seed: u64) -> Self {
        let mut rng = rng_for(seed);
        let norm = random_norm(&mut rng);
        let flavor = *[Flavor::Generic, Flavor::Lattice, Flavor::DoubleCluster]
            .choose(&mut rng)
            .expect("three flavors");
        let sites = match flavor {
            Flavor::Generic => {
                let n = rng.gen_range(3..=8);
                random_sites(&mut rng, n, 10, true)
            }
            Flavor::Lattice => {
                let n = rng.gen_range(3..=8);
                random_sites(&mut rng, n, 3, false)
            }
            Flavor::DoubleCluster => {
                let k = rng.gen_range(2..=4);
                cluster_sites(&mut rng, &norm, k)
            }
        };
        RandomInstance { seed, flavor, norm, sites }
    }

    /// Like [`RandomInstance::generate`], but with exactly `n` generic sites.
    pub fn with_sites(seed: u64, n: usize) -> Self {
        let mut rng = rng_for(seed);
        let norm = random_norm(&mut rng);
        let sites = random_sites(&mut rng, n, 10, true);
        RandomInstance { seed, flavor: Flavor::Generic, norm, sites }
    }

    pub fn hull(&self) -> ConvexRegion {
        convex_hull(&self.sites)
    }
}
