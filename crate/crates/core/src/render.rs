//! Static SVG figures: unit ball, labelled sites, shaded locus, outlined
//! d-segments and cones.
//!
//! Output depends only on the scene. Coordinates are printed with three
//! decimals after a fixed viewport mapping, and element ids are fixed
//! strings, so equal scenes give byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::engine::{cones, d_segment, ft_locus, ft_point_smooth};
use crate::error::{Error, Result};
use crate::geom::{ConvexRegion, Point};
use crate::norm::{PolyNorm, SmoothNorm, Vec2};
use crate::problem::{NormKind, Problem};

const WIDTH: f64 = 480.0;
const MARGIN: f64 = 36.0;
const BALL_SAMPLES: usize = 256;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub title: String,
    /// Ball boundary, counter-clockwise, centred at the origin.
    pub ball: Vec<Vec2>,
    pub sites: Vec<Vec2>,
    /// Shaded region: one vertex for a point, two for a segment.
    pub locus: Vec<Vec2>,
    /// Outlined regions (d-segments).
    pub outlines: Vec<Vec<Vec2>>,
    /// Apex and extreme directions of each cone.
    pub cones: Vec<(Vec2, Vec<Vec2>)>,
}

fn floats(ps: &[Point]) -> Vec<Vec2> {
    ps.iter().map(Point::to_f64).collect()
}

fn bounded(region: &ConvexRegion) -> Result<Vec<Vec2>> {
    if !region.is_bounded() {
        return Err(Error::DegenerateConfig("scene regions must be bounded".into()));
    }
    Ok(floats(&region.vertices()))
}

fn lp_ball(norm: &SmoothNorm) -> Vec<Vec2> {
    (0..BALL_SAMPLES)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / BALL_SAMPLES as f64;
            let v = [t.cos(), t.sin()];
            let r = norm.norm(v);
            [v[0] / r, v[1] / r]
        })
        .collect()
}

impl Scene {
    /// The ball and the sites, nothing else.
    pub fn bare(title: &str, norm: &NormKind, sites: &[Point]) -> Scene {
        let ball = match norm {
            NormKind::Polygon(n) => floats(n.ball()),
            NormKind::Lp(n) => lp_ball(n),
        };
        Scene { title: title.to_string(), ball, sites: floats(sites), ..Scene::default() }
    }

    pub fn with_locus(mut self, region: &ConvexRegion) -> Result<Scene> {
        self.locus = bounded(region)?;
        Ok(self)
    }

    pub fn with_outline(mut self, region: &ConvexRegion) -> Result<Scene> {
        self.outlines.push(bounded(region)?);
        Ok(self)
    }

    /// The full scene for a problem: its FT locus, the requested d-segments
    /// and, for polygon norms, optionally the certificate cones.
    pub fn from_problem(problem: &Problem) -> Result<Scene> {
        let title = problem.task.title.clone().unwrap_or_default();
        let mut scene = Scene::bare(&title, &problem.norm, &problem.points);
        match &problem.norm {
            NormKind::Polygon(norm) => scene.add_polygon_content(norm, problem)?,
            NormKind::Lp(norm) => {
                if !problem.points.is_empty() {
                    let (x, _) = ft_point_smooth(norm, &scene.sites, 1e-9)?;
                    scene.locus = vec![x];
                }
            }
        }
        Ok(scene)
    }

    fn add_polygon_content(&mut self, norm: &PolyNorm, problem: &Problem) -> Result<()> {
        let sites = &problem.points;
        for &[i, j] in &problem.task.d_segments {
            self.outlines.push(bounded(&d_segment(norm, &sites[i], &sites[j])?)?);
        }
        if sites.is_empty() {
            return Ok(());
        }
        let r = ft_locus(norm, sites)?;
        self.locus = bounded(&r.locus)?;
        if problem.task.cones && !r.singleton_in_a {
            for c in cones(norm, sites, &r.certificate) {
                self.cones.push((c.apex.to_f64(), floats(&c.directions())));
            }
        }
        Ok(())
    }

    /// Everything drawn, for the viewport.
    fn extent(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [-1.0f64, -1.0];
        let mut hi = [1.0f64, 1.0];
        let all = self.ball.iter().chain(&self.sites).chain(&self.locus).chain(self.outlines.iter().flatten());
        for p in all.chain(self.cones.iter().map(|(a, _)| a)) {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.extent();
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        let height = ((hi[1] - lo[1]) * scale + 2.0 * MARGIN).round();
        let map = |p: &Vec2| [MARGIN + (p[0] - lo[0]) * scale, height - MARGIN - (p[1] - lo[1]) * scale];
        let pts = |ps: &[Vec2]| ps.iter().map(|p| pair(map(p))).collect::<Vec<_>>().join(" ");

        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = num(WIDTH),
            h = num(height)
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(
            s,
            "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
            num(WIDTH),
            num(height)
        );

        s.push_str("<g id=\"locus\" fill=\"#c6d4ea\" stroke=\"#3b5b92\" stroke-width=\"1.5\">\n");
        match self.locus.len() {
            0 => {}
            1 => {
                let [x, y] = map(&self.locus[0]);
                let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"6\"/>", num(x), num(y));
            }
            2 => {
                let _ = writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke-width=\"5\"/>", pts(&self.locus));
            }
            _ => {
                let _ = writeln!(s, "<polygon points=\"{}\"/>", pts(&self.locus));
            }
        }
        s.push_str("</g>\n");

        let _ = writeln!(
            s,
            "<g id=\"ball\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\">\n<polygon points=\"{}\"/>\n</g>",
            pts(&self.ball)
        );

        s.push_str("<g id=\"segments\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1\" stroke-dasharray=\"5 3\">\n");
        for o in &self.outlines {
            match o.len() {
                0 => {}
                1 => {
                    let [x, y] = map(&o[0]);
                    let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"3\"/>", num(x), num(y));
                }
                2 => {
                    let _ = writeln!(s, "<polyline points=\"{}\"/>", pts(o));
                }
                _ => {
                    let _ = writeln!(s, "<polygon points=\"{}\"/>", pts(o));
                }
            }
        }
        s.push_str("</g>\n");

        // Rays are cut at the frame, so any length past the diagonal works.
        let reach = 2.0 * span + 2.0;
        s.push_str("<g id=\"cones\" clip-path=\"url(#frame)\" fill=\"none\" stroke=\"#5d6d7e\" stroke-width=\"0.75\">\n");
        for (apex, dirs) in &self.cones {
            let ends: Vec<Vec2> = dirs
                .iter()
                .map(|d| {
                    let len = d[0].hypot(d[1]);
                    [apex[0] + reach * d[0] / len, apex[1] + reach * d[1] / len]
                })
                .collect();
            let path = match ends.as_slice() {
                [e] => vec![*apex, *e],
                [e, f] => vec![*e, *apex, *f],
                _ => continue,
            };
            let _ = writeln!(s, "<polyline points=\"{}\"/>", pts(&path));
        }
        s.push_str("</g>\n");

        s.push_str("<g id=\"sites\" font-family=\"serif\" font-size=\"13\">\n");
        for (i, p) in self.sites.iter().enumerate() {
            let [x, y] = map(p);
            let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#000000\"/>", num(x), num(y));
            let _ = writeln!(s, "<text x=\"{}\" y=\"{}\">x{}</text>", num(x + 5.0), num(y - 5.0), i + 1);
        }
        s.push_str("</g>\n</svg>\n");
        s
    }

    pub fn write_svg(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_svg())?;
        Ok(())
    }
}

/// Three decimals, with `-0.000` printed as `0.000`.
fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    format!("{:.3}", if r == 0.0 { 0.0 } else { r })
}

fn pair([x, y]: Vec2) -> String {
    format!("{},{}", num(x), num(y))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
