//! Problem files: a norm, a list of points and optional task parameters.
//!
//! ```json
//! {"norm": {"type": "polygon", "vertices": [["1","0"], ["0","1"], ["-1","0"], ["0","-1"]]},
//!  "points": [["1/2","1/2"], ["-1/2","1/2"]]}
//! ```
//!
//! Coordinates are always strings; a JSON number where a rational is
//! expected is a parse error.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::check_sites;
use crate::error::{Error, Result};
use crate::geom::{ConvexRegion, Point, Recession};
use crate::norm::{PolyNorm, SmoothNorm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum NormSpec {
    Polygon { vertices: Vec<Point> },
    Lp { p: f64 },
}

impl NormSpec {
    /// Built-in names: `l1`, `linf`, `hexagon`, `octagon`, `euclid`, and
    /// `lp:<p>` (or `l<p>` such as `l3`).
    pub fn named(name: &str) -> Option<NormSpec> {
        let poly = |n: PolyNorm| NormSpec::Polygon { vertices: n.ball().to_vec() };
        match name {
            "l1" | "rectilinear" => Some(poly(PolyNorm::l1())),
            "linf" | "max" => Some(poly(PolyNorm::linf())),
            "hexagon" | "hex" => Some(poly(PolyNorm::hexagon())),
            "octagon" => Some(poly(PolyNorm::octagon())),
            "euclid" | "euclidean" | "l2" => Some(NormSpec::Lp { p: 2.0 }),
            _ => {
                let p = name.strip_prefix("lp:").or_else(|| name.strip_prefix('l'))?;
                p.parse().ok().map(|p| NormSpec::Lp { p })
            }
        }
    }

    /// A built-in name or an inline JSON object.
    pub fn parse(text: &str) -> Result<NormSpec> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
        }
        NormSpec::named(t).ok_or_else(|| Error::Parse(format!("unknown norm {t:?}")))
    }

    pub fn build(&self) -> Result<NormKind> {
        match self {
            NormSpec::Polygon { vertices } => Ok(NormKind::Polygon(PolyNorm::new(vertices)?)),
            NormSpec::Lp { p } => Ok(NormKind::Lp(SmoothNorm::new(*p)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormKind {
    Polygon(PolyNorm),
    Lp(SmoothNorm),
}

/// Optional per-task parameters. Unused fields are ignored by tasks that
/// do not need them.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    /// Candidate point for `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Point>,
    /// Site index pairs whose d-segments are drawn.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_segments: Vec<[usize; 2]>,
    /// Draw the cones of the optimality certificate.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cones: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub norm: NormSpec,
    pub points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskParams>,
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub norm: NormKind,
    pub points: Vec<Point>,
    pub task: TaskParams,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn validate(&self) -> Result<Problem> {
        let norm = self.norm.build()?;
        check_sites(&self.points, 0)?;
        let task = self.task.clone().unwrap_or_default();
        if let Some(&[i, j]) = task.d_segments.iter().find(|[i, j]| *i.max(j) >= self.points.len()) {
            return Err(Error::Parse(format!("d-segment ({i}, {j}) refers to a missing point")));
        }
        Ok(Problem { norm, points: self.points.clone(), task })
    }
}

/// A region as `{"kind": ..., "vertices": [...]}` with exact string
/// coordinates; unbounded regions also list their recession cone.
pub fn region_json(region: &ConvexRegion) -> Value {
    let mut out = json!({ "kind": region.kind(), "vertices": region.vertices() });
    if let ConvexRegion::Unbounded { recession, .. } = region {
        out["recession"] = match recession {
            Recession::Ray(d) => json!({ "ray": d }),
            Recession::Angle(a, b) => json!({ "angle": [a, b] }),
            Recession::HalfPlane(d) => json!({ "half_plane": d }),
            Recession::Line(d) => json!({ "line": d }),
            Recession::Plane => json!("plane"),
        };
    }
    out
}
