//! `mft`: exact Fermat-Torricelli computations from the command line.
//!
//! Results go to stdout as JSON with rationals as `"a/b"` strings. Exit
//! codes: 0 success, 1 a computed negative or degenerate outcome (with a
//! JSON `reason`), 2 bad input.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use minkowski_ft::angle::{is_absorbing_smooth, is_critical_smooth, AngleQuery};
use minkowski_ft::cert::{certify, verify_smooth};
use minkowski_ft::classify::classify_instance;
use minkowski_ft::engine::{d_segment, ft_locus, ft_point, ft_point_smooth};
use minkowski_ft::geom::Point;
use minkowski_ft::norm::{SmoothNorm, Vec2};
use minkowski_ft::oracle::{run_suite, Status, SUITES};
use minkowski_ft::problem::{region_json, NormKind, NormSpec, Problem, ProblemFile};
use minkowski_ft::render::Scene;
use minkowski_ft::scalar::{format_scalar, parse_scalar};
use minkowski_ft::scenes;
use minkowski_ft::Error;

#[derive(Parser)]
#[command(name = "mft", version, about = "Fermat-Torricelli points and loci in Minkowski planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file; `-` or absent reads stdin.
    file: Option<String>,
    /// Norm override: a built-in name (l1, linf, hexagon, octagon, euclid, lp:<p>),
    /// inline JSON, or a JSON file.
    #[arg(long)]
    norm: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance for smooth norms.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// One FT point and the optimal value.
    FtPoint(Common),
    /// The whole FT locus with a certificate.
    FtLocus(Common),
    /// The d-segment of the first two points.
    DSegment(Common),
    /// Hull relation, double clusters and optimal sites.
    Classify(Common),
    /// Criticality of the angle at a vertex between two arms.
    Angle {
        #[command(flatten)]
        common: Common,
        /// Arm endpoints as `x,y`; without them the problem's points are vertex, arm, arm.
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_name = "X,Y")]
        arms: Option<Vec<String>>,
        /// Vertex as `x,y` (default the origin).
        #[arg(long, allow_hyphen_values = true, value_name = "X,Y")]
        vertex: Option<String>,
    },
    /// Check whether a point is an FT point of the problem's points.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Candidate as `x,y`; defaults to the problem's `task.point`.
        #[arg(long, allow_hyphen_values = true, value_name = "X,Y")]
        point: Option<String>,
    },
    /// Run a randomized suite; one JSON record per line.
    Suite {
        /// One of optimality, locus_equalities, hull_relations, angles_deg3,
        /// classification, dcollinear.
        name: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an SVG figure of a problem file or a named figure (fig1 to fig6).
    Render {
        #[command(flatten)]
        common: Common,
    },
}

/// Failures, split by exit code.
enum Failure {
    /// Exit 1 with a machine-readable reason and optional details.
    Outcome { reason: &'static str, message: String, detail: Option<Value> },
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let reason = match e {
            Error::DegenerateConfig(_) => "degenerate",
            Error::MaxIterationsExceeded(_) => "max-iterations",
            Error::TheoremViolated(_) => "theorem-violated",
            Error::Inconsistent(_) => "inconsistent",
            Error::PreconditionViolated(_) => "precondition",
            Error::ModeMismatch => "mode-mismatch",
            Error::OddCardinality(_) => "odd-cardinality",
            Error::Cancelled => "cancelled",
            _ => return Failure::Input(message),
        };
        Failure::Outcome { reason, message, detail: None }
    }
}

type Outcome<T> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_text(file: Option<&str>) -> Outcome<String> {
    match file {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}"))),
    }
}

fn norm_override(arg: &str) -> Outcome<NormSpec> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))?;
        return Ok(NormSpec::parse(&text)?);
    }
    Ok(NormSpec::parse(arg)?)
}

fn load(common: &Common) -> Outcome<Problem> {
    let mut file = ProblemFile::parse(&read_text(common.file.as_deref())?)?;
    if let Some(n) = &common.norm {
        file.norm = norm_override(n)?;
    }
    Ok(file.validate()?)
}

fn parse_point(text: &str) -> Outcome<Point> {
    let (x, y) = text.split_once(',').ok_or_else(|| input(format!("expected x,y, got {text:?}")))?;
    Ok(Point::new(parse_scalar(x)?, parse_scalar(y)?))
}

fn floats(ps: &[Point]) -> Vec<Vec2> {
    ps.iter().map(Point::to_f64).collect()
}

fn ft_point_cmd(p: &Problem, tol: f64) -> Outcome<Value> {
    match &p.norm {
        NormKind::Polygon(n) => {
            let (x, value) = ft_point(n, &p.points)?;
            Ok(json!({ "point": x, "value": format_scalar(&value) }))
        }
        NormKind::Lp(n) => smooth_point(n, p, tol),
    }
}

fn smooth_point(n: &SmoothNorm, p: &Problem, tol: f64) -> Outcome<Value> {
    if p.points.is_empty() {
        return Err(input("no points"));
    }
    let (x, value) = ft_point_smooth(n, &floats(&p.points), tol)?;
    Ok(json!({ "point": x, "value": value, "exact": false }))
}

fn ft_locus_cmd(p: &Problem, tol: f64) -> Outcome<Value> {
    match &p.norm {
        NormKind::Polygon(n) => {
            let r = ft_locus(n, &p.points)?;
            Ok(json!({
                "locus": region_json(&r.locus),
                "value": format_scalar(&r.value),
                "witness": r.witness,
                "singleton_in_a": r.singleton_in_a,
                "certificate": r.certificate,
            }))
        }
        NormKind::Lp(n) => smooth_point(n, p, tol),
    }
}

fn d_segment_cmd(p: &Problem) -> Outcome<Value> {
    let NormKind::Polygon(n) = &p.norm else {
        return Err(input("d-segment needs a polygon norm"));
    };
    if p.points.len() != 2 {
        return Err(input(format!("d-segment needs exactly 2 points, got {}", p.points.len())));
    }
    Ok(json!({ "d_segment": region_json(&d_segment(n, &p.points[0], &p.points[1])?) }))
}

fn classify_cmd(p: &Problem) -> Outcome<Value> {
    let NormKind::Polygon(n) = &p.norm else {
        return Err(input("classify needs a polygon norm"));
    };
    let r = classify_instance(n, &p.points)?;
    let cluster = |pairs: &[(usize, usize)]| pairs.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>();
    Ok(json!({
        "locus": region_json(&r.locus),
        "value": format_scalar(&r.value),
        "hull_relation": r.hull_relation,
        "a_cap_ft": r.a_cap_ft,
        "shape": r.shape,
        "double_cluster": r.double_cluster.as_ref().map(|d| json!({
            "pairs": cluster(&d.pairs),
            "face": d.face.to_region().vertices(),
            "concurrent": d.concurrent,
            "exhaustive": d.exhaustive,
        })),
        "pseudo_double_cluster": r.pseudo_double_cluster.as_ref().map(|d| json!({
            "centre": d.centre,
            "extra": d.extra,
            "pairs": d.cluster.as_ref().map(|c| cluster(&c.pairs)).unwrap_or_default(),
        })),
    }))
}

fn angle_cmd(common: &Common, arms: Option<&[String]>, vertex: Option<&str>) -> Outcome<Value> {
    let (norm, points) = match arms {
        Some(arms) => {
            let spec = norm_override(common.norm.as_deref().ok_or_else(|| input("--arms needs --norm"))?)?;
            let v = match vertex {
                Some(v) => parse_point(v)?,
                None => Point::origin(),
            };
            (spec.build()?, vec![v, parse_point(&arms[0])?, parse_point(&arms[1])?])
        }
        None => {
            let p = load(common)?;
            (p.norm, p.points)
        }
    };
    let [x0, x1, x2] = <[Point; 3]>::try_from(points).map_err(|_| input("angle needs a vertex and two arms"))?;
    match norm {
        NormKind::Polygon(n) => {
            let q = AngleQuery::new(&n, x0, x1, x2);
            let (lo, hi) = q.range()?;
            Ok(json!({
                "critical": q.is_critical()?,
                "absorbing": q.is_absorbing()?,
                "straight": q.is_straight()?,
                "sum_norm_range": [format_scalar(&lo), format_scalar(&hi)],
            }))
        }
        NormKind::Lp(n) => {
            let [a, b, c] = [x0.to_f64(), x1.to_f64(), x2.to_f64()];
            Ok(json!({
                "critical": is_critical_smooth(&n, a, b, c, common.tol)?,
                "absorbing": is_absorbing_smooth(&n, a, b, c, common.tol)?,
                "tol": common.tol,
            }))
        }
    }
}

fn verify_cmd(common: &Common, point: Option<&str>) -> Outcome<Value> {
    let p = load(common)?;
    let x = match (point, &p.task.point) {
        (Some(text), _) => parse_point(text)?,
        (None, Some(x)) => x.clone(),
        (None, None) => return Err(input("no candidate point: pass --point or set task.point")),
    };
    let result = match &p.norm {
        NormKind::Polygon(n) => match certify(n, &p.points, &x)? {
            Some(cert) => json!({ "optimal": true, "point": x, "certificate": cert }),
            None => {
                let value = format_scalar(&n.objective(&p.points, &x));
                json!({ "optimal": false, "point": x, "objective": value })
            }
        },
        NormKind::Lp(n) => {
            let ok = verify_smooth(n, &floats(&p.points), x.to_f64(), common.tol)?;
            json!({ "optimal": ok, "point": x.to_f64(), "tol": common.tol })
        }
    };
    if result["optimal"] == json!(false) {
        let message = "the point is not an FT point".to_string();
        return Err(Failure::Outcome { reason: "not-optimal", message, detail: Some(result) });
    }
    Ok(result)
}

fn render_cmd(common: &Common) -> Outcome<Value> {
    let named = common.file.as_deref().filter(|f| scenes::FIGURES.iter().any(|(n, _)| n == f));
    let mut file = match named {
        Some(name) => scenes::figure(name)?,
        None => ProblemFile::parse(&read_text(common.file.as_deref())?)?,
    };
    if let Some(n) = &common.norm {
        file.norm = norm_override(n)?;
    }
    let scene = Scene::from_problem(&file.validate()?)?;
    let out = common.out.clone().unwrap_or_else(|| {
        let stem = common.file.as_deref().and_then(|f| Path::new(f).file_stem()).and_then(|s| s.to_str());
        PathBuf::from(format!("{}.svg", stem.unwrap_or("figure")))
    });
    scene.write_svg(&out)?;
    Ok(json!({ "svg": out }))
}

fn suite_cmd(name: &str, trials: usize, seed: u64, out: Option<&Path>) -> Outcome<()> {
    if !SUITES.contains(&name) {
        return Err(input(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", "))));
    }
    let report = run_suite(name, trials, seed)?;
    let mut text = String::new();
    for r in &report {
        text.push_str(&r.to_json_line());
        text.push('\n');
    }
    emit_text(&text, out)?;
    let failed = report.iter().filter(|r| r.status == Status::Fail).count();
    if failed > 0 {
        let message = format!("{failed} of {trials} trials failed");
        return Err(Failure::Outcome { reason: "trials-failed", message, detail: None });
    }
    Ok(())
}

fn emit_text(text: &str, out: Option<&Path>) -> Outcome<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome<()> {
    let (value, out) = match &cli.command {
        Command::Suite { name, trials, seed, out } => return suite_cmd(name, *trials, *seed, out.as_deref()),
        Command::Render { common } => (render_cmd(common)?, None),
        Command::Angle { common, arms, vertex } => (angle_cmd(common, arms.as_deref(), vertex.as_deref())?, common.out.as_deref()),
        Command::Verify { common, point } => (verify_cmd(common, point.as_deref())?, common.out.as_deref()),
        Command::FtPoint(c) | Command::FtLocus(c) | Command::DSegment(c) | Command::Classify(c) => {
            let p = load(c)?;
            let v = match &cli.command {
                Command::FtPoint(_) => ft_point_cmd(&p, c.tol)?,
                Command::FtLocus(_) => ft_locus_cmd(&p, c.tol)?,
                Command::DSegment(_) => d_segment_cmd(&p)?,
                _ => classify_cmd(&p)?,
            };
            (v, c.out.as_deref())
        }
    };
    let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
    text.push('\n');
    emit_text(&text, out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Outcome { reason, message, detail }) => {
            let mut report = json!({ "reason": reason, "message": message });
            if let Some(d) = detail {
                report["detail"] = d;
            }
            println!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("mft: {message}");
            ExitCode::from(2)
        }
    }
}
