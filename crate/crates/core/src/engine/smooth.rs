use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::norm::{SmoothNorm, Vec2};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeiszfeldOptions {
    /// Target for the dual norm of the summed norming functionals.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for WeiszfeldOptions {
    fn default() -> Self {
        WeiszfeldOptions { tol: 1e-9, max_iter: 100_000 }
    }
}

fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: Vec2, t: f64) -> Vec2 {
    [a[0] * t, a[1] * t]
}

/// `Σ norming(xᵢ − x)` over the sites other than `skip`, i.e. minus the gradient.
fn pull(norm: &SmoothNorm, sites: &[Vec2], x: Vec2, skip: Option<usize>) -> Result<Vec2> {
    let mut r = [0.0, 0.0];
    for (i, s) in sites.iter().enumerate() {
        if Some(i) != skip {
            r = add(r, norm.norming(sub(*s, x))?);
        }
    }
    Ok(r)
}

/// Hessian of `v ↦ ‖v‖_p`: `(p − 1)/‖v‖ · (diag|uₖ|^{p−2} − g gᵀ)`, `u = v/‖v‖`.
fn hessian(norm: &SmoothNorm, v: Vec2) -> [f64; 3] {
    let n = norm.norm(v);
    let p = norm.p();
    let u = [(v[0] / n).abs().max(1e-12), (v[1] / n).abs().max(1e-12)];
    let g = norm.norming(v).unwrap_or([0.0, 0.0]);
    let c = (p - 1.0) / n;
    [
        c * (u[0].powf(p - 2.0) - g[0] * g[0]),
        -c * g[0] * g[1],
        c * (u[1].powf(p - 2.0) - g[1] * g[1]),
    ]
}

/// A minimizer of `x ↦ Σ‖x − xᵢ‖_p`.
///
/// Sites are tested for absorption first. Otherwise the minimizer is off
/// the sites, where the objective is smooth, and damped Newton steps from
/// the centroid run until the summed norming functionals have dual norm at
/// most `tol`. An iterate that hits a site steps off along the pull of the
/// remaining sites.
pub fn weiszfeld(norm: &SmoothNorm, sites: &[Vec2], opts: WeiszfeldOptions, cancel: &CancelToken) -> Result<Vec2> {
    if sites.is_empty() {
        return Err(Error::TooFewSites(1));
    }
    for (j, s) in sites.iter().enumerate() {
        if let Some(i) = sites[..j].iter().position(|t| t == s) {
            return Err(Error::DuplicateSites(j, i));
        }
    }
    match sites {
        [s] => return Ok(*s),
        [a, b] => return Ok(scale(add(*a, *b), 0.5)),
        _ => {}
    }
    for j in 0..sites.len() {
        if norm.dual_norm(pull(norm, sites, sites[j], Some(j))?) <= 1.0 + opts.tol {
            return Ok(sites[j]);
        }
    }

    let f = |x: Vec2| norm.objective(sites, x);
    let scale_len = sites.iter().map(|s| norm.dist(sites[0], *s)).fold(0.0, f64::max);
    let mut x = scale(sites.iter().fold([0.0, 0.0], |a, s| add(a, *s)), 1.0 / sites.len() as f64);
    for iter in 0..opts.max_iter {
        if cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        if let Some(j) = sites.iter().position(|s| *s == x) {
            let r = pull(norm, sites, x, Some(j))?;
            let d = norm.dual_direction(r)?;
            x = add(x, scale(d, 1e-6 * scale_len));
            continue;
        }
        let r = pull(norm, sites, x, None)?;
        if norm.dual_norm(r) <= opts.tol {
            return Ok(x);
        }
        let mut h = [0.0; 3];
        for s in sites {
            let [a, b, c] = hessian(norm, sub(x, *s));
            h = [h[0] + a, h[1] + b, h[2] + c];
        }
        let det = h[0] * h[2] - h[1] * h[1];
        let newton = if det > 1e-300 && h[0] > 0.0 {
            [(h[2] * r[0] - h[1] * r[1]) / det, (h[0] * r[1] - h[1] * r[0]) / det]
        } else {
            [0.0, 0.0]
        };
        let gradient = scale(norm.dual_direction(r)?, norm.dual_norm(r) / sites.len() as f64);
        let fx = f(x);
        let res = norm.dual_norm(r);
        // Near the optimum f is flat to round-off; then a shrinking residual decides.
        let flat = 4.0 * f64::EPSILON * fx;
        let residual_at = |y: Vec2| pull(norm, sites, y, None).map(|q| norm.dual_norm(q)).unwrap_or(f64::INFINITY);
        let mut moved = false;
        'search: for d in [newton, gradient] {
            let mut t = 1.0;
            while t > 1e-20 {
                let y = add(x, scale(d, t));
                let fy = f(y);
                if fy < fx - flat || (fy <= fx + flat && residual_at(y) < res) {
                    x = y;
                    moved = true;
                    break 'search;
                }
                t *= 0.5;
            }
        }
        if !moved {
            return Err(Error::MaxIterationsExceeded(iter));
        }
    }
    Err(Error::MaxIterationsExceeded(opts.max_iter))
}

/// Smooth-norm FT point and value.
pub fn ft_point_smooth(norm: &SmoothNorm, sites: &[Vec2], tol: f64) -> Result<(Vec2, f64)> {
    let x = weiszfeld(norm, sites, WeiszfeldOptions { tol, ..Default::default() }, &CancelToken::never())?;
    Ok((x, norm.objective(sites, x)))
}
