use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

/// The `L_p` norm for `1 < p < ∞`, evaluated in floating point.
///
/// Strictly convex and smooth, so every nonzero vector has exactly one
/// norming functional.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothNorm {
    p: f64,
}

impl SmoothNorm {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidNorm(format!("L_p needs 1 < p < inf, got p = {p}")));
        }
        Ok(SmoothNorm { p })
    }

    pub fn euclidean() -> Self {
        SmoothNorm { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    pub fn norm(&self, v: Vec2) -> f64 {
        lp(v, self.p)
    }

    pub fn dual_norm(&self, phi: Vec2) -> f64 {
        lp(phi, self.q())
    }

    pub fn dist(&self, a: Vec2, b: Vec2) -> f64 {
        self.norm(sub(b, a))
    }

    pub fn objective(&self, sites: &[Vec2], x: Vec2) -> f64 {
        sites.iter().map(|&s| self.dist(x, s)).sum()
    }

    /// The norming functional of `v`: the gradient of the norm at `v`.
    pub fn norming(&self, v: Vec2) -> Result<Vec2> {
        let n = self.norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        let e = self.p - 1.0;
        let g = [
            (v[0] / n).abs().powf(e).copysign(v[0]),
            (v[1] / n).abs().powf(e).copysign(v[1]),
        ];
        let d = self.dual_norm(g);
        let g = [g[0] / d, g[1] / d];
        debug_assert!((self.dual_norm(g) - 1.0).abs() <= 1e-12);
        Ok(g)
    }

    /// The unique unit vector normed by a nonzero covector (inverse duality map).
    pub fn dual_direction(&self, phi: Vec2) -> Result<Vec2> {
        let d = self.dual_norm(phi);
        if d == 0.0 || !d.is_finite() {
            return Err(Error::ZeroVector);
        }
        let e = self.q() - 1.0;
        let v = [
            (phi[0] / d).abs().powf(e).copysign(phi[0]),
            (phi[1] / d).abs().powf(e).copysign(phi[1]),
        ];
        let n = self.norm(v);
        Ok([v[0] / n, v[1] / n])
    }
}

fn lp(v: Vec2, p: f64) -> f64 {
    let m = v[0].abs().max(v[1].abs());
    if m == 0.0 {
        return 0.0;
    }
    m * ((v[0].abs() / m).powf(p) + (v[1].abs() / m).powf(p)).powf(1.0 / p)
}

pub(crate) fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[cfg(test)]
fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_values() {
        let e = SmoothNorm::euclidean();
        assert!((e.norm([3.0, 4.0]) - 5.0).abs() < 1e-15);
        let g = e.norming([3.0, 4.0]).unwrap();
        assert!((g[0] - 0.6).abs() < 1e-15 && (g[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn norming_functional_attains_norm() {
        for &p in &[1.5, 2.0, 3.0, 7.0] {
            let n = SmoothNorm::new(p).unwrap();
            let v = [1.3, -0.4];
            let g = n.norming(v).unwrap();
            assert!((dot(g, v) - n.norm(v)).abs() < 1e-12);
            assert!((n.dual_norm(g) - 1.0).abs() < 1e-12);
            let back = n.dual_direction(g).unwrap();
            let u = n.norm(v);
            assert!((back[0] - v[0] / u).abs() < 1e-9 && (back[1] - v[1] / u).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(SmoothNorm::new(1.0).is_err());
        assert!(SmoothNorm::new(f64::INFINITY).is_err());
        assert!(SmoothNorm::new(f64::NAN).is_err());
    }
}
