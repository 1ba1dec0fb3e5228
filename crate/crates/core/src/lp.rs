//! A small dense two-phase simplex over exact rationals.
//!
//! Instances in this crate have at most a few dozen rows, so a full tableau
//! is fine. Bland's rule is used throughout, which rules out cycling.

use num_traits::{One, Signed, Zero};

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Scalar>,
    rel: Relation,
    rhs: Scalar,
}

/// `minimize objective·x` subject to linear rows; variables are
/// non-negative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    rows: Vec<Row>,
    objective: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Scalar>,
    pub value: Scalar,
    /// One multiplier per row, for the minimization as stated
    /// (`objective ≥ Σ duals·rows` holds column-wise on non-negative variables).
    pub duals: Vec<Scalar>,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            rows: Vec::new(),
            objective: vec![Scalar::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn add_row(&mut self, coeffs: Vec<Scalar>, rel: Relation, rhs: Scalar) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "row width");
        self.rows.push(Row { coeffs, rel, rhs });
        self
    }

    /// Adds `x[var] ≤ bound`.
    pub fn add_upper_bound(&mut self, var: usize, bound: Scalar) -> &mut Self {
        let mut coeffs = vec![Scalar::zero(); self.num_vars];
        coeffs[var] = Scalar::one();
        self.add_row(coeffs, Relation::Le, bound)
    }

    pub fn set_objective(&mut self, objective: Vec<Scalar>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        self.objective = objective;
        self
    }

    pub fn solve(&self) -> LpOutcome {
        self.solve_cancellable(&CancelToken::never())
            .expect("never-cancelled solve")
    }

    pub fn solve_cancellable(&self, cancel: &CancelToken) -> Result<LpOutcome> {
        Tableau::build(self).run(self, cancel)
    }
}

/// Column layout: structural (free vars split in two), slacks, artificials.
struct Tableau {
    t: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    row_sign: Vec<bool>,
    split: Vec<(usize, Option<usize>)>,
    n_struct: usize,
    n_cols: usize,
    first_art: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut split = Vec::with_capacity(lp.num_vars);
        let mut n_struct = 0;
        for &free in &lp.free {
            if free {
                split.push((n_struct, Some(n_struct + 1)));
                n_struct += 2;
            } else {
                split.push((n_struct, None));
                n_struct += 1;
            }
        }
        let m = lp.rows.len();
        let n_slack = lp.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let first_art = n_struct + n_slack;
        let n_cols = first_art + m;
        let mut t = Vec::with_capacity(m);
        let mut row_sign = Vec::with_capacity(m);
        let mut slack = n_struct;
        for (i, row) in lp.rows.iter().enumerate() {
            let mut r = vec![Scalar::zero(); n_cols + 1];
            for (v, c) in row.coeffs.iter().enumerate() {
                let (pos, neg) = split[v];
                r[pos] = c.clone();
                if let Some(neg) = neg {
                    r[neg] = -c;
                }
            }
            match row.rel {
                Relation::Le => {
                    r[slack] = Scalar::one();
                    slack += 1;
                }
                Relation::Ge => {
                    r[slack] = -Scalar::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            r[n_cols] = row.rhs.clone();
            let flip = row.rhs.is_negative();
            if flip {
                for e in r.iter_mut() {
                    *e = -&*e;
                }
            }
            r[first_art + i] = Scalar::one();
            t.push(r);
            row_sign.push(flip);
        }
        Tableau {
            t,
            basis: (first_art..first_art + m).collect(),
            row_sign,
            split,
            n_struct,
            n_cols,
            first_art,
        }
    }

    fn pivot(&mut self, obj: &mut [Scalar], r: usize, c: usize) {
        let piv = self.t[r][c].clone();
        if !piv.is_one() {
            for e in self.t[r].iter_mut() {
                *e = &*e / &piv;
            }
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e = &*e - &(&f * p);
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (e, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e = &*e - &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs for `costs` (per column) under the current basis.
    fn reduced_costs(&self, costs: &[Scalar]) -> Vec<Scalar> {
        let mut obj: Vec<Scalar> = costs.to_vec();
        obj.push(Scalar::zero());
        for (i, row) in self.t.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (e, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *e = &*e - &(cb * a);
                }
            }
        }
        obj
    }

    /// Bland's rule iterations; `eligible` bounds the entering columns.
    fn iterate(&mut self, obj: &mut [Scalar], eligible: usize, cancel: &CancelToken) -> Result<bool> {
        loop {
            if cancel.is_cancelled() {
                return Err(Error::Cancelled);
            }
            let Some(c) = (0..eligible).find(|&j| obj[j].is_negative()) else {
                return Ok(true);
            };
            let mut best: Option<(usize, Scalar)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.n_cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(obj, r, c),
                None => return Ok(false),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram, cancel: &CancelToken) -> Result<LpOutcome> {
        let m = self.t.len();
        // Phase one: minimise the sum of artificials.
        let mut costs = vec![Scalar::zero(); self.n_cols];
        for c in costs.iter_mut().skip(self.first_art) {
            *c = Scalar::one();
        }
        let mut obj = self.reduced_costs(&costs);
        self.iterate(&mut obj, self.first_art, cancel)?;
        if !obj[self.n_cols].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if self.basis[r] < self.first_art {
                continue;
            }
            if let Some(c) = (0..self.first_art).find(|&j| !self.t[r][j].is_zero()) {
                let mut scratch = vec![Scalar::zero(); self.n_cols + 1];
                self.pivot(&mut scratch, r, c);
            }
        }

        // Phase two.
        let mut costs = vec![Scalar::zero(); self.n_cols];
        for (v, c) in lp.objective.iter().enumerate() {
            let (pos, neg) = self.split[v];
            costs[pos] = c.clone();
            if let Some(neg) = neg {
                costs[neg] = -c;
            }
        }
        let mut obj = self.reduced_costs(&costs);
        if !self.iterate(&mut obj, self.first_art, cancel)? {
            return Ok(LpOutcome::Unbounded);
        }

        let mut values = vec![Scalar::zero(); self.n_struct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                values[b] = self.t[r][self.n_cols].clone();
            }
        }
        let x: Vec<Scalar> = self
            .split
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &values[pos] - &values[neg],
                None => values[pos].clone(),
            })
            .collect();
        let value = lp
            .objective
            .iter()
            .zip(&x)
            .fold(Scalar::zero(), |acc, (c, v)| acc + c * v);
        // Artificial columns are unit columns with zero phase-two cost, so
        // their reduced cost is the negated row multiplier.
        let duals = (0..m)
            .map(|i| {
                let y = -&obj[self.first_art + i];
                if self.row_sign[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(LpOutcome::Optimal(LpSolution { x, value, duals }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y  s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  → (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 0]), Relation::Le, int(4))
            .add_row(ints(&[0, 2]), Relation::Le, int(12))
            .add_row(ints(&[3, 2]), Relation::Le, int(18))
            .set_objective(ints(&[-3, -5]));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.x, ints(&[2, 6]));
        assert_eq!(sol.value, int(-36));
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x  s.t. x + y = 1, y ≤ 3, x free  → x = -2
        let mut lp = LinearProgram::new(2);
        lp.set_free(0)
            .add_row(ints(&[1, 1]), Relation::Eq, int(1))
            .add_upper_bound(1, int(3))
            .set_objective(ints(&[1, 0]));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.x, ints(&[-2, 3]));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_row(ints(&[1]), Relation::Ge, int(2))
            .add_row(ints(&[1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.set_free(0).set_objective(ints(&[1]));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn duals_satisfy_strong_duality() {
        // min 2x + 3y  s.t. x + y ≥ 1/2, -x - 2y ≤ -1  → (0, 1/2), 3/2
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 1]), Relation::Ge, ratio(1, 2))
            .add_row(ints(&[-1, -2]), Relation::Le, int(-1))
            .set_objective(ints(&[2, 3]));
        let sol = lp.solve().optimal().unwrap();
        let rhs = [ratio(1, 2), int(-1)];
        let dual_value = sol.duals.iter().zip(&rhs).fold(int(0), |a, (y, b)| a + y * b);
        assert_eq!(dual_value, sol.value);
        assert_eq!(sol.value, ratio(3, 2));
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(ints(&[1, 1]), Relation::Eq, int(2))
            .add_row(ints(&[2, 2]), Relation::Eq, int(4))
            .set_objective(ints(&[1, 2]));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.x, ints(&[2, 0]));
        assert_eq!(sol.value, int(2));
    }

    #[test]
    fn cancellation_is_observed() {
        let token = CancelToken::new();
        token.cancel();
        let mut lp = LinearProgram::new(1);
        lp.add_row(ints(&[1]), Relation::Ge, int(1)).set_objective(ints(&[1]));
        assert!(matches!(lp.solve_cancellable(&token), Err(Error::Cancelled)));
    }
}
