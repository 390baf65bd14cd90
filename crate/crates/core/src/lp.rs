//! Exact linear programming over the rationals: two-phase tableau simplex
//! with Bland's anti-cycling rule.
//!
//! Problems are in equality standard form: maximize `c·x` subject to
//! `A x = b`, `x ≥ 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    /// `rows × (cols + 1)`; the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row `z_j − c_j` followed by the current objective value.
    objective: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        if !self.objective[c].is_zero() {
            let f = self.objective[c].clone();
            for (x, y) in self.objective.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Loads objective `c` (length `cols`, zero beyond) and prices out the basis.
    fn set_objective(&mut self, c: &[Rational]) {
        let width = self.cols + 1;
        let mut obj: Vec<Rational> = (0..width)
            .map(|j| if j < c.len() { -c[j].clone() } else { Rational::zero() })
            .collect();
        for (r, &bcol) in self.basis.iter().enumerate() {
            if bcol < c.len() && !c[bcol].is_zero() {
                let f = c[bcol].clone();
                for (x, y) in obj.iter_mut().zip(&self.rows[r]) {
                    *x += &f * y;
                }
            }
        }
        self.objective = obj;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            // Bland: smallest improving column
            let Some(c) = (0..allowed).find(|&j| self.objective[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximize `c·x` subject to `a·x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (arow, bi)) in a.iter().zip(b).enumerate() {
        debug_assert_eq!(arow.len(), n);
        let flip = bi.is_negative();
        let mut row: Vec<Rational> =
            arow.iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, objective: vec![Rational::zero(); cols + 1], basis: (n..cols).collect(), cols };

    // Phase 1: maximize −Σ artificials.
    let phase1: Vec<Rational> = (0..cols).map(|j| if j < n { Rational::zero() } else { -Rational::one() }).collect();
    t.set_objective(&phase1);
    t.optimize(cols);
    if t.objective[cols].is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    t.set_objective(c);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rows[r][cols].clone();
        }
    }
    LpOutcome::Optimal { value: t.objective[cols].clone(), x }
}

/// Whether `a·x = b` has a solution with `x ≥ 0`.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    maximize(a, b, &vec![Rational::zero(); n]).is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn r(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 (slacks s1..s3)
        let a = r(&[&[1, 0, 1, 0, 0], &[0, 2, 0, 1, 0], &[3, 2, 0, 0, 1]]);
        let out = maximize(&a, &v(&[4, 12, 18]), &v(&[3, 5, 0, 0, 0]));
        match out {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(36));
                assert_eq!(x[0], rat(2));
                assert_eq!(x[1], rat(6));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x + y = -1 with x, y >= 0
        assert_eq!(maximize(&r(&[&[1, 1]]), &v(&[-1]), &v(&[0, 0])), LpOutcome::Infeasible);
        // x − y = 0, maximize x
        assert_eq!(maximize(&r(&[&[1, -1]]), &v(&[0]), &v(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = r(&[&[1, 1], &[2, 2]]);
        let out = maximize(&a, &v(&[1, 2]), &v(&[1, 0]));
        assert_eq!(out, LpOutcome::Optimal { value: rat(1), x: v(&[1, 0]) });
    }

    #[test]
    fn fractional_optimum() {
        // max t s.t. 3t + u = 1
        let out = maximize(&r(&[&[3, 1]]), &v(&[1]), &v(&[1, 0]));
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(out, LpOutcome::Optimal { value: third, x: alloc::vec![Rational::new(1.into(), 3.into()), rat(0)] });
    }
}
