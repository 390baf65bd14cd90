//! Smith normal form over arbitrary-precision integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// `left · A · right = D` with `D` diagonal, its nonzero entries positive and
/// each dividing the next. All four transforms are unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// True iff every invariant factor is 1.
    pub fn is_torsion_free(&self) -> bool {
        self.diagonal.iter().all(One::is_one)
    }
}

struct Work {
    a: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.right.len()
    }

    // row_i += c·row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += c * y;
            }
        }
        for row in self.left_inv.iter_mut() {
            let t = c * &row[i];
            row[j] -= t;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
        for row in self.left_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.left_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    // col_i += c·col_j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                let t = c * &row[j];
                row[i] += t;
            }
        }
        let src = self.right_inv[i].clone();
        for (x, y) in self.right_inv[j].iter_mut().zip(&src) {
            *x -= c * y;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.right] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.right_inv.swap(i, j);
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot by Euclidean steps.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut done = true;
            for i in t + 1..self.rows() {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&self.a[t][t]);
                self.row_add(i, t, &-q);
                if !self.a[i][t].is_zero() {
                    self.row_swap(i, t);
                    done = false;
                }
            }
            for j in t + 1..self.cols() {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&self.a[t][t]);
                self.col_add(j, t, &-q);
                if !self.a[t][j].is_zero() {
                    self.col_swap(j, t);
                    done = false;
                }
            }
            if done {
                return;
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix, cols: usize) -> SmithForm {
    let rows = a.len();
    let mut w = Work {
        a: a.clone(),
        left: identity(rows),
        left_inv: identity(rows),
        right: identity(cols),
        right_inv: identity(cols),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_in(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            w.clear_cross(t);
            // The pivot must divide the remaining block; otherwise fold the
            // offending row in and continue reducing.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t]))
            });
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
        diagonal.push(w.a[t][t].clone());
    }
    SmithForm { diagonal, left: w.left, left_inv: w.left_inv, right: w.right, right_inv: w.right_inv }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse of a unimodular matrix, or `None` if `m` is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let snf = smith_normal_form(m, n);
    if snf.rank() != n || !snf.is_torsion_free() {
        return None;
    }
    // left·M·right = I  ⇒  M⁻¹ = right·left
    Some(mul(&snf.right, &snf.left))
}

/// Rows `k..n` of a unimodular matrix whose first `k` rows span the same
/// lattice as `rows`. `None` unless `rows` spans a primitive rank-`k` sublattice.
pub fn complete_to_basis(rows: &IntMatrix, n: usize) -> Option<IntMatrix> {
    let k = rows.len();
    let snf = smith_normal_form(rows, n);
    if snf.rank() != k || !snf.is_torsion_free() {
        return None;
    }
    // rows = left⁻¹ · [I 0] · right⁻¹, so the first k rows of right⁻¹ span them.
    Some(snf.right_inv[k..].to_vec())
}

/// Whether `rows` is a primitive family: it extends to a lattice basis.
pub fn is_primitive(rows: &IntMatrix, n: usize) -> bool {
    let snf = smith_normal_form(rows, n);
    snf.rank() == rows.len() && snf.is_torsion_free()
}

pub fn zero_matrix(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); cols]; rows]
}
