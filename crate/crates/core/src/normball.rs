//! The intersection norm `x(a) = max_ν ν(a)` over Eulerian classes and its
//! dual unit ball, the convex hull of those classes.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::coorient::{enumerate_eulerian, EnumLimits, EulerianSet};
use crate::homology::{HomologyBasis, HomologyCoords};
use crate::lp::{self, rat, LpOutcome, Rational};
use crate::map::WallSystemMap;
use crate::{Error, Result};

/// `x(a)` together with a class attaining the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormValue {
    pub value: i64,
    pub witness: HomologyCoords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Membership {
    Outside,
    Boundary,
    Interior,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Outside => "outside",
            Membership::Boundary => "boundary",
            Membership::Interior => "interior",
        }
    }
}

/// The norm of one wall system in one homology basis, backed by the set of
/// Eulerian classes. The dual ball is computed on first use and kept.
#[derive(Debug, Clone)]
pub struct IntersectionNorm {
    rank: usize,
    points: Vec<HomologyCoords>,
    ball: OnceCell<DualBall>,
}

impl IntersectionNorm {
    /// Enumerates all Eulerian coorientations of `map`.
    pub fn compute(map: &WallSystemMap, basis: &HomologyBasis, limits: EnumLimits) -> Result<Self> {
        let set = enumerate_eulerian(map, basis, limits, false)?;
        Self::from_set(basis.rank(), &set)
    }

    pub fn from_set(rank: usize, set: &EulerianSet) -> Result<Self> {
        Self::from_points(rank, set.distinct_classes().cloned())
    }

    pub fn from_points(rank: usize, points: impl IntoIterator<Item = HomologyCoords>) -> Result<Self> {
        let points: BTreeSet<HomologyCoords> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyClassSet);
        }
        if let Some(p) = points.iter().find(|p| p.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: p.len() });
        }
        Ok(IntersectionNorm { rank, points: points.into_iter().collect(), ball: OnceCell::new() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Distinct Eulerian classes, sorted.
    pub fn points(&self) -> &[HomologyCoords] {
        &self.points
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found });
        }
        Ok(())
    }

    /// `x(a)`; ties for the witness go to the lexicographically smallest class.
    pub fn norm(&self, a: &HomologyCoords) -> Result<NormValue> {
        self.check_len(a.len())?;
        let mut best: Option<(i64, &HomologyCoords)> = None;
        for p in &self.points {
            let v = p.dot(&a.0);
            if best.map_or(true, |(b, _)| v > b) {
                best = Some((v, p));
            }
        }
        let (value, witness) = best.expect("class set is nonempty");
        Ok(NormValue { value, witness: witness.clone() })
    }

    /// The continuous extension to rational classes.
    pub fn norm_rational(&self, a: &[Rational]) -> Result<Rational> {
        self.check_len(a.len())?;
        let value = self
            .points
            .iter()
            .map(|p| p.0.iter().zip(a).map(|(&x, y)| rat(x) * y).sum::<Rational>())
            .max()
            .expect("class set is nonempty");
        Ok(value)
    }

    pub fn dual_ball(&self) -> &DualBall {
        self.ball.get_or_init(|| DualBall::new(self.rank, self.points.clone()))
    }
}

/// Convex hull of the Eulerian classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBall {
    pub rank: usize,
    pub points: Vec<HomologyCoords>,
    pub extreme: Vec<HomologyCoords>,
    pub dim: usize,
    /// Extreme points in counterclockwise order (rank 2 only).
    pub polygon: Option<Vec<HomologyCoords>>,
    pub area: Option<Rational>,
}

impl DualBall {
    pub fn new(rank: usize, points: Vec<HomologyCoords>) -> Self {
        let extreme: Vec<HomologyCoords> = points
            .iter()
            .enumerate()
            .filter(|&(i, p)| {
                let others: Vec<&HomologyCoords> =
                    points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
                !in_hull(&others, p)
            })
            .map(|(_, p)| p.clone())
            .collect();
        let dim = affine_dimension(&points);
        let polygon = (rank == 2).then(|| counterclockwise(&extreme));
        let area = polygon.as_ref().map(|poly| shoelace_area(poly));
        DualBall { rank, points, extreme, dim, polygon, area }
    }

    /// Exact position of `p` relative to the ball: a point is interior iff it
    /// is a convex combination of the extreme points with every weight
    /// strictly positive.
    pub fn contains(&self, p: &HomologyCoords) -> Result<Membership> {
        if p.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: p.len() });
        }
        if self.dim < self.rank {
            return Err(Error::DegenerateBall { dim: self.dim, expected: self.rank });
        }
        // λ_j = μ_j + t with μ ≥ 0, t ≥ 0; maximize t.
        let k = self.extreme.len();
        let mut a = Vec::with_capacity(self.rank + 1);
        let mut row: Vec<Rational> = vec![rat(1); k];
        row.push(rat(k as i64));
        a.push(row);
        for i in 0..self.rank {
            let mut row: Vec<Rational> = self.extreme.iter().map(|v| rat(v.0[i])).collect();
            row.push(rat(self.extreme.iter().map(|v| v.0[i]).sum()));
            a.push(row);
        }
        let mut b = vec![rat(1)];
        b.extend(p.0.iter().map(|&x| rat(x)));
        let mut c = vec![Rational::zero(); k];
        c.push(rat(1));
        Ok(match lp::maximize(&a, &b, &c) {
            LpOutcome::Infeasible => Membership::Outside,
            LpOutcome::Optimal { value, .. } if value.is_positive() => Membership::Interior,
            LpOutcome::Optimal { .. } => Membership::Boundary,
            LpOutcome::Unbounded => unreachable!("t is bounded by 1/k"),
        })
    }

    /// Facets `normal·x ≤ offset` with primitive integer normals, sorted.
    /// Empty unless the ball is full-dimensional.
    pub fn facets(&self) -> Vec<Facet> {
        if self.dim < self.rank || self.rank == 0 {
            return Vec::new();
        }
        let mut found: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
        let mut chosen = Vec::with_capacity(self.rank);
        self.facet_search(0, &mut chosen, &mut found);
        found
            .into_iter()
            .map(|(normal, offset)| {
                let vertices = self.extreme.iter().filter(|p| p.dot(&normal) == offset).cloned().collect();
                Facet { normal, offset, vertices }
            })
            .collect()
    }

    fn facet_search(&self, from: usize, chosen: &mut Vec<usize>, found: &mut BTreeSet<(Vec<i64>, i64)>) {
        if chosen.len() == self.rank {
            if let Some(f) = self.supporting_plane(chosen) {
                found.insert(f);
            }
            return;
        }
        for i in from..self.extreme.len() {
            chosen.push(i);
            self.facet_search(i + 1, chosen, found);
            chosen.pop();
        }
    }

    /// The hyperplane through the chosen extreme points, oriented outward, if
    /// it is unique and supports the ball.
    fn supporting_plane(&self, chosen: &[usize]) -> Option<(Vec<i64>, i64)> {
        let d = self.rank;
        let p0 = &self.extreme[chosen[0]];
        let diffs: Vec<Vec<BigInt>> = chosen[1..]
            .iter()
            .map(|&i| self.extreme[i].0.iter().zip(&p0.0).map(|(a, b)| BigInt::from(a - b)).collect())
            .collect();
        let mut normal: Vec<i64> = (0..d)
            .map(|col| {
                let minor: Vec<Vec<BigInt>> = diffs
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let det = crate::snf::determinant(&minor);
                let det = if col % 2 == 0 { det } else { -det };
                det.to_i64().expect("facet normal fits in i64")
            })
            .collect();
        let g = normal.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
        if g == 0 {
            return None;
        }
        for x in normal.iter_mut() {
            *x /= g;
        }
        let mut offset = p0.dot(&normal);
        let (mut above, mut below) = (false, false);
        for q in &self.extreme {
            let s = q.dot(&normal) - offset;
            above |= s > 0;
            below |= s < 0;
        }
        match (above, below) {
            (true, true) => None,
            (true, false) => {
                for x in normal.iter_mut() {
                    *x = -*x;
                }
                offset = -offset;
                Some((normal, offset))
            }
            _ => Some((normal, offset)),
        }
    }

    /// Coordinate-wise bounds of the extreme points.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.rank).map(|i| self.extreme.iter().map(|p| p.0[i]).min().unwrap_or(0)).collect();
        let hi = (0..self.rank).map(|i| self.extreme.iter().map(|p| p.0[i]).max().unwrap_or(0)).collect();
        (lo, hi)
    }
}

/// A facet `normal·x = offset` of the ball and its extreme points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<HomologyCoords>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Whether `p` is a convex combination of `pts`.
pub fn in_hull(pts: &[&HomologyCoords], p: &HomologyCoords) -> bool {
    if pts.is_empty() {
        return false;
    }
    let mut a: Vec<Vec<Rational>> = vec![vec![rat(1); pts.len()]];
    for i in 0..p.len() {
        a.push(pts.iter().map(|q| rat(q.0[i])).collect());
    }
    let mut b = vec![rat(1)];
    b.extend(p.0.iter().map(|&x| rat(x)));
    lp::feasible(&a, &b)
}

/// Dimension of the affine span.
pub fn affine_dimension(points: &[HomologyCoords]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let mut rows: Vec<Vec<Rational>> =
        points[1..].iter().map(|q| q.0.iter().zip(&p0.0).map(|(a, b)| rat(a - b)).collect()).collect();
    let cols = p0.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, r);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Sorts planar points by angle around their centroid, starting from the
/// direction of the positive first axis.
fn counterclockwise(points: &[HomologyCoords]) -> Vec<HomologyCoords> {
    let k = points.len() as i128;
    let sx: i128 = points.iter().map(|p| p.0[0] as i128).sum();
    let sy: i128 = points.iter().map(|p| p.0[1] as i128).sum();
    let rel = |p: &HomologyCoords| (k * p.0[0] as i128 - sx, k * p.0[1] as i128 - sy);
    let half = |(x, y): (i128, i128)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    let mut out = points.to_vec();
    out.sort_by(|p, q| {
        let (u, v) = (rel(p), rel(q));
        half(u).cmp(&half(v)).then_with(|| (v.0 * u.1).cmp(&(u.0 * v.1)))
    });
    out
}

fn shoelace_area(poly: &[HomologyCoords]) -> Rational {
    let n = poly.len();
    let twice: i128 = (0..n)
        .map(|i| {
            let (p, q) = (&poly[i], &poly[(i + 1) % n]);
            p.0[0] as i128 * q.0[1] as i128 - q.0[0] as i128 * p.0[1] as i128
        })
        .sum();
    Rational::new(BigInt::from(twice.abs()), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::grid;
    use crate::homology::homology_basis;

    fn ctx(m: usize, n: usize) -> IntersectionNorm {
        let g = grid(m, n);
        let b = homology_basis(&g).unwrap();
        IntersectionNorm::compute(&g, &b, EnumLimits::UNLIMITED).unwrap()
    }

    fn c(v: &[i64]) -> HomologyCoords {
        HomologyCoords(v.to_vec())
    }

    #[test]
    fn torus_grid_norm() {
        let x = ctx(2, 2);
        assert_eq!(x.norm(&c(&[4, 1])).unwrap().value, 10);
        for p in -3..=3i64 {
            for q in -3..=3i64 {
                assert_eq!(x.norm(&c(&[p, q])).unwrap().value, 2 * p.abs() + 2 * q.abs());
            }
        }
        assert_eq!(x.norm(&c(&[0, 0])).unwrap().value, 0);
        assert_eq!(x.norm(&c(&[1])).unwrap_err().name(), "DimensionMismatch");
    }

    #[test]
    fn rational_extension() {
        let x = ctx(2, 2);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(x.norm_rational(&[half.clone(), rat(0)]).unwrap(), rat(1));
        let a = [Rational::new(3.into(), 7.into()), Rational::new((-5).into(), 3.into())];
        let neg: Vec<Rational> = a.iter().map(|r| -r.clone()).collect();
        assert_eq!(x.norm_rational(&a).unwrap(), x.norm_rational(&neg).unwrap());
        let scaled: Vec<Rational> = a.iter().map(|r| r * &half).collect();
        assert_eq!(x.norm_rational(&scaled).unwrap(), x.norm_rational(&a).unwrap() * half);
    }

    #[test]
    fn balls_of_small_grids() {
        let b = ctx(1, 1).dual_ball().clone();
        let mut ext = b.extreme.clone();
        ext.sort();
        assert_eq!(ext, vec![c(&[-1, -1]), c(&[-1, 1]), c(&[1, -1]), c(&[1, 1])]);
        assert_eq!(b.area, Some(rat(4)));
        assert_eq!(b.dim, 2);

        let b = ctx(2, 2).dual_ball().clone();
        let mut ext = b.extreme.clone();
        ext.sort();
        assert_eq!(ext, vec![c(&[-2, -2]), c(&[-2, 2]), c(&[2, -2]), c(&[2, 2])]);
        assert_eq!(b.area, Some(rat(16)));
        let poly = b.polygon.unwrap();
        assert_eq!(poly, vec![c(&[2, 2]), c(&[-2, 2]), c(&[-2, -2]), c(&[2, -2])]);
    }

    #[test]
    fn square_facets() {
        let f = ctx(2, 2).dual_ball().facets();
        let normals: Vec<Vec<i64>> = f.iter().map(|f| f.normal.clone()).collect();
        assert_eq!(normals, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert!(f.iter().all(|f| f.offset == 2 && f.vertices.len() == 2));
    }

    #[test]
    fn membership() {
        let x = ctx(2, 2);
        let b = x.dual_ball();
        assert_eq!(b.contains(&c(&[0, 0])).unwrap(), Membership::Interior);
        assert_eq!(b.contains(&c(&[2, 0])).unwrap(), Membership::Boundary);
        assert_eq!(b.contains(&c(&[3, 0])).unwrap(), Membership::Outside);
        assert_eq!(b.contains(&c(&[1, 1])).unwrap(), Membership::Interior);
        let x = ctx(1, 1);
        assert_eq!(x.dual_ball().contains(&c(&[1, 1])).unwrap(), Membership::Boundary);
    }

    #[test]
    fn degenerate_ball_is_reported() {
        let x = IntersectionNorm::from_points(2, [c(&[1, 1]), c(&[-1, -1])]).unwrap();
        assert_eq!(x.dual_ball().dim, 1);
        assert_eq!(x.dual_ball().contains(&c(&[0, 0])).unwrap_err().name(), "DegenerateBall");
        assert_eq!(IntersectionNorm::from_points(2, []).unwrap_err(), Error::EmptyClassSet);
    }
}
