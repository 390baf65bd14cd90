//! Brute-force minimum of `|α ∩ γ|` over multicurves `α` in a class: shortest
//! closed walks in the truncated abelian cover, combined by a decomposition
//! dynamic program over the class box.

use alloc::vec;
use alloc::vec::Vec;

use crate::cover::{Bfs, CoverBox};
use crate::homology::{HomologyBasis, HomologyCoords};
use crate::map::WallSystemMap;
use crate::normball::IntersectionNorm;
use crate::walk::DualWalk;
use crate::{Error, Result};

/// Truncation settings. `radius` defaults to `‖a‖∞ + 2g + 2`, `cap` to four
/// times the starting radius.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub radius: Option<usize>,
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCycle {
    pub walk: DualWalk,
    pub class: HomologyCoords,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCurveCertificate {
    pub cycles: Vec<CertificateCycle>,
    pub total_length: u64,
    pub total_class: HomologyCoords,
}

impl MultiCurveCertificate {
    /// Checks closedness, the length sum and the class sum against `basis`.
    pub fn verify(&self, map: &WallSystemMap, basis: &HomologyBasis) -> bool {
        let mut length = 0;
        let mut class = HomologyCoords::zero(basis.rank());
        for c in &self.cycles {
            match basis.class_of_walk(map, &c.walk) {
                Ok(k) if k == c.class && c.walk.len() as u64 == c.length => {}
                _ => return false,
            }
            length += c.length;
            class = class.add(&c.class);
        }
        length == self.total_length && class == self.total_class
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValue {
    pub value: u64,
    pub certificate: MultiCurveCertificate,
    /// Truncation radius at which the value was accepted.
    pub truncation: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Empty,
    Single(usize),
    Split(usize),
}

/// `M(c)` for every class `c` with `‖c‖∞ ≤ query`.
struct Table {
    cover: CoverBox,
    query: usize,
    rank: usize,
    searches: Vec<Bfs>,
    values: Vec<Option<u64>>,
    how: Vec<Choice>,
}

fn box_len(rank: usize, r: usize) -> usize {
    (2 * r + 1).pow(rank as u32)
}

fn box_coords(rank: usize, r: usize, mut idx: usize) -> Vec<i64> {
    let side = 2 * r + 1;
    let mut c = Vec::with_capacity(rank);
    for _ in 0..rank {
        c.push((idx % side) as i64 - r as i64);
        idx /= side;
    }
    c
}

fn box_index(r: usize, c: &[i64]) -> Option<usize> {
    let side = 2 * r + 1;
    let mut idx = 0usize;
    for &x in c.iter().rev() {
        if x.unsigned_abs() as usize > r {
            return None;
        }
        idx = idx * side + (x + r as i64) as usize;
    }
    Some(idx)
}

impl Table {
    fn build(map: &WallSystemMap, basis: &HomologyBasis, query: usize, truncation: usize) -> Self {
        let rank = basis.rank();
        let cover = CoverBox::new(map, basis, truncation);
        let origin = vec![0i64; rank];
        let searches: Vec<Bfs> = (0..map.face_count())
            .map(|f| cover.bfs(cover.index(f, &origin).expect("origin is in the box")))
            .collect();
        let n = box_len(rank, query);
        let mut values = vec![None; n];
        let mut how = vec![Choice::Empty; n];
        for (i, (value, choice)) in values.iter_mut().zip(how.iter_mut()).enumerate() {
            let c = box_coords(rank, query, i);
            if c.iter().all(|&x| x == 0) {
                *value = Some(0);
                continue;
            }
            for (f, bfs) in searches.iter().enumerate() {
                let d = bfs.dist[cover.index(f, &c).expect("query box inside cover box")];
                if bfs.reached(cover.index(f, &c).unwrap()) && value.map_or(true, |v| u64::from(d) < v) {
                    *value = Some(u64::from(d));
                    *choice = Choice::Single(f);
                }
            }
        }
        let mut t = Table { cover, query, rank, searches, values, how };
        t.relax();
        t
    }

    fn relax(&mut self) {
        let n = self.values.len();
        let coords: Vec<Vec<i64>> = (0..n).map(|i| box_coords(self.rank, self.query, i)).collect();
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    let rest: Vec<i64> = coords[i].iter().zip(&coords[j]).map(|(a, b)| a - b).collect();
                    let Some(k) = box_index(self.query, &rest) else { continue };
                    if j == i || k == i {
                        continue;
                    }
                    let (Some(a), Some(b)) = (self.values[j], self.values[k]) else { continue };
                    if self.values[i].map_or(true, |v| a + b < v) {
                        self.values[i] = Some(a + b);
                        self.how[i] = Choice::Split(j);
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn certificate(&self, idx: usize) -> MultiCurveCertificate {
        let mut cycles = Vec::new();
        self.unroll(idx, &mut cycles);
        let total_length = cycles.iter().map(|c| c.length).sum();
        let total_class = HomologyCoords(box_coords(self.rank, self.query, idx));
        MultiCurveCertificate { cycles, total_length, total_class }
    }

    fn unroll(&self, idx: usize, out: &mut Vec<CertificateCycle>) {
        let c = box_coords(self.rank, self.query, idx);
        match self.how[idx] {
            Choice::Empty => {}
            Choice::Single(f) => {
                let walk = self.searches[f]
                    .path_to(self.cover.index(f, &c).expect("in box"))
                    .expect("reached");
                out.push(CertificateCycle { length: walk.len() as u64, walk, class: HomologyCoords(c) });
            }
            Choice::Split(j) => {
                let first = box_coords(self.rank, self.query, j);
                let rest: Vec<i64> = c.iter().zip(&first).map(|(a, b)| a - b).collect();
                self.unroll(j, out);
                self.unroll(box_index(self.query, &rest).expect("in box"), out);
            }
        }
    }
}

/// Builds the table at increasing truncation radii until it agrees with the
/// one at radius `H + 1` on every entry and `required` is finite.
fn stable_table(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    query: usize,
    required: Option<usize>,
    opts: OracleOptions,
) -> Result<Table> {
    let start = opts.radius.unwrap_or(query + basis.rank() + 2).max(query);
    let cap = opts.cap.unwrap_or(4 * start).max(start);
    let mut h = start;
    loop {
        let t = Table::build(map, basis, query, h);
        let next = Table::build(map, basis, query, h + 1);
        let finite = match required {
            Some(i) => t.values[i].is_some(),
            None => t.values.iter().all(Option::is_some),
        };
        if finite && t.values == next.values {
            return Ok(t);
        }
        if h >= cap {
            return Err(if finite {
                Error::UnstableTruncation { radius: h + 1 }
            } else {
                Error::BoxExceeded { radius: h }
            });
        }
        h = (2 * h).min(cap);
    }
}

/// Shortest closed dual walk of class exactly `a` that stays in the box of
/// radius `truncation`; ties go to the smallest starting face.
pub fn min_single_cycle(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    a: &HomologyCoords,
    truncation: usize,
) -> Result<(u64, DualWalk)> {
    if a.len() != basis.rank() {
        return Err(Error::DimensionMismatch { expected: basis.rank(), found: a.len() });
    }
    let cover = CoverBox::new(map, basis, truncation);
    if !cover.contains(&a.0) {
        return Err(Error::BoxExceeded { radius: truncation });
    }
    let origin = vec![0i64; basis.rank()];
    let mut best: Option<DualWalk> = None;
    for f in 0..map.face_count() {
        let bfs = cover.bfs(cover.index(f, &origin).expect("origin is in the box"));
        let target = cover.index(f, &a.0).expect("checked above");
        if a.is_zero() {
            continue;
        }
        if let Some(w) = bfs.path_to(target) {
            if best.as_ref().map_or(true, |b| w.len() < b.len()) {
                best = Some(w);
            }
        }
    }
    if a.is_zero() {
        return Ok((0, DualWalk::default()));
    }
    let w = best.ok_or(Error::BoxExceeded { radius: truncation })?;
    Ok((w.len() as u64, w))
}

/// `min |α ∩ γ|` over multicurves of class `a`, with a decomposition certificate.
pub fn min_multicurve(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    a: &HomologyCoords,
    opts: OracleOptions,
) -> Result<OracleValue> {
    if a.len() != basis.rank() {
        return Err(Error::DimensionMismatch { expected: basis.rank(), found: a.len() });
    }
    let query = a.max_abs() as usize;
    let idx = box_index(query, &a.0).expect("a is in its own box");
    let t = stable_table(map, basis, query, Some(idx), opts)?;
    Ok(OracleValue {
        value: t.values[idx].expect("stable table has the required entry"),
        certificate: t.certificate(idx),
        truncation: t.cover.radius(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub class: HomologyCoords,
    pub norm: i64,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub box_radius: usize,
    pub truncation: usize,
    pub checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares the oracle with the max formula on every class of the box.
pub fn verify_min_max(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    norm: &IntersectionNorm,
    box_radius: usize,
    opts: OracleOptions,
) -> Result<VerifyReport> {
    let rank = basis.rank();
    let t = stable_table(map, basis, box_radius, None, opts)?;
    let mut discrepancies = Vec::new();
    for (i, v) in t.values.iter().enumerate() {
        let class = HomologyCoords(box_coords(rank, box_radius, i));
        let oracle = v.expect("stable table is finite");
        let x = norm.norm(&class)?.value;
        if i64::try_from(oracle).ok() != Some(x) {
            discrepancies.push(Discrepancy { class, norm: x, oracle });
        }
    }
    Ok(VerifyReport { box_radius, truncation: t.cover.radius(), checked: t.values.len(), discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coorient::EnumLimits;
    use crate::fixtures::grid;
    use crate::homology::homology_basis;

    fn c(v: &[i64]) -> HomologyCoords {
        HomologyCoords(v.to_vec())
    }

    #[test]
    fn single_cycles_on_grids() {
        let g = grid(1, 1);
        let b = homology_basis(&g).unwrap();
        assert_eq!(min_single_cycle(&g, &b, &c(&[1, 0]), 3).unwrap().0, 1);
        let g = grid(2, 2);
        let b = homology_basis(&g).unwrap();
        assert_eq!(min_single_cycle(&g, &b, &c(&[1, 0]), 3).unwrap().0, 2);
        let (len, w) = min_single_cycle(&g, &b, &c(&[1, 1]), 3).unwrap();
        assert_eq!(len, 4);
        assert_eq!(b.class_of_walk(&g, &w).unwrap(), c(&[1, 1]));
        assert_eq!(min_single_cycle(&g, &b, &c(&[4, 0]), 3).unwrap_err().name(), "BoxExceeded");
    }

    #[test]
    fn multicurve_values() {
        let g = grid(2, 2);
        let b = homology_basis(&g).unwrap();
        let v = min_multicurve(&g, &b, &c(&[4, 1]), OracleOptions::default()).unwrap();
        assert_eq!(v.value, 10);
        assert!(v.certificate.verify(&g, &b));
        assert_eq!(v.certificate.total_class, c(&[4, 1]));
        let z = min_multicurve(&g, &b, &c(&[0, 0]), OracleOptions::default()).unwrap();
        assert_eq!(z.value, 0);
        assert!(z.certificate.cycles.is_empty());
    }

    #[test]
    fn small_torus_agrees_with_max() {
        let g = grid(1, 1);
        let b = homology_basis(&g).unwrap();
        let x = IntersectionNorm::compute(&g, &b, EnumLimits::UNLIMITED).unwrap();
        let r = verify_min_max(&g, &b, &x, 2, OracleOptions::default()).unwrap();
        assert_eq!(r.checked, 25);
        assert!(r.is_clean(), "{:?}", r.discrepancies);
    }

    #[test]
    fn symmetric_and_subadditive() {
        let g = grid(2, 3);
        let b = homology_basis(&g).unwrap();
        let val = |v: &[i64]| min_multicurve(&g, &b, &c(v), OracleOptions::default()).unwrap().value;
        assert_eq!(val(&[1, -1]), val(&[-1, 1]));
        assert!(val(&[2, 1]) <= val(&[1, 0]) + val(&[1, 1]));
        assert_eq!(val(&[2, 2]), 2 * val(&[1, 1]));
    }
}
