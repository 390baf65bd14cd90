//! Realizing a lattice point `n` of the dual ball as an Eulerian
//! coorientation: seed `f(base, h) = n·h` on the deck orbit of the base face,
//! take its highest eikonal extension on the truncated abelian cover, and read
//! the wall signs off the field.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::coorient::{find_with_class, is_eulerian, Coorientation, EnumLimits};
use crate::cover::{CoverBox, CoverState};
use crate::error::NotRealizableReason;
use crate::homology::{HomologyBasis, HomologyCoords};
use crate::map::WallSystemMap;
use crate::normball::{IntersectionNorm, Membership};
use crate::{Error, Result};

/// Face whose deck orbit carries the seed.
pub const BASE_FACE: usize = 0;

/// Largest cover the eikonal search is allowed to build.
const MAX_STATES: usize = 1 << 22;

pub fn seed_value(n: &HomologyCoords, h: &[i64]) -> i64 {
    n.dot(h)
}

/// `f_n` on every deck translate of the base face inside the box.
pub fn seed_values(n: &HomologyCoords, radius: usize) -> Vec<(HomologyCoords, i64)> {
    let side = 2 * radius + 1;
    let cells = side.pow(n.len() as u32);
    (0..cells)
        .map(|mut cell| {
            let h: Vec<i64> = (0..n.len())
                .map(|_| {
                    let x = (cell % side) as i64 - radius as i64;
                    cell /= side;
                    x
                })
                .collect();
            let v = seed_value(n, &h);
            (HomologyCoords(h), v)
        })
        .collect()
}

/// `f̄(x) = min_y f_n(y) + d(x, y)` on the truncated cover, `y` ranging over
/// the seeded states.
#[derive(Debug, Clone)]
pub struct EikonalField {
    pub n: HomologyCoords,
    cover: CoverBox,
    values: Vec<i64>,
}

pub fn extend_highest(map: &WallSystemMap, basis: &HomologyBasis, n: &HomologyCoords, radius: usize) -> EikonalField {
    let cover = CoverBox::new(map, basis, radius);
    let mut values = vec![i64::MAX; cover.state_count()];
    let mut heap = BinaryHeap::new();
    for (h, v) in seed_values(n, radius) {
        let i = cover.index(BASE_FACE, &h.0).expect("seed lies in the box");
        values[i] = v;
        heap.push(Reverse((v, i)));
    }
    while let Some(Reverse((v, u))) = heap.pop() {
        if v > values[u] {
            continue;
        }
        for (_, w) in cover.neighbors(u) {
            if v + 1 < values[w] {
                values[w] = v + 1;
                heap.push(Reverse((v + 1, w)));
            }
        }
    }
    EikonalField { n: n.clone(), cover, values }
}

impl EikonalField {
    pub fn radius(&self) -> usize {
        self.cover.radius()
    }

    pub fn value(&self, face: usize, h: &[i64]) -> Option<i64> {
        self.cover.index(face, h).map(|i| self.values[i])
    }

    fn safe(&self, idx: usize, safe: usize) -> bool {
        self.cover.state(idx).h.iter().all(|x| x.unsigned_abs() as usize <= safe)
    }

    /// Adjacent pairs inside the region `‖h‖∞ ≤ safe` whose values do not
    /// differ by exactly one.
    pub fn eikonal_violations(&self, safe: usize) -> Vec<(CoverState, CoverState)> {
        let mut out = Vec::new();
        for u in 0..self.values.len() {
            if !self.safe(u, safe) {
                continue;
            }
            for (_, w) in self.cover.neighbors(u) {
                if u < w && self.safe(w, safe) && (self.values[u] - self.values[w]).abs() != 1 {
                    out.push((self.cover.state(u), self.cover.state(w)));
                }
            }
        }
        out
    }

    /// Pairs `(face, h)`, `(face, h + u)` inside the region `‖h‖∞ ≤ safe` with
    /// `f(face, h + u) ≠ f(face, h) + n·u`.
    pub fn equivariance_violations(&self, safe: usize) -> Vec<(CoverState, CoverState)> {
        let inside: Vec<usize> = (0..self.values.len()).filter(|&i| self.safe(i, safe)).collect();
        let mut out = Vec::new();
        for &a in &inside {
            let sa = self.cover.state(a);
            for &b in &inside {
                let sb = self.cover.state(b);
                if sa.face != sb.face || a >= b {
                    continue;
                }
                let u: Vec<i64> = sb.h.iter().zip(&sa.h).map(|(x, y)| x - y).collect();
                if self.values[b] != self.values[a] + self.n.dot(&u) {
                    out.push((sa.clone(), sb));
                }
            }
        }
        out
    }

    /// `s(e) = f̄(left(e), w(e)) − f̄(right(e), 0)`, or `None` if some wall does
    /// not see a unit step.
    pub fn read_off(&self, map: &WallSystemMap, basis: &HomologyBasis) -> Option<Coorientation> {
        let origin = vec![0i64; basis.rank()];
        let mut signs = Vec::with_capacity(map.edge_count());
        for e in 0..map.edge_count() {
            let from = self.value(map.right_face(e), &origin)?;
            let to = self.value(map.left_face(e), &basis.link_weights(e))?;
            match to - from {
                1 => signs.push(1),
                -1 => signs.push(-1),
                _ => return None,
            }
        }
        Some(Coorientation::new(signs))
    }

    /// Whether every lift of every wall inside the region `‖h‖∞ ≤ safe` reads
    /// off the same sign as `coor`.
    pub fn descends_to(&self, map: &WallSystemMap, basis: &HomologyBasis, coor: &Coorientation, safe: usize) -> bool {
        for i in 0..self.values.len() {
            if !self.safe(i, safe) {
                continue;
            }
            let s = self.cover.state(i);
            for e in 0..map.edge_count() {
                if map.right_face(e) != s.face {
                    continue;
                }
                let h2: Vec<i64> = s.h.iter().zip(basis.link_weights(e)).map(|(x, w)| x + w).collect();
                if !h2.iter().all(|x| x.unsigned_abs() as usize <= safe) {
                    continue;
                }
                match self.value(map.left_face(e), &h2) {
                    Some(v) if v - self.values[i] == coor.sign(e) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RealizeMethod {
    Eikonal,
    Lookup,
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizedBy {
    Eikonal,
    EnumerationFallback,
}

impl RealizedBy {
    pub fn as_str(self) -> &'static str {
        match self {
            RealizedBy::Eikonal => "eikonal",
            RealizedBy::EnumerationFallback => "enumeration-fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationResult {
    pub coorientation: Coorientation,
    pub target: HomologyCoords,
    pub method: RealizedBy,
    /// Radius at which the eikonal read-off was accepted.
    pub radius: Option<usize>,
}

/// `start_radius` defaults to `‖n‖∞ + 2`; the interior cap to four times
/// that, and boundary targets get four times the interior cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    pub method: RealizeMethod,
    pub start_radius: Option<usize>,
    pub cap: Option<usize>,
    pub limits: EnumLimits,
}

fn verified(map: &WallSystemMap, basis: &HomologyBasis, coor: &Coorientation, n: &HomologyCoords) -> bool {
    is_eulerian(map, coor) && coor.class_of(map, basis).as_ref() == Ok(n)
}

/// Radius-doubling eikonal attempt up to `cap`. Accepts once two consecutive
/// radii read off the same signs and those pass verification.
fn eikonal_attempt(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    n: &HomologyCoords,
    start: usize,
    cap: usize,
    prev: &mut Option<(usize, Option<Coorientation>)>,
) -> Option<(Coorientation, usize)> {
    let mut r = match prev {
        Some((r, _)) => 2 * *r,
        None => start,
    };
    while r <= cap {
        let states = map.face_count().saturating_mul((2 * r + 1).saturating_pow(basis.rank() as u32));
        if states > MAX_STATES {
            return None;
        }
        let signs = extend_highest(map, basis, n, r).read_off(map, basis);
        if let (Some((_, Some(old))), Some(new)) = (prev.as_ref(), signs.as_ref()) {
            if old == new && verified(map, basis, new, n) {
                return Some((new.clone(), r));
            }
        }
        *prev = Some((r, signs));
        r *= 2;
    }
    None
}

/// An Eulerian coorientation of class `n`, or the reason none exists.
pub fn realize(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    n: &HomologyCoords,
    opts: RealizeOptions,
) -> Result<RealizationResult> {
    if n.len() != basis.rank() {
        return Err(Error::DimensionMismatch { expected: basis.rank(), found: n.len() });
    }
    if n.parity() != basis.gamma_parity() {
        return Err(Error::NotRealizable { reason: NotRealizableReason::Parity });
    }
    let start = opts.start_radius.unwrap_or(n.max_abs() as usize + 2).max(1);
    let cap = opts.cap.unwrap_or(4 * start).max(start);
    let mut prev = None;
    if opts.method != RealizeMethod::Lookup {
        if let Some((coor, r)) = eikonal_attempt(map, basis, n, start, cap, &mut prev) {
            return Ok(RealizationResult { coorientation: coor, target: n.clone(), method: RealizedBy::Eikonal, radius: Some(r) });
        }
    }
    let norm = IntersectionNorm::compute(map, basis, opts.limits)?;
    let ball = norm.dual_ball();
    let membership = if ball.dim < ball.rank {
        let ext: Vec<&HomologyCoords> = ball.extreme.iter().collect();
        if crate::normball::in_hull(&ext, n) { Membership::Boundary } else { Membership::Outside }
    } else {
        ball.contains(n)?
    };
    if membership == Membership::Outside {
        return Err(Error::NotRealizable { reason: NotRealizableReason::OutsideBall });
    }
    if opts.method != RealizeMethod::Lookup && membership == Membership::Boundary {
        if let Some((coor, r)) = eikonal_attempt(map, basis, n, start, 4 * cap, &mut prev) {
            return Ok(RealizationResult { coorientation: coor, target: n.clone(), method: RealizedBy::Eikonal, radius: Some(r) });
        }
    }
    if opts.method == RealizeMethod::Eikonal {
        return Err(Error::NotRealizable { reason: NotRealizableReason::EikonalFailed });
    }
    match find_with_class(map, basis, n, opts.limits)? {
        Some(coor) => Ok(RealizationResult {
            coorientation: coor,
            target: n.clone(),
            method: RealizedBy::EnumerationFallback,
            radius: None,
        }),
        None => Err(Error::NotRealizable { reason: NotRealizableReason::OutsideBall }),
    }
}
