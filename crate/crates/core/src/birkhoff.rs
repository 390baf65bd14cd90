//! Lattice points of the dual ball congruent to `[γ]₂` and the surfaces they
//! stand for: interior points are negative Birkhoff cross sections bounded by
//! the lift of `γ` to the unit tangent bundle, boundary points are transverse
//! surfaces that are not sections.

use alloc::vec::Vec;

use crate::homology::{HomologyBasis, HomologyCoords, ParityClass};
use crate::map::WallSystemMap;
use crate::normball::{DualBall, Membership};
use crate::Result;

/// Topology of the surface attached to any Eulerian coorientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionInvariants {
    pub euler_characteristic: i64,
    pub boundary_circles: i64,
    pub genus: i64,
}

impl SectionInvariants {
    /// From the number of double points and of curves.
    pub fn from_counts(vertices: usize, curves: usize) -> Self {
        let chi = -2 * vertices as i64;
        let boundary = 2 * curves as i64;
        SectionInvariants { euler_characteristic: chi, boundary_circles: boundary, genus: (2 - chi - boundary) / 2 }
    }
}

pub fn section_invariants(map: &WallSystemMap) -> SectionInvariants {
    SectionInvariants::from_counts(map.vertex_count(), map.curves().len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionClass {
    pub point: HomologyCoords,
    pub status: Membership,
    pub invariants: SectionInvariants,
}

impl SectionClass {
    pub fn is_section(&self) -> bool {
        self.status == Membership::Interior
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub parity: ParityClass,
    pub extreme: Vec<HomologyCoords>,
    pub points: Vec<SectionClass>,
    pub interior: usize,
    pub boundary: usize,
    pub outside: usize,
}

impl ClassificationReport {
    pub fn section_exists(&self) -> bool {
        self.interior > 0
    }

    /// Classified points inside the closed ball.
    pub fn in_ball(&self) -> impl Iterator<Item = &SectionClass> {
        self.points.iter().filter(|p| p.status != Membership::Outside)
    }
}

/// Classifies every congruent lattice point of the bounding box of `ball`.
pub fn classify(map: &WallSystemMap, basis: &HomologyBasis, ball: &DualBall) -> Result<ClassificationReport> {
    let parity = basis.gamma_parity();
    let invariants = section_invariants(map);
    let (lo, hi) = ball.bounding_box();
    let mut points = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        let p = HomologyCoords(cur.clone());
        if p.parity() == parity {
            let status = ball.contains(&p)?;
            points.push(SectionClass { point: p, status, invariants });
        }
        for i in 0..cur.len() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = lo[i];
        }
        break;
    }
    points.sort_by(|a, b| a.point.cmp(&b.point));
    let count = |m| points.iter().filter(|p| p.status == m).count();
    let (interior, boundary, outside) =
        (count(Membership::Interior), count(Membership::Boundary), count(Membership::Outside));
    Ok(ClassificationReport { parity, extreme: ball.extreme.clone(), points, interior, boundary, outside })
}
