//! First homology of the surface, computed on the dual cell structure.
//!
//! Dual 0-cells are faces, dual 1-cells are the links of the dual graph (one
//! per edge, directed right face → left face), dual 2-cells are the vertices of
//! the wall system. `H₁ = ker ∂₁ / im ∂₂` is computed on the fundamental cycles
//! of a spanning tree of the dual graph, then certified torsion-free of rank
//! `2g` by a Smith normal form. Basis cycles are chosen greedily among short
//! loops and paired with integer cocycles so that `wᵢ(bⱼ) = δᵢⱼ`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::map::{UnionFind, WallSystemMap};
use crate::snf::{self, IntMatrix};
use crate::walk::{Crossing, DualWalk};
use crate::{Error, Result};

/// Integer coordinates of a homology or cohomology class in the active basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomologyCoords(pub Vec<i64>);

impl HomologyCoords {
    pub fn zero(rank: usize) -> Self {
        HomologyCoords(vec![0; rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Self {
        HomologyCoords(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        HomologyCoords(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        HomologyCoords(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        HomologyCoords(self.0.iter().map(|x| k * x).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Reduction mod 2.
    pub fn parity(&self) -> ParityClass {
        ParityClass(self.0.iter().map(|x| x.rem_euclid(2) as u8).collect())
    }
}

impl From<Vec<i64>> for HomologyCoords {
    fn from(v: Vec<i64>) -> Self {
        HomologyCoords(v)
    }
}

impl fmt::Display for HomologyCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A vector over `Z/2`, e.g. `[γ]₂` evaluated on the basis cycles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParityClass(pub Vec<u8>);

impl ParityClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Cellular boundary maps of the dual complex, in row-vector convention:
/// `d1` has one row per link (entry `+1` at its left face, `−1` at its right
/// face) and `d2` one row per vertex (entry `κ(d)` summed over its darts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrices {
    pub d1: Vec<Vec<i64>>,
    pub d2: Vec<Vec<i64>>,
}

impl BoundaryMatrices {
    pub fn new(map: &WallSystemMap) -> Self {
        let mut d1 = vec![vec![0i64; map.face_count()]; map.edge_count()];
        for (e, row) in d1.iter_mut().enumerate() {
            row[map.left_face(e)] += 1;
            row[map.right_face(e)] -= 1;
        }
        let mut d2 = vec![vec![0i64; map.edge_count()]; map.vertex_count()];
        for (v, row) in d2.iter_mut().enumerate() {
            for &d in &map.rotations()[v] {
                row[map.edge_of(d)] += map.kappa(d);
            }
        }
        BoundaryMatrices { d1, d2 }
    }

    /// `d2 · d1`, which must vanish.
    pub fn composition(&self) -> Vec<Vec<i64>> {
        let faces = self.d1.first().map_or(0, Vec::len);
        self.d2
            .iter()
            .map(|row| {
                (0..faces).map(|f| row.iter().zip(&self.d1).map(|(x, r)| x * r[f]).sum()).collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisOrigin {
    Computed,
    User,
}

/// `2g` closed dual walks generating `H₁(Σ; Z)` and the dual integer cocycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis {
    pub cycles: Vec<DualWalk>,
    /// `cocycles[i][e]` is the weight of link `e` in `wᵢ`.
    pub cocycles: Vec<Vec<i64>>,
    pub origin: BasisOrigin,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Weights `(w₁(e), …, w_{2g}(e))` of one link.
    pub fn link_weights(&self, edge: usize) -> Vec<i64> {
        self.cocycles.iter().map(|w| w[edge]).collect()
    }

    /// Coordinates of a closed walk.
    pub fn class_of_walk(&self, map: &WallSystemMap, walk: &DualWalk) -> Result<HomologyCoords> {
        walk.check_closed(map)?;
        Ok(self.class_of_chain(walk))
    }

    /// Cocycle pairing without a closedness check.
    pub(crate) fn class_of_chain(&self, walk: &DualWalk) -> HomologyCoords {
        HomologyCoords(
            self.cocycles
                .iter()
                .map(|w| walk.steps.iter().map(|c| c.sign() * w[c.edge]).sum())
                .collect(),
        )
    }

    /// `[γ]₂`: crossing parity of each basis cycle.
    pub fn gamma_parity(&self) -> ParityClass {
        ParityClass(self.cycles.iter().map(|b| (b.len() % 2) as u8).collect())
    }

    /// `wᵢ(bⱼ)`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let classes: Vec<HomologyCoords> = self.cycles.iter().map(|b| self.class_of_chain(b)).collect();
        (0..self.rank()).map(|i| classes.iter().map(|c| c.0[i]).collect()).collect()
    }

    /// Column `j` holds the coordinates of `walks[j]` in this basis.
    pub fn change_of_basis(&self, map: &WallSystemMap, walks: &[DualWalk]) -> Result<Vec<Vec<i64>>> {
        let classes = walks.iter().map(|w| self.class_of_walk(map, w)).collect::<Result<Vec<_>>>()?;
        Ok((0..self.rank()).map(|i| classes.iter().map(|c| c.0[i]).collect()).collect())
    }
}

/// Deterministic homology basis of `H₁(Σ; Z)`.
pub fn homology_basis(map: &WallSystemMap) -> Result<HomologyBasis> {
    let group = HomologyGroup::new(map)?;
    let walks = group.short_basis_walks(map)?;
    group.basis_from_walks(map, walks, BasisOrigin::Computed)
}

/// Accepts `walks` as the active basis iff their classes form a unimodular
/// matrix; cocycles are recomputed to stay dual to them.
pub fn set_user_basis(map: &WallSystemMap, walks: Vec<DualWalk>) -> Result<HomologyBasis> {
    let group = HomologyGroup::new(map)?;
    for w in &walks {
        w.check_closed(map)?;
    }
    group.basis_from_walks(map, walks, BasisOrigin::User)
}

/// Torsion-free quotient `Z^N / im ∂₂` on the non-tree links of a spanning tree.
struct HomologyGroup {
    rank: usize,
    /// Reference cocycles read off the Smith form; zero on tree links.
    snf_cocycles: Vec<Vec<i64>>,
    /// Per reference generator, its coefficients on each edge (non-tree only).
    generators: Vec<Vec<BigInt>>,
    tree_parent: Vec<Option<Crossing>>,
}

impl HomologyGroup {
    fn new(map: &WallSystemMap) -> Result<Self> {
        let bm = BoundaryMatrices::new(map);
        if bm.composition().iter().flatten().any(|&x| x != 0) {
            return Err(Error::TorsionDetected { detail: "d2·d1 does not vanish".to_string() });
        }
        let edges = map.edge_count();
        let faces = map.face_count();

        // Greedy smallest-index spanning tree.
        let mut uf = UnionFind::new(faces);
        let mut in_tree = vec![false; edges];
        for e in 0..edges {
            in_tree[e] = uf.union(map.right_face(e), map.left_face(e));
        }
        let non_tree: Vec<usize> = (0..edges).filter(|&e| !in_tree[e]).collect();
        let mut position = vec![usize::MAX; edges];
        for (k, &e) in non_tree.iter().enumerate() {
            position[e] = k;
        }

        // A cycle is determined by its non-tree coefficients, so im ∂₂ in those
        // coordinates is ∂₂ restricted to non-tree columns.
        let n = non_tree.len();
        let v = map.vertex_count();
        let mut b: IntMatrix = snf::zero_matrix(n, v);
        for (vi, row) in bm.d2.iter().enumerate() {
            for &e in &non_tree {
                b[position[e]][vi] = BigInt::from(row[e]);
            }
        }
        let form = snf::smith_normal_form(&b, v);
        let r = form.rank();
        let rank = n - r;
        if !form.is_torsion_free() {
            return Err(Error::TorsionDetected { detail: format!("invariant factors {:?}", form.diagonal) });
        }
        if rank != 2 * map.genus() {
            return Err(Error::TorsionDetected { detail: format!("rank {rank}, genus {}", map.genus()) });
        }

        let mut snf_cocycles = vec![vec![0i64; edges]; rank];
        for (i, w) in snf_cocycles.iter_mut().enumerate() {
            for &e in &non_tree {
                w[e] = to_i64(&form.left[r + i][position[e]])?;
            }
        }
        let generators = (0..rank)
            .map(|i| {
                let mut coeffs = vec![BigInt::zero(); edges];
                for &e in &non_tree {
                    coeffs[e] = form.left_inv[position[e]][r + i].clone();
                }
                coeffs
            })
            .collect();

        // Root the tree at face 0.
        let mut tree_parent: Vec<Option<Crossing>> = vec![None; faces];
        let mut seen = vec![false; faces];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for e in (0..edges).filter(|&e| in_tree[e]) {
                for forward in [true, false] {
                    let c = Crossing::new(e, forward);
                    if c.from_face(map) == f && !seen[c.to_face(map)] {
                        let g = c.to_face(map);
                        seen[g] = true;
                        // step from g back toward the root
                        tree_parent[g] = Some(c.reversed());
                        queue.push_back(g);
                    }
                }
            }
        }
        Ok(HomologyGroup { rank, snf_cocycles, generators, tree_parent })
    }

    fn reference_class(&self, walk: &DualWalk) -> Vec<i64> {
        self.snf_cocycles
            .iter()
            .map(|w| walk.steps.iter().map(|c| c.sign() * w[c.edge]).sum())
            .collect()
    }

    /// Tree path from `f` down to the root face 0.
    fn path_to_root(&self, map: &WallSystemMap, mut f: usize) -> Vec<Crossing> {
        let mut path = Vec::new();
        while let Some(c) = self.tree_parent[f] {
            path.push(c);
            f = c.to_face(map);
        }
        path
    }

    /// Loop at face 0 through the non-tree link `e`, crossed forward.
    fn fundamental_loop(&self, map: &WallSystemMap, e: usize) -> DualWalk {
        let mut steps: Vec<Crossing> =
            self.path_to_root(map, map.right_face(e)).iter().rev().map(|c| c.reversed()).collect();
        steps.push(Crossing::new(e, true));
        steps.extend(self.path_to_root(map, map.left_face(e)));
        DualWalk::new(steps)
    }

    /// A closed walk at face 0 with the given reference coordinates.
    fn walk_for_class(&self, map: &WallSystemMap, class: &[BigInt]) -> Result<DualWalk> {
        let edges = map.edge_count();
        let mut steps = Vec::new();
        for e in 0..edges {
            let coeff: BigInt = self.generators.iter().zip(class).map(|(g, c)| &g[e] * c).sum();
            if coeff.is_zero() {
                continue;
            }
            let times = to_i64(&coeff)?;
            let lp = self.fundamental_loop(map, e);
            let lp = if times > 0 { lp } else { lp.reversed() };
            for _ in 0..times.unsigned_abs() {
                steps.extend_from_slice(&lp.steps);
            }
        }
        Ok(DualWalk::new(steps).reduced())
    }

    /// Greedy choice among shortest-path-tree loops of every face, keeping a
    /// candidate when it extends the accepted classes to a primitive family.
    fn short_basis_walks(&self, map: &WallSystemMap) -> Result<Vec<DualWalk>> {
        let mut candidates: Vec<(usize, Vec<usize>, usize, usize, DualWalk)> = Vec::new();
        for f in 0..map.face_count() {
            let (parent, used) = bfs_tree(map, f);
            let path_from = |g: usize| -> Vec<Crossing> {
                let mut p = Vec::new();
                let mut h = g;
                while let Some(c) = parent[h] {
                    p.push(c);
                    h = c.from_face(map);
                }
                p.reverse();
                p
            };
            for e in 0..map.edge_count() {
                if used[e] {
                    continue;
                }
                let mut steps = path_from(map.right_face(e));
                steps.push(Crossing::new(e, true));
                steps.extend(path_from(map.left_face(e)).iter().rev().map(|c| c.reversed()));
                let walk = DualWalk::new(steps);
                let mut support: Vec<usize> = walk.steps.iter().map(|c| c.edge).collect();
                support.sort_unstable();
                candidates.push((walk.len(), support, f, e, walk));
            }
        }
        candidates.sort_by(|a, b| (a.0, &a.1, a.2, a.3).cmp(&(b.0, &b.1, b.2, b.3)));

        let mut accepted: Vec<DualWalk> = Vec::new();
        let mut rows: IntMatrix = Vec::new();
        for (.., walk) in candidates {
            if accepted.len() == self.rank {
                break;
            }
            let class = self.reference_class(&walk);
            if class.iter().all(|&x| x == 0) {
                continue;
            }
            rows.push(class.iter().map(|&x| BigInt::from(x)).collect());
            if snf::is_primitive(&rows, self.rank) {
                accepted.push(walk);
            } else {
                rows.pop();
            }
        }
        if accepted.len() < self.rank {
            let rest = snf::complete_to_basis(&rows, self.rank).ok_or_else(|| Error::TorsionDetected {
                detail: "accepted loops are not primitive".to_string(),
            })?;
            for class in rest {
                accepted.push(self.walk_for_class(map, &class)?);
            }
        }
        accepted.sort_by_cached_key(|w| {
            let mut support: Vec<usize> = w.steps.iter().map(|c| c.edge).collect();
            support.sort_unstable();
            support
        });
        Ok(accepted)
    }

    fn basis_from_walks(&self, map: &WallSystemMap, walks: Vec<DualWalk>, origin: BasisOrigin) -> Result<HomologyBasis> {
        if walks.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: walks.len() });
        }
        // Column j = reference class of walk j.
        let mut m: IntMatrix = snf::zero_matrix(self.rank, self.rank);
        for (j, w) in walks.iter().enumerate() {
            for (i, x) in self.reference_class(w).into_iter().enumerate() {
                m[i][j] = BigInt::from(x);
            }
        }
        let inv = snf::unimodular_inverse(&m)
            .ok_or_else(|| Error::NotABasis { determinant: snf::determinant(&m).to_string() })?;
        let edges = map.edge_count();
        let mut cocycles = vec![vec![0i64; edges]; self.rank];
        for (i, w) in cocycles.iter_mut().enumerate() {
            for (e, slot) in w.iter_mut().enumerate() {
                let v: BigInt = (0..self.rank).map(|k| &inv[i][k] * self.snf_cocycles[k][e]).sum();
                *slot = to_i64(&v)?;
            }
        }
        let basis = HomologyBasis { cycles: walks, cocycles, origin };
        debug_assert!(basis
            .pairing_matrix()
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j))));
        Ok(basis)
    }
}

/// BFS tree from `root` over links in index order; returns for each face the
/// crossing entering it, and which edges are tree links.
fn bfs_tree(map: &WallSystemMap, root: usize) -> (Vec<Option<Crossing>>, Vec<bool>) {
    let faces = map.face_count();
    let mut adjacency: Vec<Vec<Crossing>> = vec![Vec::new(); faces];
    for e in 0..map.edge_count() {
        for forward in [true, false] {
            let c = Crossing::new(e, forward);
            adjacency[c.from_face(map)].push(c);
        }
    }
    let mut parent = vec![None; faces];
    let mut used = vec![false; map.edge_count()];
    let mut seen = vec![false; faces];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for &c in &adjacency[f] {
            let g = c.to_face(map);
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some(c);
                used[c.edge] = true;
                queue.push_back(g);
            }
        }
    }
    (parent, used)
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::ResourceLimit { what: "cocycle weight exceeds i64", limit: i64::MAX as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{grid, grid_standard_walks};

    #[test]
    fn boundary_composition_vanishes() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
            let bm = BoundaryMatrices::new(&grid(m, n));
            assert!(bm.composition().iter().flatten().all(|&x| x == 0));
        }
    }

    #[test]
    fn rank_is_twice_genus() {
        for (m, n) in [(1, 1), (2, 2), (1, 3), (3, 3)] {
            let g = grid(m, n);
            let b = homology_basis(&g).unwrap();
            assert_eq!(b.rank(), 2 * g.genus());
            assert_eq!(b.rank(), 2);
        }
    }

    #[test]
    fn computed_basis_of_grids_is_standard() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 2)] {
            let g = grid(m, n);
            let b = homology_basis(&g).unwrap();
            let std = grid_standard_walks(m, n);
            let change = b.change_of_basis(&g, &std).unwrap();
            assert_eq!(change, vec![vec![1, 0], vec![0, 1]], "G({m},{n})");
        }
    }

    #[test]
    fn pairing_is_identity() {
        let g = grid(2, 3);
        let b = homology_basis(&g).unwrap();
        assert_eq!(b.pairing_matrix(), vec![vec![1, 0], vec![0, 1]]);
        for (i, cycle) in b.cycles.iter().enumerate() {
            let mut unit = vec![0; 2];
            unit[i] = 1;
            assert_eq!(b.class_of_walk(&g, cycle).unwrap(), HomologyCoords(unit));
        }
        // additivity on concatenations at a common face
        let both = b.cycles[0].concat(&b.cycles[1]);
        if both.is_closed(&g) {
            assert_eq!(b.class_of_walk(&g, &both).unwrap(), HomologyCoords(vec![1, 1]));
        }
    }

    #[test]
    fn face_boundaries_are_null_homologous() {
        let g = grid(2, 3);
        let b = homology_basis(&g).unwrap();
        for v in 0..g.vertex_count() {
            let rot = g.rotations()[v];
            let steps = rot.iter().map(|&d| Crossing::new(g.edge_of(d), g.is_tail(d))).collect();
            let walk = DualWalk::new(steps);
            assert!(b.class_of_walk(&g, &walk).unwrap().is_zero());
        }
    }

    #[test]
    fn gamma_parity_of_grids() {
        let parity = |m, n| homology_basis(&grid(m, n)).unwrap().gamma_parity();
        assert_eq!(parity(1, 1), ParityClass(vec![1, 1]));
        assert_eq!(parity(2, 2), ParityClass(vec![0, 0]));
        assert_eq!(parity(2, 3), ParityClass(vec![1, 0]));
    }

    #[test]
    fn user_basis() {
        let g = grid(2, 2);
        let computed = homology_basis(&g).unwrap();
        let same = set_user_basis(&g, computed.cycles.clone()).unwrap();
        assert_eq!(same.cocycles, computed.cocycles);

        let std = grid_standard_walks(2, 2).to_vec();
        let user = set_user_basis(&g, std).unwrap();
        assert_eq!(user.origin, BasisOrigin::User);
        assert_eq!(user.pairing_matrix(), vec![vec![1, 0], vec![0, 1]]);

        let twice = vec![computed.cycles[0].clone(), computed.cycles[0].clone()];
        assert_eq!(set_user_basis(&g, twice).unwrap_err().name(), "NotABasis");
    }

    #[test]
    fn skewed_user_basis_transforms_coordinates() {
        let g = grid(2, 2);
        let [h, v] = grid_standard_walks(2, 2);
        // b1 = h, b2 = h + v (both based at cell (0,0))
        let basis = set_user_basis(&g, vec![h.clone(), h.concat(&v)]).unwrap();
        assert_eq!(basis.class_of_walk(&g, &v).unwrap(), HomologyCoords(vec![-1, 1]));
    }
}
