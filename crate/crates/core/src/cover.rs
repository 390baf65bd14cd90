//! The maximal abelian cover of the dual graph, truncated to a box.
//!
//! A state is a face together with a homology offset `h` with `‖h‖∞ ≤ H`.
//! Crossing link `e` forward moves `(right(e), h)` to `(left(e), h + w(e))`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::homology::HomologyBasis;
use crate::map::WallSystemMap;
use crate::walk::{Crossing, DualWalk};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverState {
    pub face: usize,
    pub h: Vec<i64>,
}

#[derive(Debug, Clone)]
struct Move {
    crossing: Crossing,
    to: usize,
    delta: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct CoverBox {
    faces: usize,
    rank: usize,
    radius: i64,
    side: usize,
    cells: usize,
    moves: Vec<Vec<Move>>,
}

pub const UNREACHED: u32 = u32::MAX;

/// Breadth-first search tree of one source.
#[derive(Debug, Clone)]
pub struct Bfs {
    pub source: usize,
    pub dist: Vec<u32>,
    parent: Vec<Option<(usize, Crossing)>>,
}

impl CoverBox {
    pub fn new(map: &WallSystemMap, basis: &HomologyBasis, radius: usize) -> Self {
        let rank = basis.rank();
        let side = 2 * radius + 1;
        let cells = side.pow(rank as u32);
        let mut moves: Vec<Vec<Move>> = vec![Vec::new(); map.face_count()];
        for e in 0..map.edge_count() {
            let w = basis.link_weights(e);
            let (r, l) = (map.right_face(e), map.left_face(e));
            moves[r].push(Move { crossing: Crossing::new(e, true), to: l, delta: w.clone() });
            moves[l].push(Move { crossing: Crossing::new(e, false), to: r, delta: w.iter().map(|x| -x).collect() });
        }
        CoverBox { faces: map.face_count(), rank, radius: radius as i64, side, cells, moves }
    }

    pub fn radius(&self) -> usize {
        self.radius as usize
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.faces * self.cells
    }

    pub fn contains(&self, h: &[i64]) -> bool {
        h.len() == self.rank && h.iter().all(|x| x.abs() <= self.radius)
    }

    pub fn index(&self, face: usize, h: &[i64]) -> Option<usize> {
        if face >= self.faces || !self.contains(h) {
            return None;
        }
        let mut cell = 0usize;
        for &x in h.iter().rev() {
            cell = cell * self.side + (x + self.radius) as usize;
        }
        Some(face * self.cells + cell)
    }

    pub fn state(&self, idx: usize) -> CoverState {
        let face = idx / self.cells;
        let mut cell = idx % self.cells;
        let mut h = Vec::with_capacity(self.rank);
        for _ in 0..self.rank {
            h.push((cell % self.side) as i64 - self.radius);
            cell /= self.side;
        }
        CoverState { face, h }
    }

    /// Neighbors of a state inside the box, with the crossing that reaches them.
    pub fn neighbors(&self, idx: usize) -> Vec<(Crossing, usize)> {
        let CoverState { face, h } = self.state(idx);
        let mut out = Vec::with_capacity(self.moves[face].len());
        let mut next = h.clone();
        for m in &self.moves[face] {
            for ((y, x), d) in next.iter_mut().zip(&h).zip(&m.delta) {
                *y = x + d;
            }
            if let Some(j) = self.index(m.to, &next) {
                out.push((m.crossing, j));
            }
        }
        out
    }

    pub fn bfs(&self, source: usize) -> Bfs {
        let n = self.state_count();
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for (c, v) in self.neighbors(u) {
                if dist[v] == UNREACHED {
                    dist[v] = dist[u] + 1;
                    parent[v] = Some((u, c));
                    queue.push_back(v);
                }
            }
        }
        Bfs { source, dist, parent }
    }
}

impl Bfs {
    pub fn reached(&self, target: usize) -> bool {
        self.dist[target] != UNREACHED
    }

    /// The tree path from the source to `target`.
    pub fn path_to(&self, target: usize) -> Option<DualWalk> {
        if !self.reached(target) {
            return None;
        }
        let mut steps = Vec::new();
        let mut v = target;
        while let Some((u, c)) = self.parent[v] {
            steps.push(c);
            v = u;
        }
        steps.reverse();
        Some(DualWalk::new(steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::grid;
    use crate::homology::homology_basis;

    #[test]
    fn index_round_trip() {
        let g = grid(2, 3);
        let b = homology_basis(&g).unwrap();
        let cb = CoverBox::new(&g, &b, 2);
        assert_eq!(cb.state_count(), 6 * 25);
        for i in 0..cb.state_count() {
            let s = cb.state(i);
            assert_eq!(cb.index(s.face, &s.h), Some(i));
        }
        assert_eq!(cb.index(0, &[3, 0]), None);
    }

    #[test]
    fn bfs_paths_have_their_class() {
        let g = grid(2, 2);
        let b = homology_basis(&g).unwrap();
        let cb = CoverBox::new(&g, &b, 3);
        let src = cb.index(0, &[0, 0]).unwrap();
        let t = cb.bfs(src);
        let target = cb.index(0, &[1, 1]).unwrap();
        assert_eq!(t.dist[target], 4);
        let w = t.path_to(target).unwrap();
        assert!(w.is_closed(&g));
        assert_eq!(b.class_of_walk(&g, &w).unwrap().0, vec![1, 1]);
        assert_eq!(t.dist[cb.index(0, &[1, 0]).unwrap()], 2);
    }
}
