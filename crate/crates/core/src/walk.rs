//! Walks in the dual graph, i.e. curves transverse to the wall system recorded
//! by the sequence of walls they cross.

use alloc::vec::Vec;
use core::fmt;

use crate::map::WallSystemMap;
use crate::{Error, Result};

/// Crossing of one edge. `forward` means right face → left face for the
/// edge's tail→head orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub edge: usize,
    pub forward: bool,
}

impl Crossing {
    pub fn new(edge: usize, forward: bool) -> Self {
        Crossing { edge, forward }
    }

    #[inline]
    pub fn sign(self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn reversed(self) -> Self {
        Crossing { edge: self.edge, forward: !self.forward }
    }

    pub fn from_face(self, map: &WallSystemMap) -> usize {
        if self.forward {
            map.right_face(self.edge)
        } else {
            map.left_face(self.edge)
        }
    }

    pub fn to_face(self, map: &WallSystemMap) -> usize {
        if self.forward {
            map.left_face(self.edge)
        } else {
            map.right_face(self.edge)
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, if self.forward { '+' } else { '-' })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualWalk {
    pub steps: Vec<Crossing>,
}

impl DualWalk {
    pub fn new(steps: Vec<Crossing>) -> Self {
        DualWalk { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> DualWalk {
        DualWalk { steps: self.steps.iter().rev().map(|c| c.reversed()).collect() }
    }

    pub fn concat(&self, other: &DualWalk) -> DualWalk {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DualWalk { steps }
    }

    /// Cyclic rotation starting at step `k`.
    pub fn rotated(&self, k: usize) -> DualWalk {
        if self.steps.is_empty() {
            return self.clone();
        }
        let k = k % self.steps.len();
        let mut steps = self.steps[k..].to_vec();
        steps.extend_from_slice(&self.steps[..k]);
        DualWalk { steps }
    }

    /// Cancels consecutive back-and-forth crossings of the same wall, cyclically.
    pub fn reduced(&self) -> DualWalk {
        let mut out: Vec<Crossing> = Vec::with_capacity(self.steps.len());
        for &c in &self.steps {
            if out.last() == Some(&c.reversed()) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        let (mut lo, mut hi) = (0, out.len());
        while hi - lo >= 2 && out[lo] == out[hi - 1].reversed() {
            lo += 1;
            hi -= 1;
        }
        DualWalk { steps: out[lo..hi].to_vec() }
    }

    pub fn check_edges(&self, map: &WallSystemMap) -> Result<()> {
        match self.steps.iter().find(|c| c.edge >= map.edge_count()) {
            Some(c) => Err(Error::UnknownEdge { edge: c.edge, edges: map.edge_count() }),
            None => Ok(()),
        }
    }

    /// Fails with [`Error::OpenWalk`] at the first step whose start face is
    /// not the end face of the previous step (cyclically).
    pub fn check_closed(&self, map: &WallSystemMap) -> Result<()> {
        self.check_edges(map)?;
        let n = self.steps.len();
        for k in 0..n {
            let next = (k + 1) % n;
            if self.steps[k].to_face(map) != self.steps[next].from_face(map) {
                return Err(Error::OpenWalk { step: next });
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, map: &WallSystemMap) -> bool {
        self.check_closed(map).is_ok()
    }

    /// Net crossing count per edge (forward minus backward).
    pub fn chain(&self, edges: usize) -> Vec<i64> {
        let mut chain = alloc::vec![0i64; edges];
        for c in &self.steps {
            chain[c.edge] += c.sign();
        }
        chain
    }
}

impl fmt::Display for DualWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{grid, grid_standard_walks};
    use alloc::vec;

    #[test]
    fn standard_grid_walks_are_closed() {
        for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 1)] {
            let g = grid(m, n);
            for w in grid_standard_walks(m, n) {
                w.check_closed(&g).unwrap();
                w.reversed().check_closed(&g).unwrap();
            }
        }
    }

    #[test]
    fn open_walk_detected() {
        let g = grid(2, 2);
        let [h, _] = grid_standard_walks(2, 2);
        let open = DualWalk::new(h.steps[..1].to_vec());
        assert!(matches!(open.check_closed(&g), Err(Error::OpenWalk { .. })));
        assert!(DualWalk::default().is_closed(&g));
        let bad = DualWalk::new(vec![Crossing::new(99, true)]);
        assert_eq!(bad.check_closed(&g).unwrap_err().name(), "UnknownEdge");
    }

    #[test]
    fn reduction_cancels_backtracks() {
        let a = Crossing::new(0, true);
        let b = Crossing::new(1, true);
        let w = DualWalk::new(vec![b.reversed(), a, b, b.reversed(), a.reversed(), b]);
        assert!(w.reduced().is_empty());
        let w = DualWalk::new(vec![a, b, b.reversed(), a]);
        assert_eq!(w.reduced().steps, vec![a, a]);
    }
}
