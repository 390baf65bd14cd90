//! Wall systems as 4-valent rotation systems.
//!
//! Darts are half-edges numbered `0..4V`. Each vertex lists its four darts in
//! counterclockwise order (the permutation `σ`), each edge pairs two darts (the
//! involution `α`) and designates the first one as its tail. Faces are the
//! orbits of `φ = σ∘α`; the face of the orbit containing `d` is the corner
//! between `σ⁻¹(d)` and `d`, i.e. the face on the left when arriving at the
//! vertex of `d` along `d`. With this convention the face on the right of an
//! edge (for its tail→head orientation) is the face of its tail dart and the
//! face on its left is the face of its head dart.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A half-edge: one end of an edge at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Boundary of a complementary disc, as a cyclic sequence of darts (one
/// `φ`-orbit, starting at its smallest dart).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Dart>,
}

/// One immersed circle of the wall system. `darts` alternates outgoing and
/// arriving darts along a straight-ahead traversal: `d₁, α(d₁), d₂, α(d₂), …`,
/// starting at the smallest dart of the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub darts: Vec<Dart>,
}

impl Curve {
    /// Number of edges of the wall graph traversed by this curve.
    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }
}

/// Dual link: the crossing of edge `edge`, directed from the face on its right
/// to the face on its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualLink {
    pub edge: usize,
    pub right: usize,
    pub left: usize,
}

/// Faces as nodes, edges of the wall system as links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: usize,
    pub links: Vec<DualLink>,
}

impl DualGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.links
            .iter()
            .map(|l| usize::from(l.right == node) + usize::from(l.left == node))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.nodes);
        for l in &self.links {
            uf.union(l.right, l.left);
        }
        uf.components() == 1
    }

    /// Colors nodes by parity of their distance from node 0, if that is a proper
    /// 2-coloring.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.nodes];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for l in &self.links {
            adj[l.right].push(l.left);
            adj[l.left].push(l.right);
        }
        let mut queue = alloc::collections::VecDeque::new();
        for start in 0..self.nodes {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }
}

/// A validated wall system filling a closed oriented surface of genus ≥ 1.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSystemMap {
    rotations: Vec<[Dart; 4]>,
    edges: Vec<(Dart, Dart)>,
    vertex_of: Vec<u32>,
    slot_of: Vec<u8>,
    edge_of: Vec<u32>,
    is_tail: Vec<bool>,
    faces: Vec<Face>,
    face_of: Vec<u32>,
}

impl WallSystemMap {
    /// Validates and builds a map from vertex rotations (counterclockwise dart
    /// quadruples) and `(tail, head)` edge pairs.
    pub fn new(rotations: Vec<Vec<u32>>, edges: Vec<(u32, u32)>) -> Result<Self> {
        if rotations.is_empty() {
            return Err(Error::NoVertices);
        }
        let mut quads = Vec::with_capacity(rotations.len());
        for (v, rot) in rotations.iter().enumerate() {
            let quad: [u32; 4] = rot
                .as_slice()
                .try_into()
                .map_err(|_| Error::BadDegree { vertex: v, found: rot.len() })?;
            quads.push(quad.map(Dart));
        }
        let darts = 4 * quads.len();
        check_partition(darts, quads.iter().flatten().copied(), "vertex rotations")?;
        check_partition(
            darts,
            edges.iter().flat_map(|&(t, h)| [Dart(t), Dart(h)]),
            "edge pairs",
        )?;

        let mut vertex_of = vec![0u32; darts];
        let mut slot_of = vec![0u8; darts];
        for (v, quad) in quads.iter().enumerate() {
            for (k, d) in quad.iter().enumerate() {
                vertex_of[d.index()] = v as u32;
                slot_of[d.index()] = k as u8;
            }
        }
        let mut edge_of = vec![0u32; darts];
        let mut is_tail = vec![false; darts];
        let edges: Vec<(Dart, Dart)> = edges.into_iter().map(|(t, h)| (Dart(t), Dart(h))).collect();
        for (e, &(t, h)) in edges.iter().enumerate() {
            edge_of[t.index()] = e as u32;
            edge_of[h.index()] = e as u32;
            is_tail[t.index()] = true;
        }

        let mut map = WallSystemMap {
            rotations: quads,
            edges,
            vertex_of,
            slot_of,
            edge_of,
            is_tail,
            faces: Vec::new(),
            face_of: Vec::new(),
        };
        let (faces, face_of) = map.face_orbits();
        map.faces = faces;
        map.face_of = face_of;

        let components = map.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        let chi = map.euler_characteristic();
        if chi > 0 || chi % 2 != 0 {
            return Err(Error::BadEuler { chi });
        }
        Ok(map)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn rotations(&self) -> &[[Dart; 4]] {
        &self.rotations
    }

    /// `(tail, head)` per edge.
    pub fn edges(&self) -> &[(Dart, Dart)] {
        &self.edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// `g = (2 − V + E − F) / 2`; always a positive integer for a validated map.
    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    /// Next dart counterclockwise around the same vertex.
    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        let i = d.index();
        self.rotations[self.vertex_of[i] as usize][(self.slot_of[i] as usize + 1) % 4]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let i = d.index();
        self.rotations[self.vertex_of[i] as usize][(self.slot_of[i] as usize + 3) % 4]
    }

    /// The other dart of the same edge.
    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        let (t, h) = self.edges[self.edge_of[d.index()] as usize];
        if t == d {
            h
        } else {
            t
        }
    }

    /// Face permutation `φ = σ∘α`.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    /// Straight-ahead continuation `σ²∘α` of an outgoing dart.
    #[inline]
    pub fn straight_ahead(&self, d: Dart) -> Dart {
        self.sigma(self.sigma(self.alpha(d)))
    }

    #[inline]
    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d.index()] as usize
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d.index()] as usize
    }

    #[inline]
    pub fn is_tail(&self, d: Dart) -> bool {
        self.is_tail[d.index()]
    }

    /// `+1` for tail darts, `−1` for head darts: the sign with which a
    /// counterclockwise loop around the vertex crosses the edge in its
    /// reference direction.
    #[inline]
    pub fn kappa(&self, d: Dart) -> i64 {
        if self.is_tail(d) {
            1
        } else {
            -1
        }
    }

    /// Face containing the corner between `σ⁻¹(d)` and `d`.
    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()] as usize
    }

    /// Face on the right of edge `e` for its tail→head orientation.
    #[inline]
    pub fn right_face(&self, e: usize) -> usize {
        self.face_of(self.edges[e].0)
    }

    /// Face on the left of edge `e` for its tail→head orientation.
    #[inline]
    pub fn left_face(&self, e: usize) -> usize {
        self.face_of(self.edges[e].1)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    fn face_orbits(&self) -> (Vec<Face>, Vec<u32>) {
        let n = self.dart_count();
        let mut face_of = vec![u32::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != u32::MAX {
                continue;
            }
            let id = faces.len() as u32;
            let mut boundary = Vec::new();
            let mut d = Dart(start as u32);
            loop {
                face_of[d.index()] = id;
                boundary.push(d);
                d = self.phi(d);
                if d.index() == start {
                    break;
                }
            }
            faces.push(Face { boundary });
        }
        (faces, face_of)
    }

    fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for &(t, h) in &self.edges {
            uf.union(self.vertex_of(t), self.vertex_of(h));
        }
        uf.components()
    }

    /// The immersed circles making up the wall system, each reported once.
    pub fn curves(&self) -> Vec<Curve> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut curves = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = Dart(start as u32);
            loop {
                let back = self.alpha(d);
                seen[d.index()] = true;
                seen[back.index()] = true;
                darts.push(d);
                darts.push(back);
                d = self.straight_ahead(d);
                if d.index() == start {
                    break;
                }
            }
            curves.push(Curve { darts });
        }
        curves
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph {
            nodes: self.face_count(),
            links: (0..self.edge_count())
                .map(|e| DualLink { edge: e, right: self.right_face(e), left: self.left_face(e) })
                .collect(),
        }
    }
}

fn check_partition(darts: usize, items: impl Iterator<Item = Dart>, part: &'static str) -> Result<()> {
    let mut count = vec![0usize; darts];
    for d in items {
        match count.get_mut(d.index()) {
            Some(c) => *c += 1,
            // Out-of-range ids never belong to a valid partition.
            None => return Err(Error::DartMultiplicity { dart: d.0, count: 0, part }),
        }
    }
    match count.iter().position(|&c| c != 1) {
        Some(d) => Err(Error::DartMultiplicity { dart: d as u32, count: count[d], part }),
        None => Ok(()),
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
