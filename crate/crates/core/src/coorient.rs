//! Coorientations of the wall system and the Eulerian condition.
//!
//! A coorientation stores one sign per edge: `+1` when its crossing direction
//! is the reference one (right face → left face for the edge's tail→head
//! orientation), `−1` otherwise. It is Eulerian when at every vertex the
//! counterclockwise loop around it has zero signed crossing count, i.e.
//! `Σ κ(d)·s(e(d)) = 0` over the four darts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::homology::{HomologyBasis, HomologyCoords};
use crate::map::WallSystemMap;
use crate::walk::DualWalk;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coorientation {
    signs: Vec<i8>,
}

impl Coorientation {
    /// Panics on entries other than ±1.
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "coorientation signs must be ±1");
        Coorientation { signs }
    }

    pub fn reference(edges: usize) -> Self {
        Coorientation { signs: vec![1; edges] }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    #[inline]
    pub fn sign(&self, edge: usize) -> i64 {
        i64::from(self.signs[edge])
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The opposite coorientation `−ν`.
    pub fn reversed(&self) -> Self {
        Coorientation { signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Signed crossing count with a closed dual walk.
    pub fn evaluate(&self, map: &WallSystemMap, walk: &DualWalk) -> Result<i64> {
        walk.check_closed(map)?;
        Ok(self.evaluate_unchecked(walk))
    }

    pub(crate) fn evaluate_unchecked(&self, walk: &DualWalk) -> i64 {
        walk.steps.iter().map(|c| c.sign() * self.sign(c.edge)).sum()
    }

    /// Cohomology class `(ν(b₁), …, ν(b_{2g}))`.
    pub fn class_of(&self, map: &WallSystemMap, basis: &HomologyBasis) -> Result<HomologyCoords> {
        if let Some(vertex) = first_unbalanced(map, self) {
            return Err(Error::NotEulerian { vertex });
        }
        Ok(self.class_unchecked(basis))
    }

    pub(crate) fn class_unchecked(&self, basis: &HomologyBasis) -> HomologyCoords {
        HomologyCoords(basis.cycles.iter().map(|b| self.evaluate_unchecked(b)).collect())
    }
}

impl fmt::Display for Coorientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `Σ κ(d)·s(e(d))` around vertex `v`.
pub fn vertex_balance(map: &WallSystemMap, coor: &Coorientation, v: usize) -> i64 {
    map.rotations()[v].iter().map(|&d| map.kappa(d) * coor.sign(map.edge_of(d))).sum()
}

fn first_unbalanced(map: &WallSystemMap, coor: &Coorientation) -> Option<usize> {
    (0..map.vertex_count()).find(|&v| vertex_balance(map, coor, v) != 0)
}

pub fn is_eulerian(map: &WallSystemMap, coor: &Coorientation) -> bool {
    coor.len() == map.edge_count() && first_unbalanced(map, coor).is_none()
}

/// Local type of an Eulerian coorientation at a double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexType {
    /// Coorientation flips when travelling straight through the vertex.
    Alternating,
    /// Coorientation is unchanged along both strands.
    Transparent,
}

/// `None` at unbalanced vertices.
pub fn vertex_type(map: &WallSystemMap, coor: &Coorientation, v: usize) -> Option<VertexType> {
    let c: Vec<i64> = map.rotations()[v].iter().map(|&d| map.kappa(d) * coor.sign(map.edge_of(d))).collect();
    if c.iter().sum::<i64>() != 0 {
        return None;
    }
    // Opposite darts lie on the same strand.
    if c[0] == c[2] && c[1] == c[3] {
        Some(VertexType::Alternating)
    } else if c[0] == -c[2] && c[1] == -c[3] {
        Some(VertexType::Transparent)
    } else {
        None
    }
}

/// Caps for exhaustive enumeration. Exceeding one is an error, never a
/// silently truncated result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_count: Option<u64>,
    pub max_nodes: Option<u64>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_count: Some(10_000_000), max_nodes: None }
    }
}

impl EnumLimits {
    pub const UNLIMITED: EnumLimits = EnumLimits { max_count: None, max_nodes: None };
}

/// How an enumeration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Walked {
    Complete(u64),
    /// The visitor asked to stop after this many items.
    Stopped(u64),
}

struct Search<'a, F> {
    map: &'a WallSystemMap,
    ends: Vec<(usize, usize)>,
    sum: Vec<i64>,
    remaining: Vec<i64>,
    signs: Vec<i8>,
    count: u64,
    nodes: u64,
    limits: EnumLimits,
    visit: F,
}

impl<F: FnMut(&Coorientation) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, e: usize) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.nodes > max {
                return Err(Error::ResourceLimit { what: "enumeration search nodes", limit: max });
            }
        }
        if e == self.map.edge_count() {
            if self.sum.iter().any(|&s| s != 0) {
                return Ok(ControlFlow::Continue(()));
            }
            self.count += 1;
            if let Some(max) = self.limits.max_count {
                if self.count > max {
                    return Err(Error::ResourceLimit { what: "Eulerian coorientation count", limit: max });
                }
            }
            let coor = Coorientation { signs: self.signs.clone() };
            return Ok((self.visit)(&coor));
        }
        let (vt, vh) = self.ends[e];
        self.remaining[vt] -= 1;
        self.remaining[vh] -= 1;
        for s in [1i8, -1] {
            self.signs[e] = s;
            self.sum[vt] += i64::from(s);
            self.sum[vh] -= i64::from(s);
            let feasible = self.sum[vt].abs() <= self.remaining[vt] && self.sum[vh].abs() <= self.remaining[vh];
            let flow = if feasible { self.run(e + 1)? } else { ControlFlow::Continue(()) };
            self.sum[vt] -= i64::from(s);
            self.sum[vh] += i64::from(s);
            if flow.is_break() {
                self.remaining[vt] += 1;
                self.remaining[vh] += 1;
                return Ok(flow);
            }
        }
        self.remaining[vt] += 1;
        self.remaining[vh] += 1;
        Ok(ControlFlow::Continue(()))
    }
}

/// Streams every Eulerian coorientation in lexicographic order of edge index,
/// `+` before `−`.
pub fn for_each_eulerian<F>(map: &WallSystemMap, limits: EnumLimits, visit: F) -> Result<Walked>
where
    F: FnMut(&Coorientation) -> ControlFlow<()>,
{
    let ends = map.edges().iter().map(|&(t, h)| (map.vertex_of(t), map.vertex_of(h))).collect();
    let mut search = Search {
        map,
        ends,
        sum: vec![0; map.vertex_count()],
        remaining: vec![4; map.vertex_count()],
        signs: vec![1; map.edge_count()],
        count: 0,
        nodes: 0,
        limits,
        visit,
    };
    Ok(match search.run(0)? {
        ControlFlow::Continue(()) => Walked::Complete(search.count),
        ControlFlow::Break(()) => Walked::Stopped(search.count),
    })
}

/// All Eulerian coorientations and the multiset of their classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianSet {
    pub count: u64,
    pub items: Option<Vec<Coorientation>>,
    pub classes: BTreeMap<HomologyCoords, u64>,
}

impl EulerianSet {
    pub fn distinct_classes(&self) -> impl Iterator<Item = &HomologyCoords> {
        self.classes.keys()
    }
}

pub fn enumerate_eulerian(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    limits: EnumLimits,
    keep_items: bool,
) -> Result<EulerianSet> {
    let mut items = keep_items.then(Vec::new);
    let mut classes = BTreeMap::new();
    let walked = for_each_eulerian(map, limits, |coor| {
        *classes.entry(coor.class_unchecked(basis)).or_insert(0) += 1;
        if let Some(items) = items.as_mut() {
            items.push(coor.clone());
        }
        ControlFlow::Continue(())
    })?;
    let count = match walked {
        Walked::Complete(n) | Walked::Stopped(n) => n,
    };
    Ok(EulerianSet { count, items, classes })
}

/// First Eulerian coorientation (in enumeration order) of class `target`.
pub fn find_with_class(
    map: &WallSystemMap,
    basis: &HomologyBasis,
    target: &HomologyCoords,
    limits: EnumLimits,
) -> Result<Option<Coorientation>> {
    let mut found = None;
    for_each_eulerian(map, limits, |coor| {
        if &coor.class_unchecked(basis) == target {
            found = Some(coor.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Two-color the faces by parity of dual distance from face 0 and coorient
/// every edge toward the face of color 0.
pub fn checkerboard_coorientation(map: &WallSystemMap) -> Result<Coorientation> {
    let color = map.dual_graph().two_coloring().ok_or(Error::NotBipartite)?;
    let signs = (0..map.edge_count()).map(|e| if !color[map.left_face(e)] { 1 } else { -1 }).collect();
    Ok(Coorientation { signs })
}

/// The `2^c` coorientations that are constant along each curve, i.e.
/// transparent at every vertex. Bit `k` of the index set means curve `k` is
/// cooriented to the right of its canonical traversal instead of the left.
pub fn brunella_coorientations(map: &WallSystemMap) -> Result<Vec<Coorientation>> {
    let curves = map.curves();
    if curves.len() > 20 {
        return Err(Error::ResourceLimit { what: "Brunella coorientations (2^curves)", limit: 1 << 20 });
    }
    let mut base = vec![0i8; map.edge_count()];
    let mut curve_of = vec![0usize; map.edge_count()];
    for (k, curve) in curves.iter().enumerate() {
        for pair in curve.darts.chunks(2) {
            let out = pair[0];
            let e = map.edge_of(out);
            base[e] = map.kappa(out) as i8;
            curve_of[e] = k;
        }
    }
    Ok((0..1u64 << curves.len())
        .map(|mask| {
            let signs = base
                .iter()
                .zip(&curve_of)
                .map(|(&s, &k)| if mask >> k & 1 == 1 { -s } else { s })
                .collect();
            Coorientation { signs }
        })
        .collect())
}
