//! Grid wall systems `G(m, n)` on the torus: `m` horizontal and `n` vertical
//! circles, meeting in `mn` double points.
//!
//! Vertex `(i, j)` (column `i < n`, row `j < m`) has index `j·n + i` and darts
//! `4v + {0, 1, 2, 3}` pointing east, north, west, south. Edge `2v` is the
//! vertical edge from `(i, j+1)` down to `(i, j)` and edge `2v + 1` the
//! horizontal edge from `(i, j)` east to `(i+1, j)`. With these orientations a
//! west→east crossing of a vertical edge and a south→north crossing of a
//! horizontal edge are both forward crossings.

use alloc::vec::Vec;

use crate::map::WallSystemMap;
use crate::walk::{Crossing, DualWalk};

/// Panics if `m` or `n` is zero.
pub fn grid(m: usize, n: usize) -> WallSystemMap {
    let (rotations, edges) = grid_parts(m, n);
    WallSystemMap::new(rotations, edges).expect("grid fixtures are valid wall systems")
}

/// Raw rotation and edge lists of `G(m, n)`.
pub fn grid_parts(m: usize, n: usize) -> (Vec<Vec<u32>>, Vec<(u32, u32)>) {
    assert!(m >= 1 && n >= 1, "grid needs m, n >= 1");
    let v = |i: usize, j: usize| ((j % m) * n + (i % n)) as u32;
    let mut rotations = Vec::with_capacity(m * n);
    let mut edges = Vec::with_capacity(2 * m * n);
    for j in 0..m {
        for i in 0..n {
            let base = 4 * v(i, j);
            rotations.push(alloc::vec![base, base + 1, base + 2, base + 3]);
            // vertical: tail = south dart of (i, j+1), head = north dart of (i, j)
            edges.push((4 * v(i, j + 1) + 3, base + 1));
            // horizontal: tail = east dart of (i, j), head = west dart of (i+1, j)
            edges.push((base, 4 * v(i + 1, j) + 2));
        }
    }
    (rotations, edges)
}

/// The horizontal and vertical dual cycles through cell `(0, 0)`, crossing the
/// `n` vertical and the `m` horizontal circles once each, all forward.
pub fn grid_standard_walks(m: usize, n: usize) -> [DualWalk; 2] {
    let v = |i: usize, j: usize| (j % m) * n + (i % n);
    let horizontal = (1..=n).map(|i| Crossing::new(2 * v(i, 0), true)).collect();
    let vertical = (1..=m).map(|j| Crossing::new(2 * v(0, j) + 1, true)).collect();
    [DualWalk::new(horizontal), DualWalk::new(vertical)]
}

/// A random rotation system on `vertices` vertices: the rotation at `v` is
/// `4v, …, 4v+3` and the darts are matched into edges by `pick(k)`, which must
/// return a value in `0..k`. The result may be invalid (e.g. spherical), so
/// callers typically retry.
pub fn random_map<P: FnMut(usize) -> usize>(vertices: usize, mut pick: P) -> crate::Result<WallSystemMap> {
    let rotations = (0..vertices as u32).map(|v| (4 * v..4 * v + 4).collect()).collect();
    let mut free: Vec<u32> = (0..4 * vertices as u32).collect();
    let mut edges = Vec::with_capacity(2 * vertices);
    while !free.is_empty() {
        let a = free.remove(0);
        let b = free.remove(pick(free.len()));
        edges.push(if pick(2) == 0 { (a, b) } else { (b, a) });
    }
    WallSystemMap::new(rotations, edges)
}

/// The small loop around the vertex of `d`, counterclockwise, starting and
/// ending in the face just before `d`. It bounds the vertex's dual cell.
pub fn vertex_loop(map: &WallSystemMap, d: crate::map::Dart) -> DualWalk {
    let rot = map.rotations()[map.vertex_of(d)];
    let k = rot.iter().position(|&x| x == d).expect("dart belongs to its vertex");
    let steps = (0..4)
        .map(|i| {
            let x = rot[(k + i) % 4];
            Crossing::new(map.edge_of(x), map.is_tail(x))
        })
        .collect();
    DualWalk::new(steps)
}

/// Crossings that leave `face`, in edge order, forward before backward.
pub fn crossings_from(map: &WallSystemMap, face: usize) -> Vec<Crossing> {
    let mut out = Vec::new();
    for e in 0..map.edge_count() {
        for forward in [true, false] {
            let c = Crossing::new(e, forward);
            if c.from_face(map) == face {
                out.push(c);
            }
        }
    }
    out
}

/// Shortest dual path between two faces (breadth first, smallest crossings first).
pub fn dual_path(map: &WallSystemMap, from: usize, to: usize) -> DualWalk {
    let mut parent: Vec<Option<Crossing>> = alloc::vec![None; map.face_count()];
    let mut seen = alloc::vec![false; map.face_count()];
    let mut queue = alloc::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(f) = queue.pop_front() {
        for c in crossings_from(map, f) {
            let g = c.to_face(map);
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some(c);
                queue.push_back(g);
            }
        }
    }
    let mut steps = Vec::new();
    let mut g = to;
    while g != from {
        let c = parent[g].expect("dual graph is connected");
        steps.push(c);
        g = c.from_face(map);
    }
    steps.reverse();
    DualWalk::new(steps)
}

/// A closed walk from `face`: `len` random steps, then the shortest way back.
pub fn random_closed_walk<P: FnMut(usize) -> usize>(map: &WallSystemMap, face: usize, len: usize, mut pick: P) -> DualWalk {
    let mut steps = Vec::with_capacity(len);
    let mut f = face;
    for _ in 0..len {
        let options = crossings_from(map, f);
        let c = options[pick(options.len())];
        steps.push(c);
        f = c.to_face(map);
    }
    steps.extend(dual_path(map, f, face).steps);
    DualWalk::new(steps)
}

/// A walk homologous to the closed walk `w`: `moves` random insertions of
/// vertex loops and back-and-forth steps, then a cyclic rotation.
pub fn homologous_variant<P: FnMut(usize) -> usize>(map: &WallSystemMap, w: &DualWalk, moves: usize, mut pick: P) -> DualWalk {
    let mut steps = w.steps.clone();
    let start = match steps.first() {
        Some(c) => c.from_face(map),
        None => 0,
    };
    for _ in 0..moves {
        let i = pick(steps.len() + 1);
        let face = if i == 0 { start } else { steps[i - 1].to_face(map) };
        let insert: Vec<Crossing> = if pick(2) == 0 {
            let darts: Vec<crate::map::Dart> =
                (0..map.dart_count() as u32).map(crate::map::Dart).filter(|&d| map.face_of(d) == face).collect();
            vertex_loop(map, darts[pick(darts.len())]).steps
        } else {
            let options = crossings_from(map, face);
            let c = options[pick(options.len())];
            alloc::vec![c, c.reversed()]
        };
        steps.splice(i..i, insert);
    }
    let out = DualWalk::new(steps);
    let k = pick(out.len().max(1));
    out.rotated(k)
}
