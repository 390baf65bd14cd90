//! Text formats: wall-system files, basis files and coorientation files.
//!
//! ```text
//! # comment
//! vertices 1
//! vertex 0: 0 1 2 3
//! edge 0: 3 1
//! edge 1: 0 2
//! ```
//!
//! Basis files hold `cycle <i>: <e±> <e±> ...` lines, coorientation files
//! `edge <j>: +` or `edge <j>: -` lines. In all three, lines may appear in any
//! order but every index must occur exactly once.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use wallnorm_core::{Coorientation, Crossing, DualWalk, HomologyBasis, WallSystemMap};

use crate::error::AppError;

fn malformed(line: usize, msg: impl Into<String>) -> AppError {
    AppError::MalformedInput { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Splits `<keyword> <index>: <rest>`.
fn indexed<'a>(line: usize, l: &'a str, keyword: &str) -> Result<Option<(usize, &'a str)>, AppError> {
    let Some(rest) = l.strip_prefix(keyword) else { return Ok(None) };
    if !rest.starts_with(char::is_whitespace) {
        return Ok(None);
    }
    let (idx, body) = rest
        .split_once(':')
        .ok_or_else(|| malformed(line, format!("expected `{keyword} <index>: ...`")))?;
    let idx = idx.trim().parse().map_err(|_| malformed(line, format!("bad {keyword} index `{}`", idx.trim())))?;
    Ok(Some((idx, body.trim())))
}

fn parse_u32(line: usize, tok: &str) -> Result<u32, AppError> {
    tok.parse().map_err(|_| malformed(line, format!("bad dart id `{tok}`")))
}

/// Collects `index → value`, rejecting duplicates, and checks the indices
/// are exactly `0..n`.
fn dense<T>(entries: BTreeMap<usize, (usize, T)>, what: &str) -> Result<Vec<T>, AppError> {
    let mut out = Vec::with_capacity(entries.len());
    for (expect, (idx, (_, v))) in entries.into_iter().enumerate() {
        if idx != expect {
            return Err(malformed(0, format!("{what} {expect} is missing")));
        }
        out.push(v);
    }
    Ok(out)
}

fn insert_unique<T>(map: &mut BTreeMap<usize, (usize, T)>, idx: usize, line: usize, v: T, what: &str) -> Result<(), AppError> {
    if let Some((first, _)) = map.get(&idx) {
        return Err(malformed(line, format!("{what} {idx} already given on line {first}")));
    }
    map.insert(idx, (line, v));
    Ok(())
}

pub fn parse_wall_system(text: &str) -> Result<WallSystemMap, AppError> {
    let mut declared: Option<usize> = None;
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("vertices") {
            if declared.is_some() {
                return Err(malformed(line, "duplicate `vertices` line"));
            }
            let v = rest.trim().parse().map_err(|_| malformed(line, format!("bad vertex count `{}`", rest.trim())))?;
            declared = Some(v);
        } else if let Some((idx, body)) = indexed(line, l, "vertex")? {
            let darts = body.split_whitespace().map(|t| parse_u32(line, t)).collect::<Result<Vec<_>, _>>()?;
            insert_unique(&mut vertices, idx, line, darts, "vertex")?;
        } else if let Some((idx, body)) = indexed(line, l, "edge")? {
            let darts = body.split_whitespace().map(|t| parse_u32(line, t)).collect::<Result<Vec<_>, _>>()?;
            let [t, h] = darts[..] else {
                return Err(malformed(line, format!("edge {idx} needs exactly two darts")));
            };
            insert_unique(&mut edges, idx, line, (t, h), "edge")?;
        } else {
            return Err(malformed(line, format!("unrecognized line `{l}`")));
        }
    }
    let declared = declared.ok_or_else(|| malformed(0, "missing `vertices` line"))?;
    if let Some((&idx, &(line, _))) = vertices.range(declared..).next() {
        return Err(malformed(line, format!("vertex {idx} out of range for {declared} vertices")));
    }
    if vertices.len() != declared {
        let missing = (0..declared).find(|i| !vertices.contains_key(i)).unwrap_or(0);
        return Err(malformed(0, format!("vertex {missing} is missing")));
    }
    let rotations = dense(vertices, "vertex")?;
    let edges = dense(edges, "edge")?;
    Ok(WallSystemMap::new(rotations, edges)?)
}

/// Vertex and edge lines sorted by index.
pub fn serialize_wall_system(map: &WallSystemMap) -> String {
    let mut s = String::new();
    writeln!(s, "vertices {}", map.vertex_count()).unwrap();
    for (v, rot) in map.rotations().iter().enumerate() {
        writeln!(s, "vertex {v}: {} {} {} {}", rot[0].0, rot[1].0, rot[2].0, rot[3].0).unwrap();
    }
    for (e, (t, h)) in map.edges().iter().enumerate() {
        writeln!(s, "edge {e}: {} {}", t.0, h.0).unwrap();
    }
    s
}

/// SHA-256 of the canonical serialization, in hex.
pub fn map_hash(map: &WallSystemMap) -> String {
    Sha256::digest(serialize_wall_system(map).as_bytes()).iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

fn parse_crossing(line: usize, tok: &str) -> Result<Crossing, AppError> {
    let (num, forward) = match tok.as_bytes().last() {
        Some(b'+') => (&tok[..tok.len() - 1], true),
        Some(b'-') => (&tok[..tok.len() - 1], false),
        _ => return Err(malformed(line, format!("crossing `{tok}` must end in + or -"))),
    };
    let edge = num.parse().map_err(|_| malformed(line, format!("bad link id in `{tok}`")))?;
    Ok(Crossing::new(edge, forward))
}

pub fn parse_basis(text: &str) -> Result<Vec<DualWalk>, AppError> {
    let mut cycles = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let (idx, body) =
            indexed(line, l, "cycle")?.ok_or_else(|| malformed(line, format!("unrecognized line `{l}`")))?;
        let steps = body.split_whitespace().map(|t| parse_crossing(line, t)).collect::<Result<Vec<_>, _>>()?;
        insert_unique(&mut cycles, idx, line, DualWalk::new(steps), "cycle")?;
    }
    dense(cycles, "cycle")
}

pub fn serialize_walks(walks: &[DualWalk]) -> String {
    let mut s = String::new();
    for (i, w) in walks.iter().enumerate() {
        writeln!(s, "cycle {i}: {w}").unwrap();
    }
    s
}

pub fn serialize_basis(basis: &HomologyBasis) -> String {
    serialize_walks(&basis.cycles)
}

pub fn parse_coorientation(text: &str) -> Result<Coorientation, AppError> {
    let mut signs = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let (idx, body) =
            indexed(line, l, "edge")?.ok_or_else(|| malformed(line, format!("unrecognized line `{l}`")))?;
        let s = match body {
            "+" => 1i8,
            "-" => -1,
            _ => return Err(malformed(line, format!("edge {idx} sign must be + or -"))),
        };
        insert_unique(&mut signs, idx, line, s, "edge")?;
    }
    Ok(Coorientation::new(dense(signs, "edge")?))
}

pub fn serialize_coorientation(coor: &Coorientation) -> String {
    let mut s = String::new();
    for (e, &sign) in coor.signs().iter().enumerate() {
        writeln!(s, "edge {e}: {}", if sign > 0 { '+' } else { '-' }).unwrap();
    }
    s
}
