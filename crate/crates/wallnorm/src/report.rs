//! Report pieces shared by several subcommands.

use serde::Serialize;
use wallnorm_core::homology::BasisOrigin;
use wallnorm_core::{ClassificationReport, HomologyBasis, HomologyCoords, WallSystemMap};

use crate::format::{map_hash, serialize_basis};

/// `#` lines naming the active basis.
pub fn basis_header(basis: &HomologyBasis) -> String {
    let origin = match basis.origin {
        BasisOrigin::Computed => "computed",
        BasisOrigin::User => "user",
    };
    let mut s = format!("# basis {origin}\n");
    for line in serialize_basis(basis).lines() {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

/// Coordinates separated by single spaces.
pub fn point_line(p: &HomologyCoords) -> String {
    p.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn birkhoff_text(map: &WallSystemMap, basis: &HomologyBasis, report: &ClassificationReport) -> String {
    let mut s = format!("# map sha256={}\n", map_hash(map));
    s.push_str(&basis_header(basis));
    s.push_str(&format!("# parity={}\n", report.parity));
    for p in &report.points {
        s.push_str(&format!(
            "point={} status={} chi={} boundary={} genus={}\n",
            p.point,
            p.status.as_str(),
            p.invariants.euler_characteristic,
            p.invariants.boundary_circles,
            p.invariants.genus
        ));
    }
    s.push_str(&format!("interior: {}\nboundary: {}\noutside: {}\n", report.interior, report.boundary, report.outside));
    s.push_str(&format!("sections: {}\n", report.interior));
    s
}

#[derive(Debug, Serialize)]
pub struct PointJson {
    pub point: Vec<i64>,
    pub status: &'static str,
    pub chi: i64,
    pub boundary: i64,
    pub genus: i64,
}

#[derive(Debug, Serialize)]
pub struct BirkhoffJson {
    pub map_sha256: String,
    pub basis: Vec<String>,
    pub parity: Vec<u8>,
    pub extreme: Vec<Vec<i64>>,
    pub points: Vec<PointJson>,
    pub interior: usize,
    pub boundary: usize,
    pub outside: usize,
    pub section_exists: bool,
}

pub fn birkhoff_json(map: &WallSystemMap, basis: &HomologyBasis, report: &ClassificationReport) -> BirkhoffJson {
    BirkhoffJson {
        map_sha256: map_hash(map),
        basis: basis.cycles.iter().map(|c| c.to_string()).collect(),
        parity: report.parity.0.clone(),
        extreme: report.extreme.iter().map(|p| p.0.clone()).collect(),
        points: report
            .points
            .iter()
            .map(|p| PointJson {
                point: p.point.0.clone(),
                status: p.status.as_str(),
                chi: p.invariants.euler_characteristic,
                boundary: p.invariants.boundary_circles,
                genus: p.invariants.genus,
            })
            .collect(),
        interior: report.interior,
        boundary: report.boundary,
        outside: report.outside,
        section_exists: report.section_exists(),
    }
}
