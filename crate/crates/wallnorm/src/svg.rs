//! Picture of a planar dual ball: the polygon, its congruent lattice points
//! colored by status, and the origin as an empty circle.

use std::fmt::Write as _;

use wallnorm_core::{ClassificationReport, DualBall, Error, Membership};

use crate::error::AppError;

/// Pixels per lattice unit.
pub const SCALE: i64 = 32;

fn color(status: Membership) -> &'static str {
    match status {
        Membership::Interior => "#1b7f3b",
        Membership::Boundary => "#1f5fbf",
        Membership::Outside => "#c0392b",
    }
}

pub fn render_svg(ball: &DualBall, report: &ClassificationReport) -> Result<String, AppError> {
    if ball.rank != 2 {
        return Err(Error::WrongGenus { rank: ball.rank }.into());
    }
    let polygon = match &ball.polygon {
        Some(p) if !p.is_empty() => p,
        _ => return Err(Error::EmptyClassSet.into()),
    };
    let (lo, hi) = ball.bounding_box();
    let (x0, x1) = (lo[0].min(0) - 1, hi[0].max(0) + 1);
    let (y0, y1) = (lo[1].min(0) - 1, hi[1].max(0) + 1);
    let px = |x: i64| (x - x0) * SCALE;
    let py = |y: i64| (y1 - y) * SCALE;
    let (w, h) = ((x1 - x0) * SCALE, (y1 - y0) * SCALE);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for x in x0..=x1 {
        writeln!(s, r##"<line x1="{0}" y1="0" x2="{0}" y2="{h}" stroke="#e6e6e6" stroke-width="1"/>"##, px(x)).unwrap();
    }
    for y in y0..=y1 {
        writeln!(s, r##"<line x1="0" y1="{0}" x2="{w}" y2="{0}" stroke="#e6e6e6" stroke-width="1"/>"##, py(y)).unwrap();
    }
    let pts: Vec<String> = polygon.iter().map(|p| format!("{},{}", px(p.0[0]), py(p.0[1]))).collect();
    writeln!(
        s,
        r##"<polygon class="ball" points="{}" fill="#f3efe0" stroke="#333333" stroke-width="2"/>"##,
        pts.join(" ")
    )
    .unwrap();
    writeln!(
        s,
        r##"<circle class="origin" cx="{}" cy="{}" r="7" fill="none" stroke="#000000" stroke-width="2"/>"##,
        px(0),
        py(0)
    )
    .unwrap();
    for p in &report.points {
        writeln!(
            s,
            r#"<circle class="{}" cx="{}" cy="{}" r="4" fill="{}"/>"#,
            p.status.as_str(),
            px(p.point.0[0]),
            py(p.point.0[1]),
            color(p.status)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
