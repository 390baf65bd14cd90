//! The `wallnorm` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use wallnorm_core::coorient::{enumerate_eulerian, for_each_eulerian};
use wallnorm_core::eikonal::{realize, RealizeMethod, RealizeOptions};
use wallnorm_core::fixtures::{grid, grid_standard_walks};
use wallnorm_core::homology::{homology_basis, set_user_basis};
use wallnorm_core::oracle::{min_multicurve, verify_min_max, OracleOptions};
use wallnorm_core::{classify, EnumLimits, Error, HomologyBasis, HomologyCoords, IntersectionNorm, WallSystemMap};

use crate::error::AppError;
use crate::format::{parse_basis, parse_wall_system, serialize_coorientation, serialize_walks, serialize_wall_system};
use crate::report::{basis_header, birkhoff_json, birkhoff_text, point_line};
use crate::svg::render_svg;

/// Environment variable capping the number of enumerated coorientations.
pub const MAX_ENUM_VAR: &str = "WALLNORM_MAX_ENUM";

#[derive(Debug, Parser)]
#[command(name = "wallnorm", version, about = "Intersection norms and dual balls of wall systems on surfaces")]
pub struct RunConfig {
    /// Basis file (`cycle <i>: <e±> ...`) replacing the computed homology basis.
    #[arg(long, global = true, value_name = "FILE")]
    pub basis: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Eikonal,
    Lookup,
    Auto,
}

impl From<MethodArg> for RealizeMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Eikonal => RealizeMethod::Eikonal,
            MethodArg::Lookup => RealizeMethod::Lookup,
            MethodArg::Auto => RealizeMethod::Auto,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex, edge, face and curve counts, genus and [γ]₂.
    Info { file: PathBuf },
    /// Count, list or classify the Eulerian coorientations.
    Coorientations {
        file: PathBuf,
        #[arg(long, group = "mode")]
        count: bool,
        /// Write one coorientation file per item into this directory.
        #[arg(long, value_name = "OUT_DIR", group = "mode")]
        list: Option<PathBuf>,
        #[arg(long, group = "mode")]
        classes: bool,
    },
    /// Distinct classes of Eulerian coorientations, one per line.
    Classes { file: PathBuf },
    /// The dual unit ball.
    Ball {
        file: PathBuf,
        #[arg(long, group = "mode")]
        extreme: bool,
        #[arg(long, group = "mode")]
        all_classes: bool,
        #[arg(long, group = "mode")]
        area: bool,
        #[arg(long, group = "mode")]
        facets: bool,
    },
    /// x(a) by the max formula.
    Norm {
        file: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        a: Vec<i64>,
    },
    /// x(a) by brute-force search in the abelian cover.
    Oracle {
        file: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        a: Vec<i64>,
        #[arg(long, value_parser = positive)]
        radius: Option<usize>,
        #[arg(long, value_parser = positive)]
        cap: Option<usize>,
        #[arg(long)]
        certificate: bool,
    },
    /// Compare the oracle with the max formula on a box of classes.
    Verify {
        file: PathBuf,
        #[arg(long = "box", value_name = "R")]
        box_radius: usize,
        #[arg(long, value_parser = positive)]
        radius: Option<usize>,
        #[arg(long, value_parser = positive)]
        cap: Option<usize>,
    },
    /// An Eulerian coorientation of class n.
    Realize {
        file: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        n: Vec<i64>,
        #[arg(long, value_name = "COORFILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, value_parser = positive)]
        radius: Option<usize>,
        #[arg(long, value_parser = positive)]
        cap: Option<usize>,
    },
    /// Congruent lattice points of the ball and the sections they classify.
    Birkhoff {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        json_report: Option<PathBuf>,
    },
    /// SVG picture of a genus-1 dual ball.
    Svg {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The grid wall system G(m, n) on the torus.
    Fixture {
        #[arg(value_parser = positive)]
        m: usize,
        #[arg(value_parser = positive)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the standard horizontal and vertical cycles as a basis file.
        #[arg(long, value_name = "FILE")]
        basis_out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), AppError> {
    std::fs::write(path, text).map_err(|e| AppError::io(path, e))
}

/// Caps from `WALLNORM_MAX_ENUM`, or the library default.
pub fn limits_from(value: Option<&str>) -> Result<EnumLimits, AppError> {
    match value {
        None => Ok(EnumLimits::default()),
        Some(v) => match v.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(EnumLimits { max_count: Some(n), ..EnumLimits::default() }),
            _ => Err(AppError::Usage(format!("{MAX_ENUM_VAR} must be a positive integer, got `{v}`"))),
        },
    }
}

struct Session {
    map: WallSystemMap,
    basis: HomologyBasis,
    limits: EnumLimits,
}

impl Session {
    fn load(file: &Path, basis: Option<&Path>, limits: EnumLimits) -> Result<Self, AppError> {
        let map = parse_wall_system(&read(file)?)?;
        let basis = match basis {
            Some(p) => set_user_basis(&map, parse_basis(&read(p)?)?)?,
            None => homology_basis(&map)?,
        };
        Ok(Session { map, basis, limits })
    }

    fn class(&self, v: &[i64]) -> Result<HomologyCoords, AppError> {
        if v.len() != self.basis.rank() {
            return Err(Error::DimensionMismatch { expected: self.basis.rank(), found: v.len() }.into());
        }
        Ok(HomologyCoords(v.to_vec()))
    }

    fn norm(&self) -> Result<IntersectionNorm, AppError> {
        Ok(IntersectionNorm::compute(&self.map, &self.basis, self.limits)?)
    }

    fn header(&self) -> String {
        basis_header(&self.basis)
    }
}

fn execute(cfg: RunConfig, limits: EnumLimits) -> Result<(String, Option<AppError>), AppError> {
    let basis = cfg.basis.as_deref();
    let load = |file: &Path| Session::load(file, basis, limits);
    let mut s = String::new();
    match cfg.command {
        Command::Info { file } => {
            let x = load(&file)?;
            let m = &x.map;
            writeln!(
                s,
                "V={} E={} F={} genus={} curves={} parity={}",
                m.vertex_count(),
                m.edge_count(),
                m.face_count(),
                m.genus(),
                m.curves().len(),
                x.basis.gamma_parity()
            )
            .unwrap();
        }
        Command::Coorientations { file, list, classes, .. } => {
            let x = load(&file)?;
            if classes {
                let set = enumerate_eulerian(&x.map, &x.basis, x.limits, false)?;
                s.push_str(&x.header());
                for (c, k) in &set.classes {
                    writeln!(s, "{} multiplicity={k}", point_line(c)).unwrap();
                }
                writeln!(s, "count: {}", set.count).unwrap();
            } else if let Some(dir) = list {
                std::fs::create_dir_all(&dir).map_err(|e| AppError::io(&dir, e))?;
                let mut failure = None;
                let mut written = 0u64;
                for_each_eulerian(&x.map, x.limits, |coor| {
                    let path = dir.join(format!("coorientation_{written:06}.txt"));
                    if let Err(e) = write_file(&path, &serialize_coorientation(coor)) {
                        failure = Some(e);
                        return ControlFlow::Break(());
                    }
                    written += 1;
                    ControlFlow::Continue(())
                })?;
                if let Some(e) = failure {
                    return Err(e);
                }
                writeln!(s, "count: {written}").unwrap();
            } else {
                let set = enumerate_eulerian(&x.map, &x.basis, x.limits, false)?;
                writeln!(s, "count: {}", set.count).unwrap();
            }
        }
        Command::Classes { file } => {
            let x = load(&file)?;
            let norm = x.norm()?;
            s.push_str(&x.header());
            for p in norm.points() {
                writeln!(s, "{}", point_line(p)).unwrap();
            }
        }
        Command::Ball { file, extreme, all_classes, area, facets } => {
            let x = load(&file)?;
            let norm = x.norm()?;
            let ball = norm.dual_ball();
            s.push_str(&x.header());
            if area {
                let a = ball.area.as_ref().ok_or(Error::WrongGenus { rank: ball.rank })?;
                writeln!(s, "area = {a}").unwrap();
            } else if all_classes {
                for p in &ball.points {
                    writeln!(s, "{}", point_line(p)).unwrap();
                }
            } else if facets {
                for f in ball.facets() {
                    let normal: Vec<String> = f.normal.iter().map(i64::to_string).collect();
                    writeln!(s, "normal={} offset={} vertices={}", normal.join(" "), f.offset, f.vertices.len()).unwrap();
                }
            } else {
                if !extreme {
                    write!(s, "dim={} classes={} extreme={}", ball.dim, ball.points.len(), ball.extreme.len()).unwrap();
                    if ball.dim == ball.rank {
                        write!(s, " facets={}", ball.facets().len()).unwrap();
                    }
                    if let Some(a) = &ball.area {
                        write!(s, " area={a}").unwrap();
                    }
                    s.push('\n');
                }
                let points = ball.polygon.as_ref().unwrap_or(&ball.extreme);
                for p in points {
                    writeln!(s, "{}", point_line(p)).unwrap();
                }
            }
        }
        Command::Norm { file, a } => {
            let x = load(&file)?;
            let a = x.class(&a)?;
            let v = x.norm()?.norm(&a)?;
            s.push_str(&x.header());
            writeln!(s, "x = {}", v.value).unwrap();
        }
        Command::Oracle { file, a, radius, cap, certificate } => {
            let x = load(&file)?;
            let a = x.class(&a)?;
            let v = min_multicurve(&x.map, &x.basis, &a, OracleOptions { radius, cap })?;
            s.push_str(&x.header());
            writeln!(s, "min = {}\ntruncation = {}", v.value, v.truncation).unwrap();
            if certificate {
                for c in &v.certificate.cycles {
                    writeln!(s, "cycle class={} length={} walk={}", c.class, c.length, c.walk).unwrap();
                }
            }
        }
        Command::Verify { file, box_radius, radius, cap } => {
            let x = load(&file)?;
            let norm = x.norm()?;
            let r = verify_min_max(&x.map, &x.basis, &norm, box_radius, OracleOptions { radius, cap })?;
            s.push_str(&x.header());
            writeln!(
                s,
                "box={} checked={} discrepancies={} truncation={}",
                r.box_radius,
                r.checked,
                r.discrepancies.len(),
                r.truncation
            )
            .unwrap();
            for d in &r.discrepancies {
                writeln!(s, "class={} norm={} oracle={}", d.class, d.norm, d.oracle).unwrap();
            }
            if !r.is_clean() {
                return Ok((s, Some(AppError::Discrepancy { count: r.discrepancies.len() })));
            }
        }
        Command::Realize { file, n, out, method, radius, cap } => {
            let x = load(&file)?;
            let n = x.class(&n)?;
            let opts = RealizeOptions { method: method.into(), start_radius: radius, cap, limits: x.limits };
            let r = realize(&x.map, &x.basis, &n, opts)?;
            let mut body = x.header();
            write!(body, "# target={} method={}", r.target, r.method.as_str()).unwrap();
            if let Some(radius) = r.radius {
                write!(body, " radius={radius}").unwrap();
            }
            body.push('\n');
            body.push_str(&serialize_coorientation(&r.coorientation));
            match out {
                Some(path) => {
                    write_file(&path, &body)?;
                    writeln!(s, "target={} method={}", r.target, r.method.as_str()).unwrap();
                }
                None => s = body,
            }
        }
        Command::Birkhoff { file, json_report } => {
            let x = load(&file)?;
            let norm = x.norm()?;
            let report = classify(&x.map, &x.basis, norm.dual_ball())?;
            if let Some(path) = json_report {
                let json = serde_json::to_string_pretty(&birkhoff_json(&x.map, &x.basis, &report))
                    .expect("report serializes");
                write_file(&path, &(json + "\n"))?;
            }
            s = birkhoff_text(&x.map, &x.basis, &report);
        }
        Command::Svg { file, out } => {
            let x = load(&file)?;
            let norm = x.norm()?;
            let ball = norm.dual_ball();
            if ball.rank != 2 {
                return Err(Error::WrongGenus { rank: ball.rank }.into());
            }
            let report = classify(&x.map, &x.basis, ball)?;
            let svg = render_svg(ball, &report)?;
            match out {
                Some(path) => write_file(&path, &svg)?,
                None => s = svg,
            }
        }
        Command::Fixture { m, n, out, basis_out } => {
            let text = serialize_wall_system(&grid(m, n));
            if let Some(path) = basis_out {
                write_file(&path, &serialize_walks(&grid_standard_walks(m, n)))?;
            }
            match out {
                Some(path) => write_file(&path, &text)?,
                None => s = text,
            }
        }
    }
    Ok((s, None))
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(args: I, env_max_enum: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = limits_from(env_max_enum).and_then(|limits| execute(cfg, limits));
    let failure = match result {
        Ok((text, failure)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            failure
        }
        Err(e) => Some(e),
    };
    match failure {
        None => 0,
        Some(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            e.exit_code()
        }
    }
}
