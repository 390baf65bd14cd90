use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn wallnorm(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wallnorm"));
    cmd.args(args).env_remove("WALLNORM_MAX_ENUM");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fixture(dir: &Path, m: usize, n: usize) -> PathBuf {
    let path = dir.join(format!("g{m}{n}.wall"));
    let r = wallnorm(&["fixture", &m.to_string(), &n.to_string(), "--out", path.to_str().unwrap()], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_lines() {
    let dir = TempDir::new().unwrap();
    let r = wallnorm(&["info", s(&fixture(dir.path(), 1, 1))], &[]);
    assert_eq!(r.stdout, "V=1 E=2 F=1 genus=1 curves=2 parity=(1,1)\n");
    let r = wallnorm(&["info", s(&fixture(dir.path(), 2, 2))], &[]);
    assert_eq!(r.stdout, "V=4 E=8 F=4 genus=1 curves=4 parity=(0,0)\n");
}

#[test]
fn norm_and_oracle_agree() {
    let dir = TempDir::new().unwrap();
    let g = fixture(dir.path(), 2, 2);
    let r = wallnorm(&["norm", s(&g), "4", "1"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.ends_with("x = 10\n"));
    assert!(r.stdout.starts_with("# basis computed\n"));
    let r = wallnorm(&["norm", s(&g), "-4", "-1"], &[]);
    assert!(r.stdout.ends_with("x = 10\n"));
    let r = wallnorm(&["oracle", s(&g), "4", "1", "--certificate"], &[]);
    assert!(r.stdout.contains("min = 10\n"));
    assert!(r.stdout.contains("cycle class="));
    let r = wallnorm(&["verify", s(&fixture(dir.path(), 1, 1)), "--box", "2"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("checked=25 discrepancies=0"));
}

#[test]
fn birkhoff_reports() {
    let dir = TempDir::new().unwrap();
    let r = wallnorm(&["birkhoff", s(&fixture(dir.path(), 1, 1))], &[]);
    assert!(r.stdout.ends_with("sections: 0\n"));
    let json = dir.path().join("r.json");
    let r = wallnorm(&["birkhoff", s(&fixture(dir.path(), 2, 2)), "--json-report", s(&json)], &[]);
    assert!(r.stdout.contains("point=(0,0) status=interior chi=-8 boundary=8 genus=1\n"));
    assert_eq!(r.stdout.matches("status=boundary").count(), 8);
    assert!(r.stdout.ends_with("sections: 1\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["interior"], 1);
    assert_eq!(v["boundary"], 8);
    assert_eq!(v["section_exists"], true);
}

#[test]
fn ball_modes() {
    let dir = TempDir::new().unwrap();
    let g = fixture(dir.path(), 2, 2);
    let r = wallnorm(&["ball", s(&g), "--area"], &[]);
    assert!(r.stdout.ends_with("area = 16\n"));
    let r = wallnorm(&["ball", s(&g), "--extreme"], &[]);
    let pts: Vec<&str> = r.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(pts, ["2 2", "-2 2", "-2 -2", "2 -2"]);
    let r = wallnorm(&["ball", s(&g)], &[]);
    assert!(r.stdout.contains("dim=2 classes=9 extreme=4 facets=4 area=16\n"));
    let r = wallnorm(&["ball", s(&g), "--area", "--extreme"], &[]);
    assert_eq!(r.code, 2);
}

#[test]
fn realize_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = fixture(dir.path(), 2, 3);
    let out = dir.path().join("c.txt");
    let r = wallnorm(&["realize", s(&g), "1", "0", "--out", s(&out)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = std::fs::read_to_string(&out).unwrap();
    let c = wallnorm::format::parse_coorientation(&text).unwrap();
    let map = wallnorm::format::parse_wall_system(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let b = wallnorm_core::homology::homology_basis(&map).unwrap();
    assert!(wallnorm_core::coorient::is_eulerian(&map, &c));
    assert_eq!(c.class_of(&map, &b).unwrap().0, vec![1, 0]);
    let r = wallnorm(&["realize", s(&g), "0", "0"], &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: NotRealizable: "));
    let r = wallnorm(&["realize", s(&g), "1", "0", "--method", "lookup"], &[]);
    assert!(r.stdout.contains("method=enumeration-fallback"));
}

#[test]
fn coorientation_listing() {
    let dir = TempDir::new().unwrap();
    let g = fixture(dir.path(), 1, 1);
    assert_eq!(wallnorm(&["coorientations", s(&g)], &[]).stdout, "count: 4\n");
    let r = wallnorm(&["coorientations", s(&g), "--classes"], &[]);
    assert!(r.stdout.contains("1 1 multiplicity=1\n"));
    let list = dir.path().join("items");
    let r = wallnorm(&["coorientations", s(&g), "--list", s(&list)], &[]);
    assert_eq!(r.stdout, "count: 4\n");
    assert_eq!(std::fs::read_dir(&list).unwrap().count(), 4);
    let first = std::fs::read_to_string(list.join("coorientation_000000.txt")).unwrap();
    assert_eq!(first, "edge 0: +\nedge 1: +\n");
}

#[test]
fn user_basis_and_env_cap() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.wall");
    let basis = dir.path().join("g.basis");
    let r = wallnorm(&["fixture", "2", "2", "--out", s(&g), "--basis-out", s(&basis)], &[]);
    assert_eq!(r.code, 0);
    let r = wallnorm(&["--basis", s(&basis), "norm", s(&g), "1", "0"], &[]);
    assert!(r.stdout.starts_with("# basis user\n# cycle 0: 2+ 0+\n"));
    assert!(r.stdout.ends_with("x = 2\n"));
    std::fs::write(&basis, "cycle 0: 2+ 0+\ncycle 1: 2+ 0+\n").unwrap();
    let r = wallnorm(&["--basis", s(&basis), "norm", s(&g), "1", "0"], &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: NotABasis: "));

    let r = wallnorm(&["classes", s(&g)], &[("WALLNORM_MAX_ENUM", "3")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: ResourceLimit: "));
    let r = wallnorm(&["classes", s(&g)], &[("WALLNORM_MAX_ENUM", "zero")]);
    assert_eq!(r.code, 2);
}

#[test]
fn error_paths() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.wall");
    std::fs::write(&bad, "vertices 1\nvertex 0: 0 1 2\nedge 0: 3 1\nedge 1: 0 2\n").unwrap();
    let r = wallnorm(&["info", s(&bad)], &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: BadDegree: "));
    std::fs::write(&bad, "vertices 1\nvertex 0: 0 1 2 3\nedge 0: 0 1\nedge 1: 2 3\n").unwrap();
    assert!(wallnorm(&["info", s(&bad)], &[]).stderr.starts_with("error: BadEuler: "));
    std::fs::write(&bad, "hello\n").unwrap();
    assert!(wallnorm(&["info", s(&bad)], &[]).stderr.starts_with("error: MalformedInput: "));
    let r = wallnorm(&["info", s(&dir.path().join("missing.wall"))], &[]);
    assert!(r.stderr.starts_with("error: Io: "));
    assert_eq!(wallnorm(&["norm"], &[]).code, 2);
    assert_eq!(wallnorm(&["fixture", "0", "1"], &[]).code, 2);
    let g = fixture(dir.path(), 2, 2);
    let r = wallnorm(&["norm", s(&g), "1", "2", "3"], &[]);
    assert!(r.stderr.starts_with("error: DimensionMismatch: "));
}

#[test]
fn svg_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = fixture(dir.path(), 2, 2);
    let a = wallnorm(&["svg", s(&g)], &[]).stdout;
    let b = wallnorm(&["svg", s(&g)], &[]).stdout;
    assert_eq!(a, b);
    assert!(a.starts_with("<svg "));
    assert_eq!(a.matches(r#"class="interior""#).count(), 1);
    assert_eq!(a.matches(r#"class="boundary""#).count(), 8);
    assert_eq!(a.matches(r#"class="origin""#).count(), 1);
    let r1 = wallnorm(&["birkhoff", s(&g)], &[]).stdout;
    assert_eq!(r1, wallnorm(&["birkhoff", s(&g)], &[]).stdout);
}

#[test]
fn genus_two_map() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let map = loop {
        if let Ok(m) = wallnorm_core::fixtures::random_map(4, |k| rng.gen_range(0..k)) {
            if m.genus() == 2 {
                break m;
            }
        }
    };
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g2.wall");
    std::fs::write(&g, wallnorm::format::serialize_wall_system(&map)).unwrap();
    let r = wallnorm(&["info", s(&g)], &[]);
    assert!(r.stdout.contains(" genus=2 "));
    let r = wallnorm(&["svg", s(&g)], &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error: WrongGenus: "));
    let r = wallnorm(&["ball", s(&g)], &[]);
    assert!(r.stdout.contains("dim=4 "));
    assert!(r.stdout.contains(" facets="));
    let r = wallnorm(&["verify", s(&g), "--box", "1"], &[]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("checked=81 discrepancies=0"));
}
