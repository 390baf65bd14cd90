//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallnorm_core::coorient::{enumerate_eulerian, is_eulerian};
use wallnorm_core::eikonal::{extend_highest, realize, seed_values, RealizeOptions, BASE_FACE};
use wallnorm_core::fixtures::{grid, homologous_variant, random_closed_walk, random_map};
use wallnorm_core::homology::homology_basis;
use wallnorm_core::lp::rat;
use wallnorm_core::oracle::{verify_min_max, OracleOptions};
use wallnorm_core::{
    classify, section_invariants, Coorientation, EnumLimits, HomologyCoords, IntersectionNorm, Membership,
    WallSystemMap,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn norm_of(map: &WallSystemMap) -> (wallnorm_core::HomologyBasis, IntersectionNorm) {
    let b = homology_basis(map).unwrap();
    let x = IntersectionNorm::compute(map, &b, EnumLimits::UNLIMITED).unwrap();
    (b, x)
}

fn box_points(rank: usize, lo: &[i64], hi: &[i64]) -> Vec<HomologyCoords> {
    let mut out = vec![Vec::new()];
    for i in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo[i]..=hi[i]).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(HomologyCoords).collect()
}

fn random_maps(seed: u64, count: usize) -> Vec<WallSystemMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let v = rng.gen_range(1..=4);
        if let Ok(m) = random_map(v, |k| rng.gen_range(0..k)) {
            out.push(m);
        }
    }
    out
}

fn torus_grid_norm() -> Outcome {
    let start = Instant::now();
    let (_, x) = norm_of(&grid(2, 2));
    for p in -4..=4i64 {
        for q in -4..=4i64 {
            let v = x.norm(&HomologyCoords(vec![p, q])).unwrap().value;
            check(v == 2 * p.abs() + 2 * q.abs(), || format!("x({p},{q}) = {v}"))?;
        }
    }
    let mut out = Vec::new();
    let dir = tempfile::TempDir::new().unwrap();
    let path = dir.path().join("g22.wall");
    std::fs::write(&path, wallnorm::format::serialize_wall_system(&grid(2, 2))).unwrap();
    let code = wallnorm::cli::run(["wallnorm", "norm", path.to_str().unwrap(), "4", "1"], None, &mut out, &mut Vec::new());
    let text = String::from_utf8(out).unwrap();
    check(code == 0 && text.ends_with("x = 10\n"), || format!("cli printed {text:?}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("81 classes, norm(4,1) = 10, {:?}", start.elapsed()))
}

fn min_equals_max() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut cases: Vec<(String, WallSystemMap, usize)> =
        vec![("G(1,1)".into(), grid(1, 1), 3), ("G(2,2)".into(), grid(2, 2), 3), ("G(2,3)".into(), grid(2, 3), 2)];
    let mut genus_two = 0;
    for (i, m) in random_maps(2024, 20).into_iter().enumerate() {
        let r = if m.genus() == 1 { 2 } else { 1 };
        genus_two += usize::from(m.genus() == 2);
        cases.push((format!("random #{i} (V={}, g={})", m.vertex_count(), m.genus()), m, r));
    }
    for (name, map, r) in &cases {
        let (b, x) = norm_of(map);
        let report = verify_min_max(map, &b, &x, *r, OracleOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        check(report.is_clean(), || format!("{name}: {:?}", report.discrepancies))?;
        checked += report.checked;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} maps ({genus_two} of genus 2), {checked} classes, 0 discrepancies, {:?}", cases.len(), start.elapsed()))
}

fn torus_area() -> Outcome {
    for m in 1..=3 {
        for n in 1..=3 {
            let (_, x) = norm_of(&grid(m, n));
            let area = x.dual_ball().area.clone();
            check(area == Some(rat(4 * (m * n) as i64)), || format!("G({m},{n}): area {area:?}"))?;
        }
    }
    Ok("area = 4mn for 1 <= m, n <= 3".into())
}

fn lattice_realization() -> Outcome {
    let mut total = 0;
    for (m, n) in [(1, 1), (2, 2), (2, 3)] {
        let g = grid(m, n);
        let (b, x) = norm_of(&g);
        let ball = x.dual_ball();
        let set = enumerate_eulerian(&g, &b, EnumLimits::UNLIMITED, false).unwrap();
        let (lo, hi) = ball.bounding_box();
        for p in box_points(b.rank(), &lo, &hi) {
            if p.parity() != b.gamma_parity() || ball.contains(&p).unwrap() == Membership::Outside {
                continue;
            }
            total += 1;
            check(set.classes.contains_key(&p), || format!("G({m},{n}): {p} not enumerated"))?;
            let r = realize(&g, &b, &p, RealizeOptions::default()).map_err(|e| format!("G({m},{n}) {p}: {e}"))?;
            check(is_eulerian(&g, &r.coorientation), || format!("G({m},{n}) {p}: not Eulerian"))?;
            check(r.coorientation.class_of(&g, &b).unwrap() == p, || format!("G({m},{n}) {p}: wrong class"))?;
        }
    }
    Ok(format!("{total} congruent points enumerated and realized"))
}

fn birkhoff_counts() -> Outcome {
    let start = Instant::now();
    let g = grid(1, 1);
    let (b, x) = norm_of(&g);
    let r = classify(&g, &b, x.dual_ball()).unwrap();
    check(r.interior == 0 && !r.section_exists(), || format!("G(1,1): {} interior", r.interior))?;
    let g = grid(2, 2);
    let (b, x) = norm_of(&g);
    let r = classify(&g, &b, x.dual_ball()).unwrap();
    check(r.interior == 1 && r.boundary == 8, || format!("G(2,2): {} interior, {} boundary", r.interior, r.boundary))?;
    let inner = r.points.iter().find(|p| p.status == Membership::Interior).unwrap();
    check(inner.point.is_zero(), || format!("interior point {}", inner.point))?;
    let inv = section_invariants(&g);
    check((inv.euler_characteristic, inv.boundary_circles, inv.genus) == (-8, 8, 1), || format!("{inv:?}"))?;
    check(r.points.iter().all(|p| p.invariants == inv), || "per-point invariants differ".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("G(1,1): 0 interior; G(2,2): 1 interior, 8 boundary, chi=-8 circles=8 genus=1, {:?}", start.elapsed()))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut maps = vec![grid(1, 1), grid(2, 2), grid(2, 3)];
    maps.extend(random_maps(77, 40).into_iter().filter(|m| m.genus() == 2).take(2));
    let mut walk_pairs = 0;
    for g in &maps {
        let b = homology_basis(g).unwrap();
        let set = enumerate_eulerian(g, &b, EnumLimits::UNLIMITED, true).unwrap();
        let x = IntersectionNorm::from_set(b.rank(), &set).unwrap();
        let items: Vec<Coorientation> = set.items.clone().unwrap();
        let r = if b.rank() == 2 { 2 } else { 1 };
        let classes = box_points(b.rank(), &vec![-r; b.rank()], &vec![r; b.rank()]);
        let val = |a: &HomologyCoords| x.norm(a).unwrap().value;
        let gamma = |a: &HomologyCoords| a.0.iter().zip(&b.gamma_parity().0).map(|(x, p)| x * i64::from(*p)).sum::<i64>();
        for a in &classes {
            let v = val(a);
            for k in -3..=3 {
                check(val(&a.scale(k)) == k.abs() * v, || format!("homogeneity at {a}, {k}"))?;
            }
            check(val(&a.neg()) == v, || format!("symmetry at {a}"))?;
            check((v > 0) == !a.is_zero(), || format!("positivity at {a}"))?;
            check((v - gamma(a)).rem_euclid(2) == 0, || format!("parity of x at {a}"))?;
            for c in &classes {
                check(val(&a.add(c)) <= v + val(c), || format!("subadditivity at {a}, {c}"))?;
            }
            for nu in &items {
                let e = nu.class_of(g, &b).unwrap().dot(&a.0);
                check(e.abs() <= v, || format!("inclusion at {a}"))?;
                check((e - gamma(a)).rem_euclid(2) == 0, || format!("parity of nu at {a}"))?;
            }
        }
        for _ in 0..100 {
            let face = rng.gen_range(0..g.face_count());
            let len = rng.gen_range(0..12);
            let w = random_closed_walk(g, face, len, |k| rng.gen_range(0..k));
            let moves = rng.gen_range(1..4);
            let v = homologous_variant(g, &w, moves, |k| rng.gen_range(0..k));
            for nu in &items {
                check(nu.evaluate(g, &w).unwrap() == nu.evaluate(g, &v).unwrap(), || format!("walks {w} / {v}"))?;
            }
            walk_pairs += 1;
        }
    }
    Ok(format!("{} maps, {walk_pairs} homologous walk pairs, zero failures", maps.len()))
}

fn enumeration_correctness() -> Outcome {
    let mut maps: Vec<WallSystemMap> =
        [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (1, 4), (2, 3), (3, 2), (2, 4), (4, 2)].iter().map(|&(m, n)| grid(m, n)).collect();
    maps.extend(random_maps(31, 20));
    for g in &maps {
        let e = g.edge_count();
        check(e <= 16, || format!("E = {e}"))?;
        let brute: BTreeSet<Vec<i8>> = (0..1u64 << e)
            .map(|mask| (0..e).map(|i| if mask >> i & 1 == 0 { 1 } else { -1 }).collect::<Vec<i8>>())
            .filter(|s| is_eulerian(g, &Coorientation::new(s.clone())))
            .collect();
        let b = homology_basis(g).unwrap();
        let set = enumerate_eulerian(g, &b, EnumLimits::UNLIMITED, true).unwrap();
        let items: BTreeSet<Vec<i8>> = set.items.unwrap().iter().map(|c| c.signs().to_vec()).collect();
        check(items == brute && set.count as usize == brute.len(), || format!("mismatch on a map with E = {e}"))?;
    }
    Ok(format!("{} maps with E <= 16 match the 2^E filter", maps.len()))
}

fn eikonal_checks() -> Outcome {
    let g = grid(1, 1);
    let b = homology_basis(&g).unwrap();
    let n = HomologyCoords(vec![1, 1]);
    let radius = 4;
    let f = extend_highest(&g, &b, &n, radius);
    for (h, v) in seed_values(&n, radius) {
        check(f.value(BASE_FACE, &h.0) == Some(v), || format!("seed not attained at {h}"))?;
    }
    let steps = f.eikonal_violations(radius - 1);
    check(steps.is_empty(), || format!("{} eikonal violations", steps.len()))?;
    let equi = f.equivariance_violations(radius - 1);
    check(equi.is_empty(), || format!("{} equivariance violations", equi.len()))?;
    Ok("G(1,1), n=(1,1), R=4: 0 eikonal and 0 equivariance violations".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("torus grid norm", torus_grid_norm),
        ("min equals max", min_equals_max),
        ("torus area identity", torus_area),
        ("lattice realization", lattice_realization),
        ("birkhoff classification", birkhoff_counts),
        ("property suites", property_suites),
        ("enumeration correctness", enumeration_correctness),
        ("eikonal field checks", eikonal_checks),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
