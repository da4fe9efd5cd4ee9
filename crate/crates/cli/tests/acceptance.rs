//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every expected value comes from an independent oracle: exhaustive
//! enumeration for color selections, dense sampling for regions, and vertex
//! enumeration for linear programs.

use mindiam::geometry::{ConvexPolygon, HalfSpace, HalfSpaceRegion, Region, Vec2};
use mindiam::imprecise::{
    common_point, min_diam_eps, sampling_oracle, solve, ImpreciseInstance, PipelineConfig, SolveOutcome,
};
use mindiam::lp::{build_lp3, region_constraints, simplex_solve, sqrt_d_approx, LinearProgram, LpStatus, VarBounds};
use mindiam::mindcs::{brute_force, min_diameter_apx};
use mindiam_cli::{gen, run, Command, InstanceFile, RunOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::f64::consts::SQRT_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::Instant;

/// Outcome of one criterion: failures found and a one-line summary.
struct Verdict {
    failures: Vec<String>,
    summary: String,
}

impl Verdict {
    fn new(summary: String, failures: Vec<String>) -> Self {
        Verdict { failures, summary }
    }
}

const ORACLE_R: f64 = 0.02;
const PIPELINE_EPS: f64 = 0.3;

fn pipeline_factor(eps: f64) -> f64 {
    1.0 + (2.0 * SQRT_2 + SQRT_2) * eps
}

fn mindcs_guarantee() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let mut failures = Vec::new();
    let mut worst = 1.0f64;
    for t in 0..200 {
        let m = 2 + t % 3;
        let inst = gen::indecisive(&mut rng, 2, m, 4, 10.0);
        let exact = brute_force(&inst).expect("small product").value;
        for eps in [0.5, 0.25] {
            let r = match min_diameter_apx(&inst, eps) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("instance {t}, eps {eps}: {e}"));
                    continue;
                }
            };
            let got = r.selection_diameter;
            let bound = (1.0 + 2.0 * SQRT_2 * eps) * exact;
            if exact > got + 1e-9 || got > bound + 1e-9 {
                failures.push(format!("instance {t}, eps {eps}: D_min {exact}, selection {got}, bound {bound}"));
            }
            if exact > 0.0 {
                worst = worst.max(got / exact);
            }
        }
    }
    Verdict::new(format!("400 runs, worst ratio {worst:.4}"), failures)
}

fn lp_sandwich() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in 0..100 {
        let n = 2 + t % 3;
        let polys = gen::imprecise_polygons(&mut rng, n, 6, 10.0, 1.5);
        let inst = ImpreciseInstance::from_polygons(polys).expect("valid polygons");
        let oracle = match sampling_oracle(&inst, ORACLE_R) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("instance {t}: oracle {e}"));
                continue;
            }
        };
        if oracle.resolution != ORACLE_R {
            failures.push(format!("instance {t}: oracle coarsened to {}", oracle.resolution));
            continue;
        }
        let ell = match sqrt_d_approx(&inst) {
            Ok(a) => a.ell,
            Err(e) => {
                failures.push(format!("instance {t}: {e}"));
                continue;
            }
        };
        let tol = 2.0 * SQRT_2 * ORACLE_R;
        let (lo, hi) = (oracle.value - tol, SQRT_2 * (oracle.value + tol));
        if !(lo <= ell && ell <= hi) {
            failures.push(format!("instance {t}: {lo} <= {ell} <= {hi} violated"));
        }
        checked += 1;
    }
    Verdict::new(format!("{checked} instances"), failures)
}

/// The 50 separable instances shared by the pipeline and rectangle checks.
fn separable_instances() -> Vec<ImpreciseInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    (0..50)
        .map(|t| {
            let polys = gen::separable(&mut rng, 2 + t % 3, 6, 10.0, 1.5, 0.0);
            ImpreciseInstance::from_polygons(polys).expect("valid polygons")
        })
        .collect()
}

fn pipeline_and_rectangle(instances: &[ImpreciseInstance]) -> (Verdict, Verdict) {
    let mut bound_failures = Vec::new();
    let mut rect_failures = Vec::new();
    let mut worst = 1.0f64;
    let mut points = 0;
    for (t, inst) in instances.iter().enumerate() {
        let oracle = match sampling_oracle(inst, ORACLE_R) {
            Ok(o) => o,
            Err(e) => {
                bound_failures.push(format!("instance {t}: oracle {e}"));
                rect_failures.push(format!("instance {t}: oracle {e}"));
                continue;
            }
        };
        let report = match min_diam_eps(inst, PIPELINE_EPS) {
            Ok(r) => r,
            Err(e) => {
                bound_failures.push(format!("instance {t}: {e}"));
                rect_failures.push(format!("instance {t}: {e}"));
                continue;
            }
        };
        let slack = 2.0 * SQRT_2 * oracle.resolution;
        let bound = pipeline_factor(PIPELINE_EPS) * oracle.value + slack;
        if report.value > bound + 1e-9 {
            bound_failures.push(format!("instance {t}: value {} > bound {bound}", report.value));
        }
        for (i, (p, region)) in report.selection.points().iter().zip(inst.regions()).enumerate() {
            if !region.contains(p) {
                bound_failures.push(format!("instance {t}: point {i} outside its region"));
            }
        }
        if oracle.value > 0.0 {
            worst = worst.max(report.value / oracle.value);
        }
        for (i, p) in oracle.selection.points().iter().enumerate() {
            points += 1;
            if !report.rect.contains(p.to_vec2(), 1e-9) {
                rect_failures.push(format!("instance {t}: oracle point {i} outside the focus rectangle"));
            }
        }
    }
    (
        Verdict::new(
            format!("{} instances, worst value/D̂ {worst:.4}", instances.len()),
            bound_failures,
        ),
        Verdict::new(format!("{points} oracle points checked"), rect_failures),
    )
}

/// Exhaustive vertex enumeration: the minimum of `c·x` over all basic
/// feasible points of `A x <= b` (bounds included as rows).
fn vertex_oracle(c: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Option<f64> {
    let n = c.len();
    let m = rows.len();
    let mut best: Option<f64> = None;
    let mut pick = vec![0usize; n];
    fn next(pick: &mut [usize], m: usize) -> bool {
        let n = pick.len();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if pick[i] < m - n + i {
                pick[i] += 1;
                for k in i + 1..n {
                    pick[k] = pick[k - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (k, p) in pick.iter_mut().enumerate() {
        *p = k;
    }
    if m < n {
        return None;
    }
    loop {
        let mut a: Vec<Vec<f64>> = pick.iter().map(|&r| rows[r].clone()).collect();
        let mut b: Vec<f64> = pick.iter().map(|&r| rhs[r]).collect();
        if let Some(x) = gauss(&mut a, &mut b) {
            let feasible = rows
                .iter()
                .zip(rhs)
                .all(|(r, bi)| r.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>() <= bi + 1e-9);
            if feasible {
                let v: f64 = c.iter().zip(&x).map(|(u, v)| u * v).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
        if !next(&mut pick, m) {
            break;
        }
    }
    best
}

fn gauss(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for k in col..n {
                    a[r][k] -= f * a[col][k];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn simplex_soundness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51AB);
    let mut failures = Vec::new();
    let (mut optimal, mut infeasible) = (0, 0);
    for t in 0..500 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=8);
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let rows: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
        let rhs: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..10.0)).collect();
        // half the programs box the variables through bounds, half through rows
        let through_bounds = t % 2 == 0;
        let mut lp = LinearProgram::new(c.clone(), rows.clone(), rhs.clone()).expect("well formed");
        let (mut all_rows, mut all_rhs) = (rows.clone(), rhs.clone());
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let (lo, hi) = if through_bounds { (-4.0, 6.0) } else { (0.0, 10.0) };
            if through_bounds {
                lp.bounds[j] = VarBounds::between(lo, hi);
            } else {
                lp.rows.push(e.clone());
                lp.rhs.push(hi);
            }
            all_rows.push(e.clone());
            all_rhs.push(hi);
            all_rows.push(e.iter().map(|v| -v).collect());
            all_rhs.push(-lo);
        }
        let sol = match simplex_solve(&lp) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("lp {t}: {e}"));
                continue;
            }
        };
        match (vertex_oracle(&c, &all_rows, &all_rhs), sol.status) {
            (Some(v), LpStatus::Optimal) => {
                optimal += 1;
                if (v - sol.objective_value).abs() > 1e-6 {
                    failures.push(format!("lp {t}: simplex {} vs vertices {v}", sol.objective_value));
                }
            }
            (None, LpStatus::Infeasible) => infeasible += 1,
            (expected, got) => failures.push(format!("lp {t}: status {got:?}, oracle {expected:?}")),
        }
    }
    let fixtures: Vec<(&str, LinearProgram, LpStatus)> = vec![
        (
            "x <= 1 and x >= 2",
            LinearProgram::new(vec![1.0], vec![vec![1.0], vec![-1.0]], vec![1.0, -2.0]).unwrap(),
            LpStatus::Infeasible,
        ),
        (
            "x + y <= -1 over nonnegatives",
            LinearProgram::new(vec![0.0, 0.0], vec![vec![1.0, 1.0]], vec![-1.0]).unwrap(),
            LpStatus::Infeasible,
        ),
        (
            "empty box through bounds",
            {
                let mut lp = LinearProgram::new(vec![1.0], vec![vec![1.0]], vec![5.0]).unwrap();
                lp.bounds[0] = VarBounds::between(6.0, 7.0);
                lp
            },
            LpStatus::Infeasible,
        ),
        (
            "min -x over x >= 0",
            LinearProgram::new(vec![-1.0], vec![vec![-1.0]], vec![0.0]).unwrap(),
            LpStatus::Unbounded,
        ),
        (
            "min -x - y along a ray",
            LinearProgram::new(vec![-1.0, -1.0], vec![vec![1.0, -1.0], vec![-1.0, 1.0]], vec![1.0, 1.0]).unwrap(),
            LpStatus::Unbounded,
        ),
        (
            "free variable, min x",
            {
                let mut lp = LinearProgram::new(vec![1.0], vec![vec![-1.0]], vec![3.0]).unwrap();
                lp.bounds[0] = VarBounds::free();
                lp
            },
            LpStatus::Optimal,
        ),
    ];
    for (name, lp, expected) in &fixtures {
        match simplex_solve(lp) {
            Ok(s) if s.status == *expected => {}
            Ok(s) => failures.push(format!("fixture `{name}`: {:?}, expected {expected:?}", s.status)),
            Err(e) => failures.push(format!("fixture `{name}`: {e}")),
        }
    }
    Verdict::new(
        format!("500 random ({optimal} optimal, {infeasible} infeasible), {} fixtures", fixtures.len()),
        failures,
    )
}

fn lp3_shape() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5A9E);
    let mut failures = Vec::new();
    let mut cases = 0;
    for d in [2usize, 3] {
        for n in 2..=6usize {
            let mut regions = Vec::new();
            let mut constraint_total = 0;
            for _ in 0..n {
                if d == 2 {
                    let center = Vec2::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
                    let poly = loop {
                        let p = gen::polygon(&mut rng, center, 1.5, 6);
                        if p.len() >= 3 {
                            break p;
                        }
                    };
                    constraint_total += poly.len();
                    regions.push(Region::Polygon(poly));
                } else {
                    // a box plus a few redundant cuts far outside it
                    let lo: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..8.0)).collect();
                    let hi: Vec<f64> = lo.iter().map(|v| v + rng.gen_range(0.5..2.0)).collect();
                    let mut rows = HalfSpaceRegion::boxed(&lo, &hi).unwrap().rows().to_vec();
                    for _ in 0..rng.gen_range(0..3) {
                        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        rows.push(HalfSpace { normal: a, offset: 100.0 });
                    }
                    constraint_total += rows.len();
                    regions.push(Region::HalfSpaces(HalfSpaceRegion::new(d, rows).unwrap()));
                }
            }
            let inst = ImpreciseInstance::new(regions).expect("bounded regions");
            let (lp, _) = match build_lp3(&inst) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("n {n}, d {d}: {e}"));
                    continue;
                }
            };
            let pairs = n * (n - 1) / 2;
            let vars = n * d + pairs * d + 1;
            let rows = pairs + constraint_total + 2 * pairs * d;
            let listed: usize = inst.regions().iter().map(|r| region_constraints(r).len()).sum();
            if listed != constraint_total {
                failures.push(format!("n {n}, d {d}: regions list {listed} constraints, built {constraint_total}"));
            }
            if lp.num_vars() != vars || lp.num_rows() != rows {
                failures.push(format!(
                    "n {n}, d {d}: {}×{} instead of {vars} variables × {rows} rows",
                    lp.num_vars(),
                    lp.num_rows()
                ));
            }
            cases += 1;
        }
    }
    Verdict::new(format!("{cases} shapes"), failures)
}

fn helly_path() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4E11);
    let mut failures = Vec::new();
    for t in 0..20 {
        let (polys, _) = gen::with_common_point(&mut rng, 2 + t % 4, 6, 10.0, 2.0);
        let inst = ImpreciseInstance::from_polygons(polys).unwrap();
        match common_point(&inst) {
            Ok(Some(p)) => {
                for (i, r) in inst.regions().iter().enumerate() {
                    if !r.contains(&p) {
                        failures.push(format!("common instance {t}: point outside region {i}"));
                    }
                }
            }
            Ok(None) => failures.push(format!("common instance {t}: no common point found")),
            Err(e) => failures.push(format!("common instance {t}: {e}")),
        }
    }
    let mut worst = 1.0f64;
    for t in 0..10 {
        let polys = gen::triple_overlap(&mut rng, 5.0);
        let inst = ImpreciseInstance::from_polygons(polys).unwrap();
        let oracle = match sampling_oracle(&inst, ORACLE_R) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("triple instance {t}: oracle {e}"));
                continue;
            }
        };
        let report = match solve(&inst, &PipelineConfig::new(PIPELINE_EPS)) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("triple instance {t}: {e}"));
                continue;
            }
        };
        let SolveOutcome::Decomposed { values, .. } = &report.outcome else {
            failures.push(format!("triple instance {t}: not decomposed"));
            continue;
        };
        let best = values.iter().copied().fold(f64::INFINITY, f64::min);
        let bound = pipeline_factor(PIPELINE_EPS) * oracle.value + 2.0 * SQRT_2 * oracle.resolution;
        if best > bound + 1e-9 {
            failures.push(format!("triple instance {t}: best sub-instance {best} > bound {bound}"));
        }
        for (i, (p, r)) in report.selection.points().iter().zip(inst.regions()).enumerate() {
            if !r.contains(p) {
                failures.push(format!("triple instance {t}: point {i} outside its region"));
            }
        }
        if oracle.value > 0.0 {
            worst = worst.max(best / oracle.value);
        }
    }
    Verdict::new(
        format!("20 common-point, 10 triple-overlap, worst value/D̂ {worst:.4}"),
        failures,
    )
}

fn without_timing(json: &str) -> Value {
    let mut v: Value = serde_json::from_str(json).expect("report is JSON");
    v.as_object_mut().expect("report is an object").remove("wall_time_ms");
    v
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn determinism_and_equivariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD37);
    let mut failures = Vec::new();

    // repeated library runs
    let opts = RunOptions {
        oracle: true,
        svg: true,
        dump_lp: true,
        ..RunOptions::default()
    };
    for t in 0..5 {
        let ind = InstanceFile::from_indecisive(&gen::indecisive(&mut rng, 2, 3, 4, 10.0));
        let sep = InstanceFile::from_polygons(&gen::separable(&mut rng, 3, 6, 10.0, 1.5, 0.0));
        for (cmd, file) in [
            (Command::Mindcs, &ind),
            (Command::Oracle, &ind),
            (Command::Imprecise, &sep),
            (Command::Lp, &sep),
            (Command::Separability, &sep),
            (Command::Oracle, &sep),
        ] {
            match (run(cmd, file, &opts), run(cmd, file, &opts)) {
                (Ok(a), Ok(b)) => {
                    if without_timing(&a.report.to_json()) != without_timing(&b.report.to_json())
                        || a.svg != b.svg
                        || a.lp_dump != b.lp_dump
                    {
                        failures.push(format!("run {t}: `{}` output differs between runs", cmd.name()));
                    }
                }
                (Err(e), _) | (_, Err(e)) => failures.push(format!("run {t}: `{}` failed: {e}", cmd.name())),
            }
        }
    }

    // repeated binary runs, byte for byte outside the timing line
    let dir = std::env::temp_dir().join(format!("mindiam-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let input = dir.join("instance.json");
    let file = InstanceFile::from_indecisive(&gen::indecisive(&mut rng, 2, 4, 4, 10.0));
    std::fs::write(&input, file.to_canonical_json()).expect("write instance");
    let invoke = || {
        Process::new(env!("CARGO_BIN_EXE_mindiam"))
            .args(["mindcs", "--eps", "0.25", "--oracle"])
            .arg("--input")
            .arg(&input)
            .output()
            .expect("binary runs")
    };
    let (a, b) = (invoke(), invoke());
    let strip = |bytes: &[u8]| -> String {
        String::from_utf8_lossy(bytes)
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    if !a.status.success() || strip(&a.stdout) != strip(&b.stdout) {
        failures.push("binary reports differ between runs".into());
    }

    // mindcs: translation keeps the value, scaling by s multiplies it by s
    for t in 0..50 {
        let inst = gen::indecisive(&mut rng, 2, 2 + t % 3, 4, 10.0);
        let base = min_diameter_apx(&inst, 0.25).unwrap();
        let shift = [rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)];
        let s = rng.gen_range(0.2..5.0);
        let moved = min_diameter_apx(&inst.translated(&shift), 0.25).unwrap();
        let grown = min_diameter_apx(&inst.scaled(s), 0.25).unwrap();
        if !close(moved.value, base.value, 1e-9) || !close(moved.selection_diameter, base.selection_diameter, 1e-9) {
            failures.push(format!("mindcs {t}: translation changed {} to {}", base.value, moved.value));
        }
        if !close(grown.value, s * base.value, 1e-9)
            || !close(grown.selection_diameter, s * base.selection_diameter, 1e-9)
        {
            failures.push(format!("mindcs {t}: scaling by {s} gave {} for {}", grown.value, base.value));
        }
    }

    // lp: ℓ unchanged within 1e-7 under translation, scaled by s within 1e-7 relative
    for t in 0..50 {
        let polys: Vec<ConvexPolygon> = gen::imprecise_polygons(&mut rng, 2 + t % 4, 6, 10.0, 1.5);
        let inst = ImpreciseInstance::from_polygons(polys).unwrap();
        let base = sqrt_d_approx(&inst).unwrap().ell;
        let shift = [rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)];
        let s = rng.gen_range(0.2..5.0);
        let moved = sqrt_d_approx(&inst.translated(&shift)).unwrap().ell;
        let grown = sqrt_d_approx(&inst.scaled(s)).unwrap().ell;
        if (moved - base).abs() > 1e-7 {
            failures.push(format!("lp {t}: translation changed ℓ {base} to {moved}"));
        }
        if (grown - s * base).abs() > 1e-7 * (s * base).max(1.0) {
            failures.push(format!("lp {t}: scaling by {s} gave ℓ {grown} for {base}"));
        }
    }
    Verdict::new("30 repeated runs, 2 binary runs, 100 equivariance checks".into(), failures)
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Vec<Verdict>>)> = vec![
        ("MinDCS guarantee", Box::new(|| vec![mindcs_guarantee()])),
        ("LP sandwich", Box::new(|| vec![lp_sandwich()])),
        (
            "Pipeline bound / focus-rectangle containment",
            Box::new(|| {
                let inst = separable_instances();
                let (a, b) = pipeline_and_rectangle(&inst);
                vec![a, b]
            }),
        ),
        ("Simplex soundness", Box::new(|| vec![simplex_soundness()])),
        ("LP3 shape", Box::new(|| vec![lp3_shape()])),
        ("Helly path", Box::new(|| vec![helly_path()])),
        ("Determinism and equivariance", Box::new(|| vec![determinism_and_equivariance()])),
    ];
    let names = [
        "MinDCS guarantee",
        "LP sandwich",
        "Pipeline bound",
        "Focus-rectangle containment",
        "Simplex soundness",
        "LP3 shape",
        "Helly path",
        "Determinism and equivariance",
    ];
    let mut index = 0;
    let mut failed = 0;
    for (label, check) in criteria {
        let start = Instant::now();
        let verdicts = match catch_unwind(AssertUnwindSafe(|| check())) {
            Ok(v) => v,
            Err(_) => vec![Verdict::new(format!("{label} panicked"), vec!["panic".into()])],
        };
        let secs = start.elapsed().as_secs_f64();
        for v in verdicts {
            let name = names.get(index).copied().unwrap_or(label);
            index += 1;
            let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
            println!("{status} [{index}] {name}: {} ({secs:.1}s)", v.summary);
            for f in v.failures.iter().take(10) {
                println!("    {f}");
            }
            if v.failures.len() > 10 {
                println!("    ... {} more", v.failures.len() - 10);
            }
            if !v.failures.is_empty() {
                failed += 1;
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", names.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", names.len());
}
