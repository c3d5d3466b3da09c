//! Acceptance suite. Every criterion prints one PASS/FAIL line; the target
//! fails if any criterion fails. All tolerances are pinned here.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wandering::blaschke::{criterion_report, BlaschkeFactor, FactorSchedule, VerdictHint};
use wandering::hypgeo::{disc_distance, HyperbolicDomain, QuasiHyperbolicSolver};
use wandering::surgery::{
    audit_no_revisit, certify_product, cond2_gamma_bound, cond2_gamma_sweep, interpolation_constant, omega_annulus,
    sample_annulus, sample_component, JoukowskiMap, MuRule, SurgerySchedule,
};
use wandering::wander::{
    classify, degree_check, invariance_check, landau_check, pair_trace, u_field, ChainModel, MetricMode, Perturbation,
    VerdictKind, BLOCH_CONSTANT, DEFAULT_EPS_CONTRACT, DEFAULT_EPS_FLAT, DEFAULT_HORIZON, DEFAULT_WINDOW,
};
use wandering::Point;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

const SCHWARZ_PICK_TOL: f64 = 1e-12;
const TELESCOPE_TOL: f64 = 1e-12;
// Harmonic pairs only reach u_500 ~ 1e-2; threshold frozen from the oracle run.
const HARMONIC_EPS_CONTRACT: f64 = 2e-2;
const HARMONIC_PAIR_RADIUS: f64 = 0.5;
const HARMONIC_DECAY_RATIO: f64 = 0.6;
const ORACLE_AGREEMENT: f64 = 1e-9;
const SEMI_WINDOW: usize = 10;
const SEMI_RESOLUTION: f64 = 1e-13;
const INVARIANCE_TOL: f64 = 1e-10;
const FIELD_TOL: f64 = 1e-12;
const LANDAU_GRID: usize = 1024;
const JOUKOWSKI_TOL: f64 = 1e-12;
const SWEEP_TOL: f64 = 1e-9;
const ARGMAX_TOL: f64 = 1e-3;
const INTERPOLATION_TOL: f64 = 1e-12;
const TAIL_TOL: f64 = 1e-6;
const QH_GRID: usize = 1024;
const QH_REL_TOL: f64 = 0.05;

fn c(re: f64, im: f64) -> Point {
    Point::new(re, im)
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> Point {
    Point::from_polar(radius * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(0.0..TAU))
}

/// Plain disc distance, written out independently of the crate.
fn oracle_distance(z: Point, w: Point) -> f64 {
    2.0 * ((z - w).norm() / (1.0 - w.conj() * z).norm()).atanh()
}

/// Orbit distances under `b_1, b_2, ...` applied directly in the disc.
fn oracle_distances(a: impl Fn(usize) -> f64, mut z: Point, mut w: Point, horizon: usize) -> Vec<f64> {
    let mut out = vec![oracle_distance(z, w)];
    for n in 1..=horizon {
        let an = a(n);
        let b = |x: Point| x * (x + an) / (1.0 + an * x);
        z = b(z);
        w = b(w);
        out.push(oracle_distance(z, w));
    }
    out
}

fn schwarz_pick() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let schedule = match trial % 4 {
            0 => FactorSchedule::Harmonic,
            1 => FactorSchedule::Geometric {
                q: rng.gen_range(0.05..0.95),
            },
            2 => FactorSchedule::Constant {
                a: rng.gen_range(0.0..0.99),
            },
            _ => FactorSchedule::List {
                values: (0..60).map(|_| rng.gen_range(0.0..0.999)).collect(),
                tail: None,
            },
        };
        let model = ChainModel::new(schedule).map_err(|e| e.to_string())?;
        let z = random_point(&mut rng, 0.95);
        let w = random_point(&mut rng, 0.95);
        let trace = pair_trace(&model, z, w, 50, MetricMode::ExactDiscModel).map_err(|e| e.to_string())?;
        for pair in trace.values.windows(2) {
            let rise = pair[1] - pair[0];
            worst = worst.max(rise);
            if rise > SCHWARZ_PICK_TOL {
                violations += 1;
            }
        }
    }
    if violations == 0 {
        Ok(format!("1000 trials, largest rise {worst:e}"))
    } else {
        Err(format!(
            "{violations} rises above {SCHWARZ_PICK_TOL:e}, largest {worst:e}"
        ))
    }
}

fn telescoping() -> Outcome {
    let report = criterion_report(&FactorSchedule::<f64>::Harmonic, 100).map_err(|e| e.to_string())?;
    let err = (report.derivative_product - 1.0 / 101.0).abs();
    if err > TELESCOPE_TOL {
        return Err(format!(
            "product {} differs from 1/101 by {err:e}",
            report.derivative_product
        ));
    }
    if report.verdict_hint != VerdictHint::Diverging {
        return Err(format!("hint {:?}", report.verdict_hint));
    }
    Ok(format!("product error {err:e}, hint diverging"))
}

fn contraction_transfer() -> Outcome {
    let model = ChainModel::new(FactorSchedule::Harmonic).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let horizon = 500;
    let mut worst_u = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for _ in 0..20 {
        let z = random_point(&mut rng, HARMONIC_PAIR_RADIUS);
        let w = random_point(&mut rng, HARMONIC_PAIR_RADIUS);
        let trace = pair_trace(&model, z, w, horizon, MetricMode::ExactDiscModel).map_err(|e| e.to_string())?;
        let oracle = oracle_distances(|n| n as f64 / (n as f64 + 1.0), z, w, horizon);
        let gap = (trace.values[horizon] - oracle[horizon]).abs();
        if gap > ORACLE_AGREEMENT {
            return Err(format!("trace and oracle disagree by {gap:e}"));
        }
        let v = classify(&trace, HARMONIC_EPS_CONTRACT, DEFAULT_EPS_FLAT, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
        if v.kind != VerdictKind::Contracting {
            return Err(format!(
                "pair {z} {w}: {} with u_N = {:e}",
                v.kind.as_str(),
                trace.values[horizon]
            ));
        }
        worst_u = worst_u.max(oracle[horizon]);
        worst_ratio = worst_ratio.max(oracle[horizon] / oracle[horizon / 2]);
    }
    if worst_ratio > HARMONIC_DECAY_RATIO {
        return Err(format!("u_N / u_(N/2) reached {worst_ratio}"));
    }
    Ok(format!(
        "20 pairs contracting, max u_500 {worst_u:e}, max u_500/u_250 {worst_ratio:.3}"
    ))
}

fn semi_contraction() -> Outcome {
    let schedule = FactorSchedule::Geometric { q: 0.25 };
    let model = ChainModel::new(schedule).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let horizon = 60;
    let mut pairs = 0;
    let mut least_limit = f64::INFINITY;
    while pairs < 20 {
        let w = random_point(&mut rng, 0.9);
        // stay off the base orbit and off the second preimage -a_1 of 0
        if w.norm() < 0.05 || (w + 0.75).norm() < 0.05 {
            continue;
        }
        pairs += 1;
        let trace =
            pair_trace(&model, c(0.0, 0.0), w, horizon, MetricMode::ExactDiscModel).map_err(|e| e.to_string())?;
        let v = classify(&trace, DEFAULT_EPS_CONTRACT, f64::MIN_POSITIVE, SEMI_WINDOW).map_err(|e| e.to_string())?;
        if v.kind != VerdictKind::SemiContracting || !(v.limit_estimate > 0.0) {
            return Err(format!(
                "w = {w}: {} with limit {:e}",
                v.kind.as_str(),
                v.limit_estimate
            ));
        }
        least_limit = least_limit.min(v.limit_estimate);
        for m in 0..=horizon - SEMI_WINDOW {
            let d = trace.decrease(m, m + SEMI_WINDOW);
            if !(d > 0.0) {
                return Err(format!("w = {w}: no decrease over [{m}, {}]", m + SEMI_WINDOW));
            }
            let raw = trace.values[m] - trace.values[m + SEMI_WINDOW];
            if d >= SEMI_RESOLUTION && !(raw > 0.0) {
                return Err(format!(
                    "w = {w}: resolvable window [{m}, {}] shows no raw decrease",
                    m + SEMI_WINDOW
                ));
            }
        }
    }
    Ok(format!("20 pairs semi-contracting, least limit {least_limit:.4}"))
}

fn eventually_isometric() -> Outcome {
    let model = ChainModel::new(FactorSchedule::Geometric { q: 0.25 })
        .map_err(|e| e.to_string())?
        .with_isometry_from(10, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let z = random_point(&mut rng, 0.8);
        let w = random_point(&mut rng, 0.8);
        let trace = pair_trace(&model, z, w, DEFAULT_HORIZON, MetricMode::ExactDiscModel).map_err(|e| e.to_string())?;
        let v = classify(&trace, DEFAULT_EPS_CONTRACT, DEFAULT_EPS_FLAT, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
        if v.kind != VerdictKind::EventuallyIsometric || v.isometry_onset != Some(10) {
            return Err(format!("{z} {w}: {} onset {:?}", v.kind.as_str(), v.isometry_onset));
        }
    }
    Ok("10 pairs eventually isometric with onset 10".into())
}

fn invariance() -> Outcome {
    let base = ChainModel::new(FactorSchedule::Geometric { q: 0.25 }).map_err(|e| e.to_string())?;
    let perturbed = base
        .clone()
        .with_perturbation(Perturbation::new(6))
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let grid: Vec<Point> = (0..50).map(|_| random_point(&mut rng, 0.8)).collect();
    let z0 = c(0.2, -0.1);
    let mut report = Vec::new();
    for (label, model) in [("unperturbed", &base), ("perturbed", &perturbed)] {
        let worst = invariance_check(model, z0, &grid, 40).map_err(|e| e.to_string())?;
        if !(worst < INVARIANCE_TOL) {
            return Err(format!("{label}: discrepancy {worst:e}"));
        }
        report.push(format!("{label} {worst:e}"));
    }
    Ok(report.join(", "))
}

fn monotone_convergence() -> Outcome {
    let n = 20;
    let grid: Vec<Point> = (0..n * n)
        .map(|k| {
            let s = |t: usize| 0.65 * (2.0 * (t as f64 + 0.5) / n as f64 - 1.0);
            c(s(k % n), s(k / n))
        })
        .collect();
    let mut worst = 0.0f64;
    for schedule in [FactorSchedule::Geometric { q: 0.25 }, FactorSchedule::Harmonic] {
        let model = ChainModel::new(schedule).map_err(|e| e.to_string())?;
        let field = u_field(&model, c(0.1, 0.1), &grid, 40, 40).map_err(|e| e.to_string())?;
        for pair in field.gaps.windows(2) {
            let rise = pair[1].1 - pair[0].1;
            worst = worst.max(rise);
            if rise > FIELD_TOL {
                return Err(format!("gap rises by {rise:e} at n = {}", pair[1].0));
            }
        }
    }
    Ok(format!("400-point grid, two schedules, largest rise {worst:e}"))
}

fn hyperbolic_landau() -> Outcome {
    let mut slack = f64::INFINITY;
    for k in 1..=9 {
        let a = k as f64 / 10.0;
        let f = BlaschkeFactor::new(a).map_err(|e| e.to_string())?;
        let r = landau_check(&f, LANDAU_GRID).map_err(|e| e.to_string())?;
        let required = 2.0 * BLOCH_CONSTANT * 0.5f64.tanh() * a;
        let margin = r.measured_radius + r.resolution - required;
        if margin < 0.0 || !r.passed {
            return Err(format!(
                "a = {a}: measured {} + {} < {required}",
                r.measured_radius, r.resolution
            ));
        }
        slack = slack.min(margin);
    }
    Ok(format!("9 factors, least margin {slack:.4}"))
}

fn joukowski() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r: f64 = rng.gen_range(0.01..0.9);
        let mu = rng.gen_range(1.01..100.0) / r;
        let map = JoukowskiMap::<f64>::new(mu, r).map_err(|e| e.to_string())?;
        let mr = mu * r;
        let err = (map.lambda() * (mr - 1.0 / mr) - r).abs() / r;
        worst = worst.max(err);
        if err > JOUKOWSKI_TOL {
            return Err(format!("μ = {mu}, r = {r}: relative error {err:e}"));
        }
    }
    let mut sweep_worst = 0.0f64;
    for (mu, r) in [(20.0f64, 0.1f64), (40.0, 0.1), (15.0, 0.2), (3.0, 1.0 / 1.5)] {
        let map = JoukowskiMap::<f64>::new(mu, r).map_err(|e| e.to_string())?;
        let s = cond2_gamma_sweep(&map, 4096).map_err(|e| e.to_string())?;
        let closed = 2.0 / (mu * mu * r * r - 1.0);
        let err = (s.value - closed).abs();
        if err > SWEEP_TOL || (cond2_gamma_bound(&map) - closed).abs() > SWEEP_TOL {
            return Err(format!("μ = {mu}, r = {r}: sweep {} vs {closed}", s.value));
        }
        if (s.argmax - FRAC_PI_2).abs() > ARGMAX_TOL {
            return Err(format!("μ = {mu}, r = {r}: argmax {}", s.argmax));
        }
        sweep_worst = sweep_worst.max(err);
    }
    Ok(format!("identity error {worst:e}, sweep error {sweep_worst:e}"))
}

fn interpolation() -> Outcome {
    let trivial = interpolation_constant(0.0, 0.0, 0.1, 0.2, 2).map_err(|e| e.to_string())?;
    if trivial.c != 1.0 || trivial.k != Some(1.0) {
        return Err(format!("zero defects give C = {}, K = {:?}", trivial.c, trivial.k));
    }
    for (r, rp, k) in [(0.1f64, 0.2f64, 2u32), (0.05, 0.3, 1), (0.3, 0.9, 3)] {
        let ic = interpolation_constant(k as f64 * (rp / r).ln(), 0.0, r, rp, k).map_err(|e| e.to_string())?;
        if ic.c.abs() > INTERPOLATION_TOL {
            return Err(format!("boundary case r = {r}, r' = {rp}, k = {k}: C = {:e}", ic.c));
        }
    }
    Ok("C = K = 1 at zero defects, C = 0 on the boundary".into())
}

fn reference_plan(schedule: FactorSchedule<f64>) -> Result<SurgerySchedule<f64>, String> {
    let chain = ChainModel::new(schedule).map_err(|e| e.to_string())?;
    SurgerySchedule::new(
        chain,
        MuRule::Geometric {
            scale: 10.0,
            ratio: 2.0,
        },
        0.1,
        0.2,
        5,
    )
    .map_err(|e| e.to_string())
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wandering"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by a signal")?;
    Ok((
        code,
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr),
    ))
}

fn surgery_certification(scratch: &Path) -> Outcome {
    let plan = reference_plan(FactorSchedule::Geometric { q: 0.25 })?;
    let report = certify_product(&plan, 40).map_err(|e| e.to_string())?;
    if let Some(bad) = report.records.iter().find(|r| !(r.c > 0.0)) {
        return Err(format!("C_{} = {}", bad.n, bad.c));
    }
    let ks: Vec<f64> = report.records.iter().map(|r| r.k.unwrap_or(f64::INFINITY)).collect();
    let last = &ks[ks.len() - 20..];
    if last.windows(2).any(|p| p[1] > p[0]) || !(last[19] - 1.0 < 1e-6) {
        return Err(format!("K_n not decreasing to 1 over the last 20 indices: {last:?}"));
    }
    if !report.certified || !(report.tail_bound < TAIL_TOL) {
        return Err(format!("certified {}, tail {:e}", report.certified, report.tail_bound));
    }

    let counter = scratch.join("counter.toml");
    fs::write(
        &counter,
        "[schedule]\nfamily = \"constant\"\na = 0.5\n\n[surgery]\nr = 0.1\nr_prime = 0.2\nN = 5\nn_max = 40\n",
    )
    .map_err(|e| e.to_string())?;
    let out = scratch.join("counter");
    let (code, text) = run_cli(&[
        "surgery",
        "--config",
        counter.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ])?;
    if code != 2 {
        return Err(format!("counter-schedule exit status {code}: {text}"));
    }
    Ok(format!(
        "K_inf partial {:.6}, tail {:e}; counter-schedule exit 2",
        report.k_infinity_partial, report.tail_bound
    ))
}

fn degree() -> Outcome {
    let schedules = [
        FactorSchedule::Geometric { q: 0.25 },
        FactorSchedule::Harmonic,
        FactorSchedule::Constant { a: 0.5 },
    ];
    for schedule in schedules {
        let model = ChainModel::new(schedule.clone()).map_err(|e| e.to_string())?;
        for n in [1usize, 5, 10] {
            let centre = model.center(n + 1);
            let targets: Vec<Point> = (0..10)
                .map(|k| centre + Point::from_polar(0.05, k as f64 * TAU / 10.0 + 0.1))
                .collect();
            let counts = degree_check(&model, n, &targets).map_err(|e| e.to_string())?;
            if counts.iter().any(|&d| d != 2) {
                return Err(format!("{schedule:?}, n = {n}: windings {counts:?}"));
            }
        }
    }
    Ok("winding 2 for 10 targets, 3 schedules, n in {1, 5, 10}".into())
}

fn quasi_hyperbolic() -> Outcome {
    let solver = QuasiHyperbolicSolver::new(&HyperbolicDomain::UnitDisc, QH_GRID).map_err(|e| e.to_string())?;
    let xs = [0.3, 0.5, 0.7, 0.9];
    let radial = solver
        .distances_from(c(0.0, 0.0), &xs.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (x, est) in xs.iter().zip(&radial) {
        let exact = (1.0 / (1.0 - x)).ln();
        let rel = (est.value - exact).abs() / exact;
        worst = worst.max(rel);
        if rel > QH_REL_TOL {
            return Err(format!("x = {x}: {} vs {exact}", est.value));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for _ in 0..20 {
        let z = random_point(&mut rng, 0.9);
        let ws: Vec<Point> = (0..10).map(|_| random_point(&mut rng, 0.9)).collect();
        let ks = solver.distances_from(z, &ws).map_err(|e| e.to_string())?;
        for (w, k) in ws.iter().zip(&ks) {
            let d = disc_distance(z, *w).map_err(|e| e.to_string())?;
            let tol = QH_REL_TOL * k.value;
            if d < k.value / 2.0 - tol || d > 2.0 * k.value + tol {
                return Err(format!("{z} {w}: d = {d}, k = {}", k.value));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "radial relative error {worst:.4}, two-sided bound on {checked} pairs"
    ))
}

fn no_revisit() -> Outcome {
    let plan = reference_plan(FactorSchedule::Geometric { q: 0.25 })?;
    let samples = sample_component(&plan, 500, 14).map_err(|e| e.to_string())?;
    let report = audit_no_revisit(&plan, &samples, 50).map_err(|e| e.to_string())?;
    if report.max_visits() > 1 {
        return Err(format!("an orbit visits an annulus {} times", report.max_visits()));
    }
    let (s, t) = omega_annulus(&plan, 0.25, 50)
        .map_err(|e| e.to_string())?
        .ok_or("no Ω-annulus detected")?;
    let centre = plan.chain.center(plan.start);
    let omega: Vec<Point> = sample_annulus(s, t, 200, 15).into_iter().map(|z| z + centre).collect();
    let inside = audit_no_revisit(&plan, &omega, 50).map_err(|e| e.to_string())?;
    let entries: u32 = inside.orbits.iter().map(|o| o.visits.values().sum::<u32>()).sum();
    if entries > 0 {
        return Err(format!("Ω samples entered operated annuli {entries} times"));
    }
    Ok(format!(
        "500 orbits, max visits {}; Ω = ({s:.3}, {t:.3}) never enters",
        report.max_visits()
    ))
}

fn determinism(scratch: &Path) -> Outcome {
    let config = scratch.join("determinism.toml");
    fs::write(
        &config,
        "horizon = 40\n\n[classify]\nrandom_pairs = 5\nwindow = 10\n\n[qhd]\nrandom_pairs = 4\nresolution = 128\n\n[audit]\nsamples = 50\n\n[landau]\nresolution = 256\n",
    )
    .map_err(|e| e.to_string())?;
    let commands = ["classify", "ufield", "criterion", "landau", "surgery", "qhd", "audit"];
    let mut files = 0;
    for cmd in commands {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let dir = scratch.join(format!("det-{cmd}-{run}"));
            let (code, text) = run_cli(&[
                cmd,
                "--config",
                config.to_str().unwrap(),
                "--seed",
                "7",
                "--out",
                dir.to_str().unwrap(),
            ])?;
            if code == 1 {
                return Err(format!("{cmd} failed: {text}"));
            }
            let mut entries: Vec<_> = fs::read_dir(&dir)
                .map_err(|e| e.to_string())?
                .map(|e| e.unwrap().path())
                .collect();
            entries.sort();
            let contents: Vec<(String, Vec<u8>)> = entries
                .iter()
                .map(|p| {
                    (
                        p.file_name().unwrap().to_string_lossy().into_owned(),
                        fs::read(p).unwrap(),
                    )
                })
                .collect();
            outputs.push(contents);
        }
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            return Err(format!("{cmd} outputs differ between runs"));
        }
        files += outputs[0].len();
    }
    Ok(format!("7 commands, {files} files byte-identical"))
}

fn main() {
    let scratch = tempfile::tempdir().expect("scratch directory");
    let dir = scratch.path().to_path_buf();
    let d1 = dir.clone();
    let d2 = dir;
    let criteria: Vec<Criterion> = vec![
        ("Schwarz-Pick monotonicity", Box::new(schwarz_pick)),
        ("telescoping criterion", Box::new(telescoping)),
        ("contraction transfer", Box::new(contraction_transfer)),
        ("semi-contraction", Box::new(semi_contraction)),
        ("eventually isometric", Box::new(eventually_isometric)),
        ("invariance of u", Box::new(invariance)),
        ("monotone convergence of u_n", Box::new(monotone_convergence)),
        ("hyperbolic Landau", Box::new(hyperbolic_landau)),
        ("Joukowski identity and cond2", Box::new(joukowski)),
        ("interpolation constant", Box::new(interpolation)),
        ("surgery certification", Box::new(move || surgery_certification(&d1))),
        ("degree check", Box::new(degree)),
        ("quasi-hyperbolic estimator", Box::new(quasi_hyperbolic)),
        ("no-revisit audit", Box::new(no_revisit)),
        ("determinism", Box::new(move || determinism(&d2))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
