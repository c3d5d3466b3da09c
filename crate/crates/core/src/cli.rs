//! Command-line front end. Each command reads the shared configuration, runs
//! one experiment and writes CSV/JSON files into the output directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::blaschke::{criterion_report, detect_annulus, estimate_limit_function, BlaschkeFactor, Composition};
use crate::config::{ExperimentConfig, QhdDomain};
use crate::hypgeo::{disc_distance, HyperbolicDomain, QuasiHyperbolicSolver, RasterGrid};
use crate::surgery::{
    audit_no_revisit, certify_product, omega_annulus, report_csv, report_json, sample_annulus, sample_component,
    AuditOutcome,
};
use crate::wander::{
    classify, landau_check, pair_trace, trace_csv, u_field, verdict_json, VerdictKind, DEFAULT_EPS_CONTRACT,
    DEFAULT_EPS_FLAT, DEFAULT_HORIZON, DEFAULT_WINDOW,
};
use crate::{Error, Point, Result};

#[derive(Debug, Parser)]
#[command(
    name = "wandering",
    version,
    about = "Internal dynamics of wandering domains: chain models, traces and surgery plans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML experiment configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Seed for every random choice; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Horizon N; overrides the config.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Classify orbit-pair traces. Writes trace.csv (n,u_lower,u_exact,u_upper), verdict.json
    /// and, with random pairs, pairs.csv (index,w_re,w_im,kind,limit_estimate,isometry_onset).
    Classify,
    /// Limit distance field on a grid. Writes ufield.csv (x,y,u) and ufield_gaps.csv (n,gap).
    Ufield,
    /// Contraction criterion, limit stabilisation and annulus scan. Writes criterion.json and
    /// profile.csv (radius,min_modulus).
    Criterion,
    /// Hyperbolic Landau check. Writes landau.csv
    /// (label,derivative_norm,guaranteed_radius,measured_radius,resolution,passed).
    Landau,
    /// Certify the dilatation product. Writes surgery.csv (n,delta0,delta1,C,K) and surgery.json.
    Surgery,
    /// Quasi-hyperbolic distances. Writes qhd.csv (z_re,z_im,w_re,w_im,qh_distance,cell_size,hyperbolic).
    Qhd,
    /// No-revisit audit of the operated map. Writes audit.csv
    /// (index,set,x,y,outcome,outcome_index,max_visits) and audit.json.
    Audit,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Ufield => "ufield",
            Command::Criterion => "criterion",
            Command::Landau => "landau",
            Command::Surgery => "surgery",
            Command::Qhd => "qhd",
            Command::Audit => "audit",
        }
    }
}

/// Result of a command: whether the experiment came out positive, and a one-line summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub positive: bool,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    /// 0 for a positive result, 2 for a valid but negative one.
    pub fn exit_code(&self) -> i32 {
        if self.positive {
            0
        } else {
            2
        }
    }
}

struct Ctx {
    cfg: ExperimentConfig,
    out: PathBuf,
    base_dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Ctx {
    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.out.join(name);
        fs::write(&path, contents)?;
        self.files.push(path);
        Ok(())
    }

    fn horizon(&self, default: usize) -> usize {
        self.cfg.horizon.unwrap_or(default)
    }
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn random_disc_points(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Point> {
    (0..count)
        .map(|_| {
            let rho = radius * rng.gen_range(0.0f64..1.0).sqrt();
            Point::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.horizon.is_some() {
        cfg.horizon = cli.horizon;
    }
    let base_dir = cli
        .config
        .as_deref()
        .and_then(Path::parent)
        .map(Path::to_path_buf)
        .unwrap_or_default();
    fs::create_dir_all(&cli.out)?;
    let mut ctx = Ctx {
        cfg,
        out: cli.out.clone(),
        base_dir,
        files: Vec::new(),
    };
    let (module, result) = match cli.command {
        Command::Classify => ("wander", run_classify(&mut ctx)),
        Command::Ufield => ("wander", run_ufield(&mut ctx)),
        Command::Criterion => ("blaschke", run_criterion(&mut ctx)),
        Command::Landau => ("wander", run_landau(&mut ctx)),
        Command::Surgery => ("surgery", run_surgery(&mut ctx)),
        Command::Qhd => ("hypgeo", run_qhd(&mut ctx)),
        Command::Audit => ("surgery", run_audit(&mut ctx)),
    };
    let (positive, summary) = result.map_err(|e| match e {
        e @ (Error::Config { .. } | Error::Io(_)) => e,
        e => e.in_module(module),
    })?;
    Ok(Outcome {
        positive,
        summary: format!("{}: {summary}", cli.command.name()),
        files: ctx.files,
    })
}

fn run_classify(ctx: &mut Ctx) -> Result<(bool, String)> {
    let model = ctx.cfg.chain()?;
    let c = ctx.cfg.classify.clone().unwrap_or_default();
    let horizon = ctx.horizon(DEFAULT_HORIZON);
    let mode = ctx.cfg.mode();
    let eps_contract = c.eps_contract.unwrap_or(DEFAULT_EPS_CONTRACT);
    let eps_flat = c.eps_flat.unwrap_or(DEFAULT_EPS_FLAT);
    let window = c.window.unwrap_or(DEFAULT_WINDOW);
    let z0 = point(c.z0.unwrap_or([0.2, 0.0]));
    let mut partners = vec![point(c.w.unwrap_or([0.5, 0.0]))];
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed());
    partners.extend(random_disc_points(
        &mut rng,
        c.random_pairs.unwrap_or(0),
        c.pair_radius.unwrap_or(0.9),
    ));

    let mut table = String::from("index,w_re,w_im,kind,limit_estimate,isometry_onset\n");
    let mut undecided = 0;
    let mut first = None;
    for (i, w) in partners.iter().enumerate() {
        let trace = pair_trace(&model, z0, *w, horizon, mode)?;
        if let Some(e) = trace.escape {
            return Err(Error::domain(format!("orbit of {w} escapes at index {e}")));
        }
        let v = classify(&trace, eps_contract, eps_flat, window)?;
        if v.kind == VerdictKind::Undecided {
            undecided += 1;
        }
        let onset = v.isometry_onset.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(
            table,
            "{i},{},{},{},{},{onset}",
            num(w.re),
            num(w.im),
            v.kind.as_str(),
            num(v.limit_estimate)
        );
        if i == 0 {
            ctx.write("trace.csv", &trace_csv(&trace))?;
            ctx.write("verdict.json", &verdict_json(&v))?;
            first = Some(v);
        }
    }
    if partners.len() > 1 {
        ctx.write("pairs.csv", &table)?;
    }
    let v = first.expect("at least one pair");
    Ok((
        undecided == 0,
        format!(
            "{} (limit {:e}), {} pair(s), {undecided} undecided",
            v.kind.as_str(),
            v.limit_estimate,
            partners.len()
        ),
    ))
}

fn run_ufield(ctx: &mut Ctx) -> Result<(bool, String)> {
    let model = ctx.cfg.chain()?;
    let c = ctx.cfg.ufield.clone().unwrap_or_default();
    let horizon = ctx.horizon(60);
    let n = c.grid.unwrap_or(20);
    let radius = c.radius.unwrap_or(0.7);
    let z0 = point(c.z0.unwrap_or([0.2, 0.0]));
    if n == 0 || !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Config {
            line: 0,
            key: "ufield".into(),
            message: "need grid >= 1 and 0 < radius < 1".into(),
        });
    }
    let grid: Vec<Point> = (0..n * n)
        .map(|k| {
            let s = |t: usize| radius * (2.0 * (t as f64 + 0.5) / n as f64 - 1.0);
            Point::new(s(k % n), s(k / n))
        })
        .collect();
    let field = u_field(&model, z0, &grid, horizon, c.window.unwrap_or(20))?;
    let mut csv = String::from("x,y,u\n");
    for (p, u) in field.points.iter().zip(&field.values) {
        let _ = writeln!(csv, "{},{},{}", num(p.re), num(p.im), num(*u));
    }
    ctx.write("ufield.csv", &csv)?;
    let mut gaps = String::from("n,gap\n");
    for (k, g) in &field.gaps {
        let _ = writeln!(gaps, "{k},{}", num(*g));
    }
    ctx.write("ufield_gaps.csv", &gaps)?;
    let monotone = field.gaps.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    Ok((monotone, format!("{} points, gaps monotone: {monotone}", grid.len())))
}

fn run_criterion(ctx: &mut Ctx) -> Result<(bool, String)> {
    let schedule = ctx.cfg.schedule()?;
    let c = ctx.cfg.criterion.clone().unwrap_or_default();
    let n = ctx.horizon(100);
    let report = criterion_report(&schedule, n)?;
    let scan = detect_annulus(
        &schedule,
        c.c.unwrap_or(0.1),
        n,
        c.radial_samples.unwrap_or(200),
        c.angular_samples.unwrap_or(128),
    )?;
    let limit = estimate_limit_function(
        &schedule,
        &[Point::new(0.5, 0.0)],
        c.limit_tol.unwrap_or(1e-10),
        c.limit_cap.unwrap_or(10_000),
    )?;
    let summary = json!({
        "n": n,
        "partial_sum": report.partial_sum,
        "derivative_product": report.derivative_product,
        "verdict_hint": report.verdict_hint,
        "annulus": scan.annulus.map(|(s, t)| [s, t]),
        "warnings": scan.warnings,
        "limit_at_half": [limit.values[0].re, limit.values[0].im],
        "stabilized_at": limit.stabilized_at,
    });
    ctx.write("criterion.json", &serde_json::to_string_pretty(&summary).expect("json"))?;
    let mut profile = String::from("radius,min_modulus\n");
    for (r, m) in scan.radii.iter().zip(&scan.min_modulus) {
        let _ = writeln!(profile, "{},{}", num(*r), num(*m));
    }
    ctx.write("profile.csv", &profile)?;
    Ok((
        true,
        format!(
            "partial sum {:e}, B_N'(0) = {:e}, hint {:?}",
            report.partial_sum, report.derivative_product, report.verdict_hint
        ),
    ))
}

fn run_landau(ctx: &mut Ctx) -> Result<(bool, String)> {
    let c = ctx.cfg.landau.clone().unwrap_or_default();
    let resolution = c.resolution.unwrap_or(1024);
    let mut csv = String::from("label,derivative_norm,guaranteed_radius,measured_radius,resolution,passed\n");
    let mut failures = 0;
    let mut total = 0;
    let mut record = |label: String, r: crate::wander::LandauReport| {
        total += 1;
        if !r.passed {
            failures += 1;
        }
        let _ = writeln!(
            csv,
            "{label},{},{},{},{},{}",
            num(r.derivative_norm),
            num(r.guaranteed_radius),
            num(r.measured_radius),
            num(r.resolution),
            r.passed
        );
    };
    if let Some(n) = c.compose {
        let map = Composition {
            schedule: ctx.cfg.schedule()?,
            n,
        };
        record(format!("B_{n}"), landau_check(&map, resolution)?);
    }
    if c.compose.is_none() || c.a.is_some() {
        for a in
            c.a.clone()
                .unwrap_or_else(|| (1..=9).map(|k| k as f64 / 10.0).collect())
        {
            record(format!("b_{a}"), landau_check(&BlaschkeFactor::new(a)?, resolution)?);
        }
    }
    ctx.write("landau.csv", &csv)?;
    Ok((failures == 0, format!("{} of {total} maps pass", total - failures)))
}

fn run_surgery(ctx: &mut Ctx) -> Result<(bool, String)> {
    let plan = ctx.cfg.surgery_plan()?;
    let n_max = ctx
        .cfg
        .surgery
        .as_ref()
        .and_then(|s| s.n_max)
        .or(ctx.cfg.horizon)
        .unwrap_or(40);
    let report = certify_product(&plan, n_max)?;
    ctx.write("surgery.csv", &report_csv(&report))?;
    ctx.write("surgery.json", &report_json(&report))?;
    let status = match (report.certified, report.infeasible_at) {
        (true, _) => "certified".to_string(),
        (false, Some(n)) => format!("infeasible at n = {n}"),
        (false, None) => "uncertified".to_string(),
    };
    Ok((
        report.certified,
        format!(
            "{status}, K_inf partial {:e}, tail {:e}",
            report.k_infinity_partial, report.tail_bound
        ),
    ))
}

fn run_qhd(ctx: &mut Ctx) -> Result<(bool, String)> {
    let c = ctx.cfg.qhd.clone().unwrap_or_default();
    let domain = match c.domain.unwrap_or(QhdDomain::Disc) {
        QhdDomain::Disc => HyperbolicDomain::UnitDisc,
        QhdDomain::Annulus => HyperbolicDomain::annulus(c.inner_radius.unwrap_or(0.3))?,
        QhdDomain::Raster => {
            let rel = c.raster.clone().ok_or_else(|| Error::Config {
                line: 0,
                key: "qhd.raster".into(),
                message: "raster domain needs a raster file".into(),
            })?;
            let path = ctx.base_dir.join(rel);
            HyperbolicDomain::Raster(RasterGrid::parse(&fs::read_to_string(&path)?)?)
        }
    };
    let solver = QuasiHyperbolicSolver::new(&domain, c.resolution.unwrap_or(512))?;
    let mut pairs = Vec::new();
    if let (Some(z), Some(w)) = (c.z, c.w) {
        pairs.push((point(z), point(w)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed());
    let radius = c.pair_radius.unwrap_or(0.8);
    let want = c.random_pairs.unwrap_or(if pairs.is_empty() { 10 } else { 0 });
    let mut attempts = 0;
    while pairs.len() < want + usize::from(c.z.is_some() && c.w.is_some()) && attempts < 100 * (want + 1) {
        attempts += 1;
        let p = random_disc_points(&mut rng, 2, radius);
        if domain.contains(p[0]) && domain.contains(p[1]) {
            pairs.push((p[0], p[1]));
        }
    }
    let mut csv = String::from("z_re,z_im,w_re,w_im,qh_distance,cell_size,hyperbolic\n");
    for (z, w) in &pairs {
        let est = solver.distance(*z, *w)?;
        let hyp = match domain {
            HyperbolicDomain::UnitDisc => num(disc_distance(*z, *w)?),
            _ => String::new(),
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{hyp}",
            num(z.re),
            num(z.im),
            num(w.re),
            num(w.im),
            num(est.value),
            num(est.cell_size)
        );
    }
    ctx.write("qhd.csv", &csv)?;
    Ok((
        true,
        format!("{} pair(s) at cell size {:e}", pairs.len(), solver.cell_size()),
    ))
}

fn run_audit(ctx: &mut Ctx) -> Result<(bool, String)> {
    let plan = ctx.cfg.surgery_plan()?;
    let c = ctx.cfg.audit.clone().unwrap_or_default();
    let horizon = ctx.horizon(50);
    let seed = ctx.cfg.seed();
    let random = sample_component(&plan, c.samples.unwrap_or(500), seed)?;
    let threshold = c.omega_threshold.unwrap_or(0.25);
    let omega = omega_annulus(&plan, threshold, horizon)?;
    let centre = plan.chain.center(plan.start);
    let omega_samples: Vec<Point> = match omega {
        Some((s, t)) => sample_annulus(s, t, c.omega_samples.unwrap_or(100), seed.wrapping_add(1))
            .into_iter()
            .map(|z| z + centre)
            .collect(),
        None => Vec::new(),
    };
    let rep = audit_no_revisit(&plan, &random, horizon)?;
    let omega_rep = audit_no_revisit(&plan, &omega_samples, horizon)?;

    let mut csv = String::from("index,set,x,y,outcome,outcome_index,max_visits\n");
    for (set, report) in [("random", &rep), ("omega", &omega_rep)] {
        for (i, o) in report.orbits.iter().enumerate() {
            let (kind, idx) = match o.outcome {
                AuditOutcome::Completed => ("completed", String::new()),
                AuditOutcome::PoleCapture { index } => ("pole_capture", index.to_string()),
                AuditOutcome::Escaped { index } => ("escaped", index.to_string()),
            };
            let _ = writeln!(
                csv,
                "{i},{set},{},{},{kind},{idx},{}",
                num(o.start.re),
                num(o.start.im),
                o.max_visits()
            );
        }
    }
    ctx.write("audit.csv", &csv)?;
    let omega_visits: u32 = omega_rep.orbits.iter().map(|o| o.visits.values().sum::<u32>()).sum();
    let passed = rep.max_visits() <= 1 && omega_visits == 0 && omega.is_some();
    let summary = json!({
        "samples": random.len(),
        "horizon": horizon,
        "max_visits": rep.max_visits(),
        "pole_captures": rep.pole_captures(),
        "escapes": rep.orbits.iter().filter(|o| matches!(o.outcome, AuditOutcome::Escaped { .. })).count(),
        "omega_annulus": omega.map(|(s, t)| [s, t]),
        "omega_samples": omega_samples.len(),
        "omega_visits": omega_visits,
        "passed": passed,
        "note": crate::surgery::SURROGATE_NOTE,
    });
    ctx.write("audit.json", &serde_json::to_string_pretty(&summary).expect("json"))?;
    Ok((
        passed,
        format!("max visits {}, omega visits {omega_visits}", rep.max_visits()),
    ))
}

/// Parses arguments, runs the command and maps the result to an exit status:
/// 0 on success, 2 on a valid negative result, 1 on error.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
