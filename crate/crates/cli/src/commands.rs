use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use gcdiagram::render::{ascii, svg, DiagramSpec};
use gcdiagram::{segment_point, FacetKind, Shape};
use lift::{certify, certify_fl3, certify_from_slt, verify_certificate, Certificate, LiftError};
use novikov::{fmt_q_short, Q};
use potential::{apply_bulk, build_potential, render_numeric, render_symbolic, BulkParameter};
use rayon::prelude::*;
use serde_json::{json, Value};
use sltsolve::{find_generic_seed, solve_slt, Seed, SltError, SltSolution};

use crate::{
    CertifyArgs, Cli, Command, DiagramArgs, Format, GridArgs, GridStage, Output, PotentialArgs,
    SltArgs, VerifyArgs,
};

/// Result of a command that ran to completion.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Malformed input; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

/// Exit code for an error escaping [`run`].
pub fn error_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        2
    } else {
        1
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Potential(a) => cmd_potential(a),
        Command::Slt(a) => cmd_slt(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Diagram(a) => cmd_diagram(a),
        Command::Grid(a) => cmd_grid(a),
    }
}

fn emit(output: &Output, content: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn check_shape(n: usize, m: usize) -> Result<()> {
    if n == 3 {
        if m != 2 {
            return Err(usage("n = 3 has the single segment m = 2"));
        }
        return Ok(());
    }
    Shape::new(n, m)
        .map(|_| ())
        .map_err(|e| usage(e.to_string()))
}

fn check_t(t: &Q) -> Result<()> {
    if *t <= Q::from_integer(0.into()) || *t >= Q::from_integer(1.into()) {
        return Err(usage(format!(
            "t = {} must lie strictly between 0 and 1",
            fmt_q_short(t)
        )));
    }
    Ok(())
}

fn cmd_potential(a: PotentialArgs) -> Result<Outcome> {
    check_shape(a.n, a.m)?;
    check_t(&a.t)?;
    let point = segment_point(a.n, a.m, &a.t).map_err(|e| usage(e.to_string()))?;
    let w = build_potential(&point);
    let bulk = match &a.bulk {
        None => None,
        Some(path) => Some(
            BulkParameter::from_json(&read_json(path)?)
                .ok_or_else(|| usage(format!("{}: malformed bulk parameter", path.display())))?,
        ),
    };
    let wb = match &bulk {
        None => None,
        Some(b) => Some(apply_bulk(&w, b).map_err(|e| usage(e.to_string()))?),
    };
    let content = match a.output.format {
        Format::Json => pretty(&potential::to_json(wb.as_ref().unwrap_or(&w))),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "W = {}", render_symbolic(&w));
            let _ = writeln!(s, "W(t = {}) = {}", fmt_q_short(&a.t), render_numeric(&w));
            if let Some(wb) = &wb {
                let _ = writeln!(s, "W^b = {}", render_numeric(wb));
            }
            s
        }
        Format::Svg => return Err(usage("potential supports --format text or json")),
    };
    emit(&a.output, &content)?;
    Ok(Outcome::Pass)
}

/// Maps solver errors: bad seeds are usage errors, non-generic seeds are failures.
fn slt_error(e: SltError) -> anyhow::Error {
    match e {
        SltError::Range(_) | SltError::InvalidSeed(_) | SltError::ZeroScale | SltError::Json(_) => {
            usage(e.to_string())
        }
        other => anyhow!(other),
    }
}

fn load_seed(path: &Path, n: usize, m: usize) -> Result<Seed> {
    let seed = Seed::from_json(&read_json(path)?).map_err(slt_error)?;
    if (seed.shape.n, seed.shape.m) != (n, m) {
        return Err(usage(format!(
            "seed is for (n, m) = ({}, {}), not ({n}, {m})",
            seed.shape.n, seed.shape.m
        )));
    }
    Ok(seed)
}

fn cmd_slt(a: SltArgs) -> Result<Outcome> {
    Shape::new(a.n, a.m).map_err(|e| usage(e.to_string()))?;
    let seed = match &a.seed {
        Some(path) => load_seed(path, a.n, a.m)?,
        None => find_generic_seed(a.n, a.m).map_err(slt_error)?.seed,
    };
    let solution = match solve_slt(&seed) {
        Ok(s) => s,
        Err(SltError::NotGeneric(f)) => {
            let values: Vec<String> = seed.ordered().iter().map(fmt_q_short).collect();
            println!("seed ({}) rejected: {f}", values.join(", "));
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(slt_error(e)),
    };
    let report = solution.verify();
    let content = match a.output.format {
        Format::Json => pretty(&solution.to_json()),
        Format::Text => slt_text(&solution),
        Format::Svg => return Err(usage("slt supports --format text or json")),
    };
    emit(&a.output, &content)?;
    if a.output.out.is_some() || a.output.format == Format::Text {
        eprintln!("verify_slt: {report}");
    }
    Ok(Outcome::from_pass(report.all_zero()))
}

fn slt_text(s: &SltSolution) -> String {
    let mut out = String::new();
    let seed: Vec<String> = s.seed.ordered().iter().map(fmt_q_short).collect();
    let _ = writeln!(
        out,
        "Gamma({}) / B({}), seed ({})",
        s.n(),
        s.m(),
        seed.join(", ")
    );
    for (c, v) in s.inner_y.iter().chain(&s.y) {
        let _ = writeln!(out, "y_{{{},{}}} = {}", c.i, c.j, fmt_q_short(v));
    }
    for (i, v) in &s.c_hor {
        let _ = writeln!(out, "c^hor_{{{},{}}} = {}", i, i + 1, fmt_q_short(v));
    }
    for (j, v) in &s.c_ver {
        let _ = writeln!(out, "c^ver_{{{},{}}} = {}", j + 1, j, fmt_q_short(v));
    }
    out
}

fn lift_error(e: LiftError) -> anyhow::Error {
    match e {
        LiftError::Range(_) | LiftError::UseFl3 | LiftError::Json(_) => usage(e.to_string()),
        LiftError::Search(s) | LiftError::Solve(s) => slt_error(s),
        other => anyhow!(other),
    }
}

fn build_certificate(a: &CertifyArgs) -> Result<Certificate> {
    check_shape(a.n, a.m)?;
    check_t(&a.t)?;
    if a.cap <= Q::from_integer(0.into()) {
        return Err(usage("--cap must be positive"));
    }
    if a.n == 3 {
        if a.seed.is_some() {
            return Err(usage("n = 3 takes no seed"));
        }
        return certify_fl3(&a.t, &a.cap).map_err(lift_error);
    }
    match &a.seed {
        None => certify(a.n, a.m, &a.t, &a.cap).map_err(lift_error),
        Some(path) => {
            let seed = load_seed(path, a.n, a.m)?;
            let slt = solve_slt(&seed).map_err(slt_error)?;
            certify_from_slt(&slt, &a.t, &a.cap).map_err(lift_error)
        }
    }
}

fn cmd_certify(a: CertifyArgs) -> Result<Outcome> {
    if a.output.format == Format::Svg {
        return Err(usage("certify supports --format text or json"));
    }
    let cert = build_certificate(&a)?;
    let json = pretty(&cert.to_json());
    match (&a.output.out, a.output.format) {
        (Some(_), _) | (None, Format::Json) => emit(&a.output, &json)?,
        (None, _) => print!("{}", certificate_text(&cert)),
    }
    if a.output.out.is_some() {
        eprintln!("{}", summary(&cert));
    }
    Ok(Outcome::from_pass(cert.report.all_pass()))
}

fn summary(cert: &Certificate) -> String {
    let failed = cert.report.failures().count();
    format!(
        "certificate n={} m={} t={} N={} n_check={}: {} checks, {} failed",
        cert.n,
        cert.m,
        fmt_q_short(&cert.t),
        fmt_q_short(&cert.cap),
        fmt_q_short(&cert.n_check),
        cert.report.entries.len(),
        failed
    )
}

fn certificate_text(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", summary(cert));
    for (c, s) in &cert.point {
        let _ = writeln!(out, "y_{{{},{}}} = {s}", c.i, c.j);
    }
    for (i, s) in &cert.bulk.c_hor {
        let _ = writeln!(out, "c^hor_{{{},{}}} = {s}", i, i + 1);
    }
    for (j, s) in &cert.bulk.c_ver {
        let _ = writeln!(out, "c^ver_{{{},{}}} = {s}", j + 1, j);
    }
    let _ = writeln!(out, "{}", cert.report);
    out
}

fn cmd_verify(a: VerifyArgs) -> Result<Outcome> {
    let cert = Certificate::from_json(&read_json(&a.path)?).map_err(|e| usage(e.to_string()))?;
    let report = verify_certificate(&cert);
    match a.format {
        Format::Json => print!("{}", pretty(&report.to_json())),
        Format::Text => println!("{report}"),
        Format::Svg => return Err(usage("verify supports --format text or json")),
    }
    if !cert.report.entries.is_empty() && cert.report != report {
        eprintln!("note: the stored report differs from the recomputed one");
    }
    Ok(Outcome::from_pass(report.all_pass()))
}

/// Cycles carrying the bulk deformation that the lift produces.
fn bulk_cycles(n: usize) -> Vec<(FacetKind, usize)> {
    if n == 3 {
        return vec![
            (FacetKind::Horizontal, 2),
            (FacetKind::Vertical, 1),
            (FacetKind::Vertical, 2),
        ];
    }
    let k = n.div_ceil(2);
    [FacetKind::Horizontal, FacetKind::Vertical]
        .into_iter()
        .flat_map(|kind| (k..n).map(move |i| (kind, i)))
        .collect()
}

fn cmd_diagram(a: DiagramArgs) -> Result<Outcome> {
    let mut spec = DiagramSpec::all_segments(a.n);
    if !a.m.is_empty() {
        spec.segments = a.m.clone();
    }
    spec.cycles = bulk_cycles(a.n);
    let content = match a.output.format {
        Format::Svg => svg(&spec),
        Format::Text => ascii(&spec),
        Format::Json => return Err(usage("diagram supports --format svg or text")),
    }
    .map_err(|e| usage(e.to_string()))?;
    emit(&a.output, &content)?;
    Ok(Outcome::Pass)
}

#[derive(Clone, Debug)]
struct GridJob {
    n: usize,
    m: usize,
    t: Option<Q>,
}

struct GridResult {
    job: GridJob,
    pass: bool,
    detail: String,
}

fn grid_jobs(a: &GridArgs) -> Vec<GridJob> {
    let mut jobs = Vec::new();
    for n in a.n.lo.max(3)..=a.n.hi {
        let ms = if n == 3 {
            vec![2]
        } else {
            (2..=n / 2).collect()
        };
        for m in ms {
            match a.stage {
                // n = 3 has no split leading term system
                GridStage::Slt if n > 3 => jobs.push(GridJob { n, m, t: None }),
                GridStage::Slt => {}
                GridStage::Certify => jobs.extend(a.t.iter().map(|t| GridJob {
                    n,
                    m,
                    t: Some(t.clone()),
                })),
            }
        }
    }
    jobs
}

fn run_job(job: &GridJob, cap: &Q) -> (bool, String) {
    match &job.t {
        None => match find_generic_seed(job.n, job.m).and_then(|f| solve_slt(&f.seed)) {
            Ok(s) => {
                let report = s.verify();
                (report.all_zero(), report.to_string())
            }
            Err(e) => (false, e.to_string()),
        },
        Some(t) => {
            let cert = if job.n == 3 {
                certify_fl3(t, cap)
            } else {
                certify(job.n, job.m, t, cap)
            };
            match cert {
                Ok(c) => (c.report.all_pass(), summary(&c)),
                Err(e) => (false, e.to_string()),
            }
        }
    }
}

fn cmd_grid(a: GridArgs) -> Result<Outcome> {
    if a.output.format == Format::Svg {
        return Err(usage("grid supports --format text or json"));
    }
    for t in &a.t {
        check_t(t)?;
    }
    let jobs = grid_jobs(&a);
    if jobs.is_empty() {
        return Err(usage(format!("no instances in n = {}", a.n)));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = a.jobs {
        if k == 0 {
            return Err(usage("--jobs must be positive"));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder.build().context("starting the worker pool")?;
    let mut results: Vec<GridResult> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let (pass, detail) = run_job(job, &a.cap);
                GridResult {
                    job: job.clone(),
                    pass,
                    detail,
                }
            })
            .collect()
    });
    results.sort_by(|x, y| (x.job.n, x.job.m, &x.job.t).cmp(&(y.job.n, y.job.m, &y.job.t)));
    let all = results.iter().all(|r| r.pass);
    let content = match a.output.format {
        Format::Json => pretty(&Value::Array(
            results
                .iter()
                .map(|r| {
                    json!({
                        "n": r.job.n,
                        "m": r.job.m,
                        "t": r.job.t.as_ref().map(novikov::fmt_q),
                        "pass": r.pass,
                        "detail": r.detail,
                    })
                })
                .collect(),
        )),
        _ => {
            let mut s = String::new();
            for r in &results {
                let t = r
                    .job
                    .t
                    .as_ref()
                    .map_or_else(|| "-".to_string(), fmt_q_short);
                let mark = if r.pass { "pass" } else { "FAIL" };
                let _ = writeln!(s, "n={} m={} t={t} {mark} {}", r.job.n, r.job.m, r.detail);
            }
            s
        }
    };
    emit(&a.output, &content)?;
    Ok(Outcome::from_pass(all))
}
