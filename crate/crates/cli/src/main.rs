//! `dynirr`: build the polynomial families, run their verification suites
//! and write manifests, polynomials and certificates.

mod run;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynirr::certify::{verify_certificate, EisensteinCertificate, PipelineCertificate, Verdict};
use dynirr::report::StructureReport;
use dynirr::unifam::UnicriticalContext;
use serde::Serialize;

use run::{Row, RowVerdict};
use spec::{parse_checks, parse_list, Family, JobSpec, UsageError};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "dynirr", version, about = "Exact irreducibility checks for dynamical polynomial families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cubic polynomials with a critical point prefixed with preperiod k.
    Cubic(FamilyArgs),
    /// Quadratic rational maps whose critical point lands on the fixed point 0.
    Quadrat(FamilyArgs),
    /// Unicritical polynomials a z^D + 1 with preperiod k and period n.
    Uni(UniArgs),
    /// Re-verify a certificate file written by a previous run.
    VerifyCert(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Checks: structure, eisenstein, resultant, modp, survey, oracle or all.
    #[arg(long, default_value = "all")]
    check: String,
    /// Directory for the manifest, polynomials and certificates.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest degree any constructed polynomial may have.
    #[arg(long, env = "DYNIRR_BUDGET", default_value_t = dynirr::DEFAULT_BUDGET)]
    budget: usize,
    /// Orbit coincidence tolerance of the numeric oracle.
    #[arg(long, default_value_t = dynirr::oracle::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Args)]
struct FamilyArgs {
    /// Preperiods, e.g. `2..5` or `2,4`.
    #[arg(long)]
    k: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct UniArgs {
    /// Degrees D of z -> a z^D + 1.
    #[arg(long = "D")]
    degrees: String,
    /// Preperiods, e.g. `2..5` or `2,4` (not needed with `--survey`).
    #[arg(long)]
    k: Option<String>,
    /// Periods.
    #[arg(long)]
    n: Option<String>,
    /// Divisors d of D (default: all d >= 2).
    #[arg(long)]
    d: Option<String>,
    /// Run the F_p survey of R_n (same as `--check survey`).
    #[arg(long)]
    survey: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate JSON (`*_cert_*.json`).
    file: PathBuf,
    /// Skip rebuilding R_(k,n,d) to compare with a pipeline certificate.
    #[arg(long)]
    no_recompute: bool,
    #[arg(long, env = "DYNIRR_BUDGET", default_value_t = dynirr::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    spec: &'a JobSpec,
    passed: bool,
    counts: Counts,
    rows: &'a [Row],
    files: Vec<&'a str>,
    timings: Timings,
}

#[derive(Serialize, Default)]
struct Counts {
    pass: usize,
    fail: usize,
    out_of_hypotheses: usize,
    refused: usize,
}

#[derive(Serialize)]
struct Timings {
    threads: usize,
    total_seconds: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cubic(a) => family_spec(Family::Cubic, &a.k, &a.common).and_then(|s| execute(s, &a.common)),
        Command::Quadrat(a) => family_spec(Family::Quadrat, &a.k, &a.common).and_then(|s| execute(s, &a.common)),
        Command::Uni(a) => uni_spec(&a).and_then(|s| execute(s, &a.common)),
        Command::VerifyCert(a) => verify(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dynirr: {e}");
            ExitCode::from(2)
        }
    }
}

fn base_spec(family: Family, common: &Common, checks: &str) -> Result<JobSpec, UsageError> {
    let (checks, from_all) = parse_checks(checks, family)?;
    Ok(JobSpec {
        family,
        k: Vec::new(),
        degrees: Vec::new(),
        n: Vec::new(),
        d: Vec::new(),
        checks,
        from_all,
        out: common.out.clone(),
        tol: common.tol,
        budget: common.budget,
    })
}

fn family_spec(family: Family, k: &str, common: &Common) -> Result<JobSpec, UsageError> {
    let mut spec = base_spec(family, common, &common.check)?;
    spec.k = parse_list(k)?;
    spec.validate()?;
    Ok(spec)
}

fn uni_spec(a: &UniArgs) -> Result<JobSpec, UsageError> {
    let checks = if a.survey && a.common.check == "all" { "survey" } else { a.common.check.as_str() };
    let mut spec = base_spec(Family::Uni, &a.common, checks)?;
    if a.survey {
        spec.checks.insert(spec::Check::Survey);
    }
    spec.degrees = parse_list(&a.degrees)?;
    spec.k = a.k.as_deref().map(parse_list).transpose()?.unwrap_or_default();
    spec.n = a.n.as_deref().map(parse_list).transpose()?.unwrap_or_default();
    spec.d = a.d.as_deref().map(parse_list).transpose()?.unwrap_or_default();
    spec.validate()?;
    Ok(spec)
}

fn execute(spec: JobSpec, common: &Common) -> Result<ExitCode, UsageError> {
    let threads = common.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(UsageError("--jobs must be positive".into()));
    }
    let result = run::run(&spec, threads);
    let mut counts = Counts::default();
    for r in &result.rows {
        match r.verdict {
            RowVerdict::Pass => counts.pass += 1,
            RowVerdict::Fail => counts.fail += 1,
            RowVerdict::OutOfHypotheses => counts.out_of_hypotheses += 1,
            RowVerdict::Refused => counts.refused += 1,
        }
    }
    let manifest = Manifest {
        schema: SCHEMA,
        tool: "dynirr",
        version: env!("CARGO_PKG_VERSION"),
        spec: &spec,
        passed: counts.fail == 0 && counts.refused == 0,
        rows: &result.rows,
        files: result.files.iter().map(|f| f.name.as_str()).collect(),
        counts,
        timings: Timings { threads, total_seconds: result.seconds },
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    if let Some(dir) = &spec.out {
        write_outputs(dir, &text, &result.files).map_err(UsageError)?;
    }
    match common.emit {
        Emit::Json => print!("{text}"),
        Emit::Text => {
            for r in &result.rows {
                println!("{:<17} {:<16} {:<10} {:<18} {}", verdict_name(r.verdict), r.params(), r.check, r.item, r.witness);
            }
            let c = &manifest.counts;
            println!(
                "{} rows: {} pass, {} fail, {} out of hypotheses, {} refused ({:.2} s)",
                result.rows.len(),
                c.pass,
                c.fail,
                c.out_of_hypotheses,
                c.refused,
                result.seconds
            );
        }
    }
    for r in result.rows.iter().filter(|r| matches!(r.verdict, RowVerdict::Fail | RowVerdict::Refused)) {
        eprintln!("{} {} {} {}: {}", verdict_name(r.verdict), r.params(), r.check, r.item, r.witness);
    }
    Ok(if manifest.counts.refused > 0 {
        ExitCode::from(2)
    } else if manifest.counts.fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn verdict_name(v: RowVerdict) -> &'static str {
    match v {
        RowVerdict::Pass => "pass",
        RowVerdict::Fail => "FAIL",
        RowVerdict::OutOfHypotheses => "out_of_hypotheses",
        RowVerdict::Refused => "REFUSED",
    }
}

fn write_outputs(dir: &Path, manifest: &str, files: &[run::Artifact]) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let write = |name: &str, text: &str| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
    };
    for f in files {
        write(&f.name, &f.text)?;
    }
    write("manifest.json", manifest)
}

#[derive(Serialize)]
struct VerifyOutput {
    file: String,
    kind: &'static str,
    verdict: Verdict,
    passed: bool,
    report: StructureReport,
}

fn verify(a: &VerifyArgs) -> Result<ExitCode, UsageError> {
    let text = std::fs::read_to_string(&a.file).map_err(|e| UsageError(format!("cannot read {}: {e}", a.file.display())))?;
    let value: serde_json::Value = dynirr::json::from_str(&text).map_err(|e| UsageError(e.to_string()))?;
    let is_pipeline = value.get("base_transcript").is_some();
    let (kind, verdict, report) = if is_pipeline {
        let cert: PipelineCertificate = dynirr::json::from_str(&text).map_err(|e| UsageError(e.to_string()))?;
        let report = verify_pipeline(&cert, a).map_err(|e| UsageError(e.to_string()))?;
        ("pipeline", cert.verdict, report)
    } else {
        let cert: EisensteinCertificate = dynirr::json::from_str(&text).map_err(|e| UsageError(e.to_string()))?;
        let report = verify_certificate(&cert).map_err(|e| UsageError(e.to_string()))?;
        ("eisenstein", cert.verdict, report)
    };
    let out = VerifyOutput {
        file: a.file.display().to_string(),
        kind,
        verdict,
        passed: report.all_passed(),
        report,
    };
    match a.emit {
        Emit::Json => println!("{}", serde_json::to_string_pretty(&out).expect("report serializes")),
        Emit::Text => {
            print!("{}", out.report);
            println!("verdict: {}", serde_json::to_value(out.verdict).unwrap().as_str().unwrap_or("?"));
            println!("{}", if out.passed { "certificate verified" } else { "certificate REJECTED" });
        }
    }
    Ok(if out.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Replays the pipeline legs recorded in `cert`; unless disabled, also
/// rebuilds `R_{k,n,d}` and compares digests.
fn verify_pipeline(cert: &PipelineCertificate, a: &VerifyArgs) -> dynirr::Result<StructureReport> {
    let mut r = StructureReport::new(format!("pipeline certificate D={} k={} n={} d={}", cert.degree, cert.k, cert.n, cert.d));
    let ctx = UnicriticalContext::new(cert.degree, a.budget)?;
    r.push("prime_power", ctx.prime_power() == Some((cert.p, cert.e)), format!("D = {}^{}", cert.p, cert.e));
    let base = if cert.n == 1 {
        dynirr::zpoly::IntPoly1::x("a")
    } else {
        ctx.gleason_factor(cert.n)?.clone()
    };
    let transcript = base.reduce_mod(cert.p)?.irreducibility_transcript()?;
    r.push("base_transcript", transcript == cert.base_transcript, format!("{} mod {}", cert.base, cert.p));
    match &cert.certificate {
        None => {
            r.push(
                "verdict",
                cert.verdict == Verdict::OutOfHypotheses && !transcript.irreducible,
                "no certificate: base must be reducible mod p",
            );
        }
        Some(inner) => {
            r.extend(verify_certificate(inner)?);
            r.push("base", inner.base.as_ref() == Some(&base), "recorded base equals the recomputed one");
            let res_ok = inner.resultant.as_ref().map(|x| x.clone().abs()) == Some(cert.expected_resultant_abs.clone());
            r.push("resultant_value", res_ok, "|res(A, B)| = p^(deg B)");
            r.push("pipeline_verdict", inner.verdict == cert.verdict, "");
            if !a.no_recompute {
                let fresh = ctx.preperiodic_factor(cert.k, cert.n, cert.d)?.poly;
                r.push(
                    "polynomial",
                    dynirr::certify::digest(&fresh) == inner.digest,
                    "certified polynomial is R_(k,n,d) rebuilt from scratch",
                );
            }
        }
    }
    Ok(r)
}
