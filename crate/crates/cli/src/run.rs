//! Expands a job spec into independent jobs, runs them and collects rows.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use dynirr::certify::{origin_criterion_hypotheses, theorem_pipeline, Verdict};
use dynirr::oracle::{validate_family, FamilyTarget, ValidationReport};
use dynirr::report::StructureReport;
use dynirr::unifam::{fp_survey, survey_expectation, UnicriticalContext};
use dynirr::{cubicfam, quadfam, Error};
use rayon::prelude::*;
use serde::Serialize;

use crate::spec::{Check, Family, JobSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowVerdict {
    Pass,
    Fail,
    /// The theorem's hypotheses do not hold here, as predicted.
    OutOfHypotheses,
    /// Refused by a parameter or budget limit.
    Refused,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    #[serde(rename = "D")]
    pub degree: Option<u64>,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub d: Option<u64>,
    pub check: Check,
    /// Which part of the check the row covers.
    pub item: String,
    pub verdict: RowVerdict,
    pub witness: String,
}

impl Row {
    fn key(&self) -> impl Ord {
        (self.degree, self.k, self.n, self.d, self.check, self.item.clone())
    }

    pub fn params(&self) -> String {
        let mut parts = Vec::new();
        if let Some(v) = self.degree {
            parts.push(format!("D={v}"));
        }
        if let Some(v) = self.k {
            parts.push(format!("k={v}"));
        }
        if let Some(v) = self.n {
            parts.push(format!("n={v}"));
        }
        if let Some(v) = self.d {
            parts.push(format!("d={v}"));
        }
        parts.join(" ")
    }
}

/// A file to write into the output directory.
pub struct Artifact {
    pub name: String,
    pub text: String,
}

#[derive(Default)]
struct Output {
    rows: Vec<Row>,
    files: Vec<Artifact>,
}

#[derive(Clone, Copy, Debug)]
struct Params {
    degree: Option<u64>,
    k: Option<u32>,
    n: Option<u32>,
    d: Option<u64>,
}

impl Output {
    fn push(&mut self, p: Params, check: Check, item: &str, verdict: RowVerdict, witness: impl Into<String>) {
        self.rows.push(Row {
            degree: p.degree,
            k: p.k,
            n: p.n,
            d: p.d,
            check,
            item: item.to_string(),
            verdict,
            witness: witness.into(),
        });
    }

    fn report(&mut self, p: Params, check: Check, item: &str, r: &StructureReport) {
        let (verdict, witness) = if r.all_passed() {
            (RowVerdict::Pass, format!("{} checks passed", r.checks.len()))
        } else {
            let fails: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            (RowVerdict::Fail, fails.join("; "))
        };
        self.push(p, check, item, verdict, witness);
    }

    fn error(&mut self, p: Params, check: Check, item: &str, e: &Error) {
        self.push(p, check, item, classify(e), e.to_string());
    }

    fn file(&mut self, name: String, value: &impl Serialize) {
        match dynirr::json::to_string(value) {
            Ok(text) => self.files.push(Artifact { name, text: text + "\n" }),
            Err(e) => panic!("serializing {name}: {e}"),
        }
    }

    fn oracle(&mut self, p: Params, item: &str, r: dynirr::Result<ValidationReport>) {
        match r {
            Ok(v) => {
                let witness = format!(
                    "degree {}, converged {}, confirmed {}, max residual {:.1e}, vieta {:.1e}{}",
                    v.degree,
                    v.roots_converged,
                    v.confirmed,
                    v.max_residual,
                    v.vieta_error,
                    if v.anomalies.is_empty() { String::new() } else { format!(", anomalies: {}", v.anomalies.join("; ")) }
                );
                let verdict = if v.passed() { RowVerdict::Pass } else { RowVerdict::Fail };
                self.push(p, Check::Oracle, item, verdict, witness);
            }
            Err(e) => self.error(p, Check::Oracle, item, &e),
        }
    }
}

fn classify(e: &Error) -> RowVerdict {
    match e {
        Error::BudgetExceeded { .. } | Error::InvalidParameter(_) | Error::NotPrimePower(_) => RowVerdict::Refused,
        _ => RowVerdict::Fail,
    }
}

/// One unit of parallel work.
#[derive(Clone, Copy, Debug)]
enum Job {
    Cubic { k: u32 },
    Quadrat { k: u32 },
    /// Closed forms for one `D`, and the period-only Poonen resultants.
    UniDegree { degree: u64 },
    /// Orbit polynomial and Gleason checks for `P_n`.
    UniOrbit { degree: u64, n: u32 },
    /// `P_{k+1} - P_k = a^(N_k) mod p`.
    UniOrbitDiff { degree: u64, k: u32 },
    UniKn { degree: u64, k: u32, n: u32 },
    UniKnd { degree: u64, k: u32, n: u32, d: u64 },
    Survey,
}

pub struct RunResult {
    pub rows: Vec<Row>,
    pub files: Vec<Artifact>,
    pub seconds: f64,
}

pub fn run(spec: &JobSpec, threads: usize) -> RunResult {
    let start = Instant::now();
    let contexts: BTreeMap<u64, Arc<UnicriticalContext>> = spec
        .degrees
        .iter()
        .filter_map(|&deg| UnicriticalContext::new(deg, spec.budget).ok().map(|c| (deg, Arc::new(c))))
        .collect();
    let jobs = expand(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let outputs: Vec<Output> = pool.install(|| jobs.par_iter().map(|job| run_job(spec, &contexts, *job)).collect());
    let mut rows = Vec::new();
    let mut files = Vec::new();
    for o in outputs {
        rows.extend(o.rows);
        files.extend(o.files);
    }
    rows.sort_by_key(|r| r.key());
    files.sort_by(|a, b| a.name.cmp(&b.name));
    RunResult { rows, files, seconds: start.elapsed().as_secs_f64() }
}

fn expand(spec: &JobSpec) -> Vec<Job> {
    let mut jobs = Vec::new();
    match spec.family {
        Family::Cubic => jobs.extend(spec.k.iter().map(|&k| Job::Cubic { k })),
        Family::Quadrat => jobs.extend(spec.k.iter().map(|&k| Job::Quadrat { k })),
        Family::Uni => {
            if spec.wants(Check::Survey) {
                jobs.push(Job::Survey);
            }
            let per_tuple = [Check::Structure, Check::Eisenstein, Check::Resultant, Check::Modp, Check::Oracle];
            if !per_tuple.iter().any(|&c| spec.wants(c)) {
                return jobs;
            }
            for &degree in &spec.degrees {
                if spec.wants(Check::Structure) || spec.wants(Check::Resultant) {
                    jobs.push(Job::UniDegree { degree });
                }
                if spec.wants(Check::Structure) {
                    jobs.extend(spec.n.iter().map(|&n| Job::UniOrbit { degree, n }));
                }
                if spec.wants(Check::Modp) {
                    jobs.extend(spec.k.iter().map(|&k| Job::UniOrbitDiff { degree, k }));
                }
                for &k in &spec.k {
                    for &n in &spec.n {
                        jobs.push(Job::UniKn { degree, k, n });
                        for d in spec.d_for(degree) {
                            jobs.push(Job::UniKnd { degree, k, n, d });
                        }
                    }
                }
            }
        }
    }
    // Big jobs first keeps the pool busy to the end.
    jobs.reverse();
    jobs
}

fn run_job(spec: &JobSpec, contexts: &BTreeMap<u64, Arc<UnicriticalContext>>, job: Job) -> Output {
    let mut out = Output::default();
    let ctx = |degree: u64| contexts.get(&degree).expect("context for every D").clone();
    match job {
        Job::Cubic { k } => cubic(spec, k, &mut out),
        Job::Quadrat { k } => quadrat(spec, k, &mut out),
        Job::UniDegree { degree } => uni_degree(spec, &ctx(degree), &mut out),
        Job::UniOrbit { degree, n } => uni_orbit(&ctx(degree), n, &mut out),
        Job::UniOrbitDiff { degree, k } => {
            let c = ctx(degree);
            if c.prime_power().is_some() {
                let p = Params { degree: Some(degree), k: Some(k), n: None, d: None };
                match c.check_orbit_difference(k) {
                    Ok(true) => out.push(p, Check::Modp, "orbit_difference", RowVerdict::Pass, format!("P_{} - P_{k} = a^N_{k} mod p", k + 1)),
                    Ok(false) => out.push(p, Check::Modp, "orbit_difference", RowVerdict::Fail, format!("P_{} - P_{k} is not a^N_{k} mod p", k + 1)),
                    Err(e) => out.error(p, Check::Modp, "orbit_difference", &e),
                }
            }
        }
        Job::UniKn { degree, k, n } => uni_kn(spec, &ctx(degree), k, n, &mut out),
        Job::UniKnd { degree, k, n, d } => uni_knd(spec, &ctx(degree), k, n, d, &mut out),
        Job::Survey => survey(spec, &mut out),
    }
    out
}

fn cubic(spec: &JobSpec, k: u32, out: &mut Output) {
    let p = Params { degree: None, k: Some(k), n: None, d: None };
    let inst = match cubicfam::build_with_budget(k, spec.budget) {
        Ok(inst) => inst,
        Err(e) => {
            for &c in &spec.checks {
                out.error(p, c, "build", &e);
            }
            return;
        }
    };
    if spec.wants(Check::Structure) {
        out.report(p, Check::Structure, "lemmas", &inst.verify_structure());
        origin(p, &inst.r, out);
        out.file(format!("cubic_R_{k}.json"), &inst.r);
        out.file(format!("cubic_s_{k}.json"), &inst.s);
    }
    if spec.wants(Check::Eisenstein) {
        match inst.certify_s() {
            Ok(cert) => {
                out.push(p, Check::Eisenstein, "s_k", RowVerdict::Pass, format!("classic at p = 3, digest {}", cert.digest));
                out.file(format!("cubic_cert_s_{k}.json"), &cert);
            }
            Err(e) => out.error(p, Check::Eisenstein, "s_k", &e),
        }
    }
    if spec.wants(Check::Oracle) {
        out.oracle(p, "s_k", validate_family(FamilyTarget::Cubic(&inst), spec.tol));
    }
}

fn quadrat(spec: &JobSpec, k: u32, out: &mut Output) {
    let p = Params { degree: None, k: Some(k), n: None, d: None };
    let inst = match quadfam::build_with_budget(k, spec.budget) {
        Ok(inst) => inst,
        Err(e) => {
            for &c in &spec.checks {
                out.error(p, c, "build", &e);
            }
            return;
        }
    };
    if spec.wants(Check::Structure) {
        out.report(p, Check::Structure, "lemmas", &inst.verify_structure());
        origin(p, &inst.r, out);
        out.file(format!("quadrat_R_{k}.json"), &inst.r);
        out.file(format!("quadrat_r_{k}.json"), &inst.r_line);
    }
    if spec.wants(Check::Eisenstein) {
        match inst.certify_r() {
            Ok(cert) => {
                out.push(p, Check::Eisenstein, "r_k", RowVerdict::Pass, format!("classic at p = 2 on -r_k, digest {}", cert.digest));
                out.file(format!("quadrat_cert_r_{k}.json"), &cert);
            }
            Err(e) => out.error(p, Check::Eisenstein, "r_k", &e),
        }
    }
    if spec.wants(Check::Oracle) {
        out.oracle(p, "r_k", validate_family(FamilyTarget::Quadratic(&inst), spec.tol));
    }
}

fn origin(p: Params, r: &dynirr::zpoly::IntPoly2, out: &mut Output) {
    let o = origin_criterion_hypotheses(r);
    let witness = format!("constant {}, linear part ({}, {})", o.constant, o.linear.0 .0, o.linear.1 .0);
    out.push(p, Check::Structure, "origin", if o.holds { RowVerdict::Pass } else { RowVerdict::Fail }, witness);
}

fn uni_degree(spec: &JobSpec, ctx: &UnicriticalContext, out: &mut Output) {
    let p = Params { degree: Some(ctx.degree()), k: None, n: None, d: None };
    if spec.wants(Check::Structure) {
        match ctx.special_cases_check() {
            Ok(r) => out.report(p, Check::Structure, "closed_forms", &r),
            Err(e) => out.error(p, Check::Structure, "closed_forms", &e),
        }
    }
    if spec.wants(Check::Resultant) {
        let mut witness = Vec::new();
        let mut failure = None;
        for &m in &spec.n {
            for &n in spec.n.iter().filter(|&&n| n > m) {
                match ctx.check_poonen(m, n) {
                    Ok(res) => witness.push(format!("res(R_{m}, R_{n}) = {res}")),
                    Err(e) => {
                        failure = Some(e);
                        break;
                    }
                }
            }
        }
        match failure {
            Some(e) => out.error(p, Check::Resultant, "poonen", &e),
            None if witness.is_empty() => {}
            None => out.push(p, Check::Resultant, "poonen", RowVerdict::Pass, witness.join(", ")),
        }
    }
}

fn uni_orbit(ctx: &UnicriticalContext, n: u32, out: &mut Output) {
    let p = Params { degree: Some(ctx.degree()), k: None, n: Some(n), d: None };
    match ctx.check_orbit_polynomial(n) {
        Ok(r) => out.report(p, Check::Structure, "orbit_polynomial", &r),
        Err(e) => out.error(p, Check::Structure, "orbit_polynomial", &e),
    }
    match ctx.check_gleason(n) {
        Ok(g) => out.push(
            p,
            Check::Structure,
            "gleason",
            RowVerdict::Pass,
            format!("disc(P_{n}) = {} = {} mod D", short(&g.discriminant.to_string()), g.residue),
        ),
        Err(e) => out.error(p, Check::Structure, "gleason", &e),
    }
}

fn uni_kn(spec: &JobSpec, ctx: &UnicriticalContext, k: u32, n: u32, out: &mut Output) {
    let degree = ctx.degree();
    let p = Params { degree: Some(degree), k: Some(k), n: Some(n), d: None };
    if spec.wants(Check::Structure) {
        match ctx.factor_family(k, n) {
            Ok(fam) => {
                out.report(p, Check::Structure, "identities", &fam.report);
                for f in &fam.per_d {
                    out.file(format!("uni_R_{degree}_{k}_{n}_{}.json", f.d.unwrap()), &f.poly);
                }
            }
            Err(e) => out.error(p, Check::Structure, "identities", &e),
        }
    }
    if spec.wants(Check::Modp) && ctx.prime_power().is_some() {
        match ctx.check_modp_power(k, n, None) {
            Ok(r) => out.push(
                p,
                Check::Modp,
                "aggregate",
                RowVerdict::Pass,
                format!("R_(k,n) = {}^{} mod {}", r.base, r.exponent.unwrap_or(0), r.p),
            ),
            Err(e) => out.error(p, Check::Modp, "aggregate", &e),
        }
    }
}

fn uni_knd(spec: &JobSpec, ctx: &UnicriticalContext, k: u32, n: u32, d: u64, out: &mut Output) {
    let degree = ctx.degree();
    let p = Params { degree: Some(degree), k: Some(k), n: Some(n), d: Some(d) };
    if spec.wants(Check::Eisenstein) && ctx.prime_power().is_some() {
        match theorem_pipeline(ctx, k, n, d) {
            Ok(cert) => {
                let verdict = match cert.verdict {
                    Verdict::Irreducible => RowVerdict::Pass,
                    Verdict::OutOfHypotheses if !survey_expectation(degree, n) => RowVerdict::OutOfHypotheses,
                    _ => RowVerdict::Fail,
                };
                let witness = match &cert.certificate {
                    Some(c) => format!(
                        "base {}, |res| = {}^{}, digest {}",
                        cert.base,
                        cert.p,
                        c.valuation.unwrap_or(0),
                        c.digest
                    ),
                    None => format!("{} mod {} is reducible", cert.base, cert.p),
                };
                out.push(p, Check::Eisenstein, "pipeline", verdict, witness);
                out.file(format!("uni_cert_{degree}_{k}_{n}_{d}.json"), &cert);
            }
            Err(e) => out.error(p, Check::Eisenstein, "pipeline", &e),
        }
    }
    if spec.wants(Check::Resultant) {
        let mut witness = Vec::new();
        let mut failure = None;
        for &m in &spec.n {
            match ctx.check_resultant_lemma(k, n, d, m) {
                Ok(w) => witness.push(format!("|res(R_(k,n,d), R_{m})| = {}", short(&w.expected_abs.to_string()))),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        match failure {
            Some(e) => out.error(p, Check::Resultant, "lemma", &e),
            None => out.push(p, Check::Resultant, "lemma", RowVerdict::Pass, witness.join(", ")),
        }
    }
    if spec.wants(Check::Modp) && ctx.prime_power().is_some() {
        match ctx.check_modp_power(k, n, Some(d)) {
            Ok(r) => out.push(
                p,
                Check::Modp,
                "factor",
                RowVerdict::Pass,
                format!("R_(k,n,d) = {}^{} mod {}", r.base, r.exponent.unwrap_or(0), r.p),
            ),
            Err(e) => out.error(p, Check::Modp, "factor", &e),
        }
    }
    if spec.wants(Check::Oracle) {
        out.oracle(p, "roots", validate_family(FamilyTarget::Unicritical { ctx, k, n, d }, spec.tol));
    }
}

fn survey(spec: &JobSpec, out: &mut Output) {
    let n_max = spec.n.iter().copied().max().unwrap_or(2);
    match fp_survey(&spec.degrees, n_max, spec.budget) {
        Ok(rows) => {
            for r in rows.into_iter().filter(|r| spec.n.contains(&r.n)) {
                let p = Params { degree: Some(r.degree), k: None, n: Some(r.n), d: None };
                let witness = format!(
                    "p={} e={} deg R_n = {}, irreducible mod p: {} (expected {}), degree screen: {}, frobenius: {}",
                    r.p, r.e, r.degree_r, r.irreducible, r.expected, r.degree_screen, r.frobenius
                );
                out.push(p, Check::Survey, "appendix", if r.matches { RowVerdict::Pass } else { RowVerdict::Fail }, witness);
            }
        }
        Err(e) => out.error(Params { degree: None, k: None, n: None, d: None }, Check::Survey, "appendix", &e),
    }
}

fn short(s: &str) -> String {
    if s.len() <= 40 {
        s.to_string()
    } else {
        format!("{}...{} ({} digits)", &s[..12], &s[s.len() - 12..], s.trim_start_matches('-').len())
    }
}
