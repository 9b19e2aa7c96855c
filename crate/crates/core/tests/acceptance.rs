//! End-to-end acceptance run. Each criterion builds its own contexts, is
//! timed against its limit, and prints one line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynirr::certify::{eisenstein_classic, eisenstein_general, origin_criterion_hypotheses, theorem_pipeline, Verdict};
use dynirr::fppoly::ModPoly;
use dynirr::oracle::{validate_family, FamilyTarget};
use dynirr::unifam::{fp_survey, survey_expectation, UnicriticalContext};
use dynirr::zpoly::{resultant, HomogPart, IntPoly1, IntPoly2, SubstValue};
use dynirr::{cubicfam, quadfam, Integer};

const BUDGET: usize = 8000;
const UNI_DEGREES: [u64; 5] = [2, 3, 4, 8, 9];

type Res = Result<(), Box<dyn std::error::Error>>;
type Criterion = (u32, &'static str, u64, fn() -> Res);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Res {
    if ok {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn ctx(degree: u64) -> Result<UnicriticalContext, dynirr::Error> {
    UnicriticalContext::new(degree, BUDGET)
}

fn report_ok(rep: &dynirr::report::StructureReport) -> Res {
    let failed: Vec<String> = rep.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(failed.is_empty(), || format!("{}: {}", rep.subject, failed.join("; ")))
}

fn cubic_structure() -> Res {
    for k in 2..=6 {
        let inst = cubicfam::build_with_budget(k, BUDGET)?;
        report_ok(&inst.verify_structure())?;
        let want = 2 * 3u64.pow(k - 1) - 1;
        ensure(inst.r.total_degree().finite() == Some(want as usize), || format!("k = {k}: deg R_k = {:?}", inst.r.total_degree()))?;
        let on_diag = inst.r.substitute(&"b".into(), &SubstValue::Poly(IntPoly1::x("a")))?;
        let six_a = IntPoly1::from_i64s("a", &[0, 6]);
        ensure(on_diag == six_a, || format!("k = {k}: R_k(a, a) = {on_diag}"))?;
    }
    Ok(())
}

fn cubic_eisenstein() -> Res {
    for k in 2..=6 {
        let inst = cubicfam::build_with_budget(k, BUDGET)?;
        let s = &inst.s;
        let deg = 2 * 3usize.pow(k - 1) - 2;
        ensure(s.is_monic() && s.deg() == Some(deg), || format!("k = {k}: s_k has degree {:?}", s.deg()))?;
        ensure(*s.coeff(0) == 3, || format!("k = {k}: s_k(0) = {}", s.coeff(0)))?;
        ensure(s.reduce_mod(3)? == ModPoly::monomial(3, 1, deg), || format!("k = {k}: s_k mod 3 is not b^{deg}"))?;
        let cert = inst.certify_s()?;
        ensure(cert.is_irreducible() && cert.p == 3, || format!("k = {k}: {:?}", cert.failed_hypotheses()))?;
    }
    Ok(())
}

fn quadratic_suite() -> Res {
    for k in 3..=10 {
        let inst = quadfam::build_with_budget(k, BUDGET)?;
        report_ok(&inst.verify_structure())?;
        let deg = 2usize.pow(k - 1) - 1;
        ensure(inst.r.total_degree().finite() == Some(deg), || format!("k = {k}: deg R_k = {:?}", inst.r.total_degree()))?;
        let low = inst.r.homog_part(HomogPart::Lowest)?;
        let minus_b = IntPoly2::from_i64s(["a".into(), "b".into()], &[((0, 1), -1)]);
        ensure(low == minus_b, || format!("k = {k}: lowest part {low}"))?;
        let r = &inst.r_line;
        ensure(*r.coeff(0) == -2, || format!("k = {k}: r_k(0) = {}", r.coeff(0)))?;
        ensure(r.reduce_mod(2)? == ModPoly::monomial(2, 1, deg), || format!("k = {k}: r_k mod 2 is not a^{deg}"))?;
        let cert = inst.certify_r()?;
        ensure(cert.is_irreducible() && cert.p == 2, || format!("k = {k}: {:?}", cert.failed_hypotheses()))?;
    }
    Ok(())
}

fn unicritical_identities() -> Res {
    for degree in UNI_DEGREES {
        let c = ctx(degree)?;
        for k in 2..=4 {
            for n in 1..=3 {
                report_ok(&c.factor_family(k, n)?.report)?;
            }
            ensure(c.check_orbit_difference(k)?, || format!("D = {degree}: P_(k+1) - P_k mod p at k = {k}"))?;
        }
    }
    Ok(())
}

fn resultant_suite() -> Res {
    for degree in [2u64, 3, 4] {
        let c = ctx(degree)?;
        for k in 2..=4 {
            for m in 1..=3 {
                for d in c.valid_d() {
                    for n in 1..=3 {
                        let w = c.check_resultant_lemma(k, m, d, n)?;
                        ensure(w.holds, || format!("D = {degree}, k = {k}, m = {m}, d = {d}, n = {n}: {}", w.resultant))?;
                    }
                }
            }
        }
    }
    for degree in [2u64, 3] {
        let c = ctx(degree)?;
        for m in 1..=5 {
            for n in (1..=5).filter(|&n| n != m) {
                let res = c.check_poonen(m, n)?;
                ensure(res.clone().abs() == 1, || format!("D = {degree}: res(R_{m}, R_{n}) = {res}"))?;
            }
        }
    }
    Ok(())
}

fn modp_suite() -> Res {
    for degree in UNI_DEGREES {
        let c = ctx(degree)?;
        for k in 2..=4 {
            for n in 1..=3 {
                let r = c.check_modp_power(k, n, None)?;
                ensure(r.holds && r.exponent == r.expected_exponent, || {
                    format!("D = {degree}, k = {k}, n = {n}: exponent {:?}, expected {:?}", r.exponent, r.expected_exponent)
                })?;
            }
        }
    }
    Ok(())
}

fn pipeline_suite() -> Res {
    let mut grid = Vec::new();
    for degree in UNI_DEGREES {
        for n in 1..=2 {
            grid.extend((2..=5).map(|k| (degree, k, n)));
        }
    }
    for degree in [2u64, 8] {
        grid.extend((2..=4).map(|k| (degree, k, 3)));
    }
    for degree in UNI_DEGREES {
        let c = ctx(degree)?;
        for &(_, k, n) in grid.iter().filter(|g| g.0 == degree) {
            for d in c.valid_d() {
                let cert = theorem_pipeline(&c, k, n, d)?;
                ensure(cert.verdict == Verdict::Irreducible, || format!("D = {degree}, k = {k}, n = {n}, d = {d}: {:?}", cert.verdict))?;
            }
        }
    }
    Ok(())
}

fn survey_suite() -> Res {
    let rows = fp_survey(&[2, 3, 4, 8, 9, 16, 27], 4, BUDGET)?;
    ensure(rows.len() == 21, || format!("{} rows", rows.len()))?;
    for r in &rows {
        let ok = r.irreducible == survey_expectation(r.degree, r.n)
            && r.matches
            && r.cross_checked
            && r.frobenius
            && r.degree_screen == (r.n as u64 * r.e as u64).is_multiple_of(r.degree_r as u64);
        ensure(ok, || format!("{r:?}"))?;
    }
    Ok(())
}

fn gleason_suite() -> Res {
    for degree in [2u64, 3, 4] {
        let c = ctx(degree)?;
        for n in 1..=4 {
            let g = c.check_gleason(n)?;
            ensure(g.holds, || format!("D = {degree}, n = {n}: residue {}", g.residue))?;
        }
    }
    let c = ctx(2)?;
    let g = c.check_gleason(3)?;
    ensure(g.discriminant == -23, || format!("disc(P_3) = {}", g.discriminant))?;
    let p3 = c.critical_orbit(3)?;
    let res = resultant(p3, &p3.derivative())?;
    ensure(res.clone().abs() == 23 && g.resultant == Some(res.clone()), || format!("res(P_3, P_3') = {res}"))
}

fn oracle_suite() -> Res {
    let tol = 1e-8;
    let mut reports = Vec::new();
    for k in 2..=4 {
        reports.push(validate_family(FamilyTarget::Cubic(&cubicfam::build_with_budget(k, BUDGET)?), tol)?);
    }
    for k in 3..=5 {
        reports.push(validate_family(FamilyTarget::Quadratic(&quadfam::build_with_budget(k, BUDGET)?), tol)?);
    }
    let c = ctx(2)?;
    for k in 2..=4 {
        for n in 1..=2 {
            for d in c.valid_d() {
                reports.push(validate_family(FamilyTarget::Unicritical { ctx: &c, k, n, d }, tol)?);
            }
        }
    }
    for r in &reports {
        let ok = r.passed() && r.roots_converged == r.degree && r.confirmed == r.degree && r.max_residual < tol;
        ensure(ok, || {
            format!(
                "{} k = {} n = {}: degree {}, converged {}, confirmed {}, residual {:.1e}, {:?}",
                r.family, r.k, r.n, r.degree, r.roots_converged, r.confirmed, r.max_residual, r.anomalies
            )
        })?;
    }
    Ok(())
}

fn closed_forms() -> Res {
    for degree in [2u64, 3, 4, 6, 8, 9] {
        report_ok(&ctx(degree)?.special_cases_check()?)?;
    }
    Ok(())
}

fn failed(cert: &dynirr::certify::EisensteinCertificate) -> Vec<String> {
    cert.failed_hypotheses().into_iter().map(String::from).collect()
}

fn only(cert: &dynirr::certify::EisensteinCertificate, name: &str, what: &str) -> Res {
    ensure(failed(cert) == [name] && cert.verdict != Verdict::Irreducible, || format!("{what}: failed {:?}", failed(cert)))
}

fn bump(f: &IntPoly1, i: usize, delta: i64) -> IntPoly1 {
    let mut c: Vec<Integer> = f.coeffs().to_vec();
    c[i] += delta;
    IntPoly1::new(f.var().clone(), c)
}

fn negative_controls() -> Res {
    // Classic certifier on s_3.
    let s = cubicfam::build(3)?.s;
    ensure(eisenstein_classic(&s, 3)?.is_irreducible(), || "s_3 itself".into())?;
    let mut c: Vec<Integer> = s.coeffs().to_vec();
    *c.last_mut().unwrap() = Integer::from(3);
    only(&eisenstein_classic(&IntPoly1::new(s.var().clone(), c), 3)?, "leading_unit", "leading coefficient 3")?;
    only(&eisenstein_classic(&bump(&s, 1, 1), 3)?, "middle_divisible", "linear coefficient + 1")?;
    only(&eisenstein_classic(&bump(&s, 0, 6), 3)?, "constant_exact", "constant 9")?;

    // Generalized certifier around A = R_{3,2,3}, B = R_2 for D = 3.
    let c3 = ctx(3)?;
    let a = c3.preperiodic_factor(3, 2, 3)?.poly;
    let b = c3.gleason_factor(2)?.clone();
    ensure(eisenstein_general(&a, &b, 3)?.is_irreducible(), || "R_(3,2,3) itself".into())?;
    only(&eisenstein_general(&bump(&a, 1, 1), &b, 3)?, "power_of_base", "A with linear coefficient + 1")?;
    let b2 = b.square();
    let nine = IntPoly1::from_i64s(b.var().clone(), &[9]);
    only(&eisenstein_general(&(&b2 + &nine), &b, 3)?, "resultant_valuation", "A = B^2 + 9")?;
    // R_3 mod 3 is reducible for D = 3.
    let a3 = c3.preperiodic_factor(2, 3, 3)?.poly;
    only(&eisenstein_general(&a3, c3.gleason_factor(3)?, 3)?, "base_irreducible", "B = R_3 at D = 3")?;
    ensure(theorem_pipeline(&c3, 2, 3, 3)?.verdict == Verdict::OutOfHypotheses, || "pipeline at D = 3, n = 3".into())?;

    // A = B^2 has resultant 0 and is refused.
    let cert = eisenstein_general(&b2, &b, 3)?;
    ensure(cert.resultant == Some(Integer::new()) && cert.verdict != Verdict::Irreducible, || "A = B^2".into())?;
    only(&cert, "resultant_valuation", "A = B^2")?;

    // Origin criterion on R_k with a constant added.
    let r = cubicfam::build(2)?.r;
    ensure(origin_criterion_hypotheses(&r).holds, || "origin criterion on R_2".into())?;
    let one = IntPoly2::from_i64s(["a".into(), "b".into()], &[((0, 0), 1)]);
    let o = origin_criterion_hypotheses(&(&r + &one));
    ensure(!o.vanishes_at_origin && o.linear_part_nonzero && !o.holds, || format!("{o:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "cubic structure, k = 2..6", 60, cubic_structure),
        (2, "cubic Eisenstein at 3, k = 2..6", 10, cubic_eisenstein),
        (3, "quadratic-rational suite, k = 3..10", 30, quadratic_suite),
        (4, "unicritical identities, D in {2,3,4,8,9}", 120, unicritical_identities),
        (5, "resultant and Poonen suites", 120, resultant_suite),
        (6, "mod-p power structure", 60, modp_suite),
        (7, "theorem pipeline grid", 180, pipeline_suite),
        (8, "F_p irreducibility survey", 30, survey_suite),
        (9, "Gleason discriminants", 10, gleason_suite),
        (10, "numeric oracle cross-validation", 120, oracle_suite),
        (11, "closed forms for small k", 10, closed_forms),
        (12, "negative controls", 5, negative_controls),
    ];
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let verdict = match &outcome {
            Ok(()) if elapsed < limit => "PASS",
            _ => "FAIL",
        };
        println!("{verdict} {id:>2} {name:<44} {:>8.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs());
        match outcome {
            Err(e) => println!("     {e}"),
            Ok(()) if elapsed >= limit => println!("     over the time limit"),
            Ok(()) => {}
        }
        if verdict == "FAIL" {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
