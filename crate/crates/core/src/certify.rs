//! Irreducibility certificates over the rationals.
//!
//! * the classic Eisenstein criterion at a prime `p`;
//! * the generalized criterion: monic `A`, `B` with `A = B^N mod p`, `B`
//!   irreducible mod `p` and `p^(2 deg B)` not dividing `res(A, B)`;
//! * the origin criterion for bivariate curves, which transfers
//!   irreducibility over the rationals to irreducibility over `C`;
//! * the end-to-end pipeline certifying `R_{k,n,d}` for `D = p^e`.
//!
//! Certificates carry the polynomials they are about together with every
//! witness, so [`verify_certificate`] can replay them from the record alone.
//! Criteria are one-directional: a failed hypothesis yields
//! [`Verdict::Inconclusive`], never a claim of reducibility.

use rug::integer::Order;
use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith;
use crate::fppoly::IrreducibilityTranscript;
use crate::json::{decimal, decimal_opt};
use crate::report::StructureReport;
use crate::unifam::UnicriticalContext;
use crate::zpoly::{resultant, IntPoly1, IntPoly2};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Inconclusive,
    OutOfHypotheses,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Classic,
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Hypothesis { name: name.into(), holds, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinCertificate {
    pub variant: Variant,
    pub p: u64,
    /// [`digest`] of `polynomial`.
    pub digest: String,
    pub polynomial: IntPoly1,
    pub base: Option<IntPoly1>,
    /// `N` with `A = B^N mod p`.
    pub exponent: Option<u64>,
    #[serde(with = "decimal_opt")]
    pub resultant: Option<Integer>,
    /// `v_p(res(A, B))`; absent when the resultant is zero.
    pub valuation: Option<u64>,
    /// `p^(2 deg B)`.
    #[serde(with = "decimal_opt")]
    pub bound: Option<Integer>,
    pub transcript: Option<IrreducibilityTranscript>,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
}

impl EisensteinCertificate {
    pub fn is_irreducible(&self) -> bool {
        self.verdict == Verdict::Irreducible
    }

    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect()
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

/// SHA-256 of a canonical binary encoding: the variable name (length
/// prefixed), the number of coefficients, then per coefficient a sign byte
/// (0, 1 positive, 2 negative), the magnitude length as a little-endian
/// `u64` and the magnitude bytes least significant first.
pub fn digest(f: &IntPoly1) -> String {
    let mut h = Sha256::new();
    let name = f.var().name().as_bytes();
    h.update((name.len() as u64).to_le_bytes());
    h.update(name);
    h.update((f.coeffs().len() as u64).to_le_bytes());
    for c in f.coeffs() {
        let sign: u8 = match c.cmp0() {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => 2,
        };
        let mag = c.to_digits::<u8>(Order::Lsf);
        h.update([sign]);
        h.update((mag.len() as u64).to_le_bytes());
        h.update(&mag);
    }
    hex::encode(h.finalize())
}

/// `v_p(x)`, or `None` for `x = 0`.
pub fn valuation(x: &Integer, p: u64) -> Option<u64> {
    if *x == 0 {
        return None;
    }
    let (_, v) = x.clone().remove_factor(&Integer::from(p));
    Some(v as u64)
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn verdict_of(hyps: &[Hypothesis]) -> Verdict {
    if hyps.iter().all(|h| h.holds) {
        Verdict::Irreducible
    } else {
        Verdict::Inconclusive
    }
}

/// Classic Eisenstein at `p`: `p` does not divide the leading coefficient,
/// divides every other one, and `p^2` does not divide the constant.
pub fn eisenstein_classic(f: &IntPoly1, p: u64) -> Result<EisensteinCertificate> {
    check_prime(p)?;
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let pz = Integer::from(p);
    let lc = f.leading().unwrap();
    let leading_unit = Hypothesis::new(
        "leading_unit",
        !lc.is_divisible(&pz),
        format!("leading coefficient {} mod {p} = {}", short(lc), lc.mod_u(p as u32)),
    );
    let bad = (1..n).find(|&i| !f.coeff(i).is_divisible(&pz));
    let middle_divisible = Hypothesis::new(
        "middle_divisible",
        bad.is_none(),
        match bad {
            None => format!("{p} divides every coefficient of degree 1..{}", n - 1),
            Some(i) => format!("coefficient of degree {i} is {} mod {p}", f.coeff(i).mod_u(p as u32)),
        },
    );
    let c0 = f.coeff(0);
    let v0 = valuation(c0, p);
    let constant_exact = Hypothesis::new(
        "constant_exact",
        v0 == Some(1),
        format!(
            "constant {} has {p}-adic valuation {}",
            short(c0),
            v0.map_or("infinity".to_string(), |v| v.to_string())
        ),
    );
    let hypotheses = vec![leading_unit, middle_divisible, constant_exact];
    Ok(EisensteinCertificate {
        variant: Variant::Classic,
        p,
        digest: digest(f),
        polynomial: f.clone(),
        base: None,
        exponent: None,
        resultant: None,
        valuation: v0,
        bound: None,
        transcript: None,
        verdict: verdict_of(&hypotheses),
        hypotheses,
    })
}

/// Generalized Eisenstein for monic `A` and `B`. Non-monic inputs are
/// rejected rather than normalized.
pub fn eisenstein_general(a: &IntPoly1, b: &IntPoly1, p: u64) -> Result<EisensteinCertificate> {
    check_prime(p)?;
    if a.var() != b.var() {
        return Err(Error::VarMismatch { left: a.var().clone(), right: b.var().clone() });
    }
    for (name, f) in [("A", a), ("B", b)] {
        if !f.is_monic() {
            return Err(Error::NotMonic(format!("{name} has leading coefficient {:?}", f.leading().map(short))));
        }
    }
    let db = b.deg().unwrap();
    if db == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let amod = a.reduce_mod(p)?;
    let bmod = b.reduce_mod(p)?;

    let power = amod.as_power_of(&bmod)?;
    let exponent = power.as_ref().map(|pw| pw.exponent);
    let power_of_base = Hypothesis::new(
        "power_of_base",
        matches!(power, Some(ref pw) if pw.exponent >= 1 && pw.scalar == 1),
        match &power {
            Some(pw) => format!("A = B^{} mod {p}", pw.exponent),
            None => format!("A mod {p} is not a power of B mod {p}"),
        },
    );

    let transcript = bmod.irreducibility_transcript()?;
    let base_irreducible = Hypothesis::new(
        "base_irreducible",
        transcript.irreducible,
        format!(
            "B mod {p} of degree {} is {}",
            transcript.degree,
            if transcript.irreducible { "irreducible" } else { "reducible" }
        ),
    );

    let res = resultant(a, b)?;
    let bound = Integer::from(p).pow(2 * db as u32);
    let v = valuation(&res, p);
    let resultant_valuation = Hypothesis::new(
        "resultant_valuation",
        matches!(v, Some(v) if v < 2 * db as u64),
        match v {
            Some(v) => format!("v_{p}(res(A, B)) = {v}, bound {}", 2 * db),
            None => "res(A, B) = 0".to_string(),
        },
    );

    let hypotheses = vec![power_of_base, base_irreducible, resultant_valuation];
    Ok(EisensteinCertificate {
        variant: Variant::Generalized,
        p,
        digest: digest(a),
        polynomial: a.clone(),
        base: Some(b.clone()),
        exponent,
        resultant: Some(res),
        valuation: v,
        bound: Some(bound),
        transcript: Some(transcript),
        verdict: verdict_of(&hypotheses),
        hypotheses,
    })
}

/// Re-derives every hypothesis of `cert` from its recorded polynomials and
/// compares with what the certificate claims.
pub fn verify_certificate(cert: &EisensteinCertificate) -> Result<StructureReport> {
    let mut r = StructureReport::new(format!("certificate {}", cert.digest));
    r.push("digest", digest(&cert.polynomial) == cert.digest, "sha256 of the recorded polynomial");
    let redo = match cert.variant {
        Variant::Classic => eisenstein_classic(&cert.polynomial, cert.p)?,
        Variant::Generalized => {
            let base = cert
                .base
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("generalized certificate without base".into()))?;
            eisenstein_general(&cert.polynomial, base, cert.p)?
        }
    };
    let same_hyps = redo.hypotheses.len() == cert.hypotheses.len()
        && redo.hypotheses.iter().zip(&cert.hypotheses).all(|(x, y)| x.name == y.name && x.holds == y.holds);
    r.push("hypotheses", same_hyps, "recomputed hypothesis outcomes");
    r.push("exponent", redo.exponent == cert.exponent, format!("{:?}", redo.exponent));
    r.push("resultant", redo.resultant == cert.resultant, "");
    r.push("valuation", redo.valuation == cert.valuation, format!("{:?}", redo.valuation));
    r.push("bound", redo.bound == cert.bound, "");
    r.push("transcript", redo.transcript == cert.transcript, "");
    r.push("verdict", redo.verdict == cert.verdict, format!("{:?}", redo.verdict));
    Ok(r)
}

/// Hypotheses of the origin criterion for a curve `f(a, b) = 0`: it passes
/// through the origin and is smooth there. When both hold, irreducibility
/// over the rationals implies irreducibility over `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginReport {
    #[serde(with = "decimal")]
    pub constant: Integer,
    /// Coefficients of the two variables in the linear part.
    pub linear: (Dec, Dec),
    pub vanishes_at_origin: bool,
    pub linear_part_nonzero: bool,
    pub holds: bool,
    pub conclusion: Option<String>,
}

/// An integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dec(#[serde(with = "decimal")] pub Integer);

pub fn origin_criterion_hypotheses(f: &IntPoly2) -> OriginReport {
    let constant = f.coeff(0, 0);
    let linear = (Dec(f.coeff(1, 0)), Dec(f.coeff(0, 1)));
    let vanishes_at_origin = constant == 0;
    let linear_part_nonzero = linear.0 .0 != 0 || linear.1 .0 != 0;
    let holds = vanishes_at_origin && linear_part_nonzero;
    OriginReport {
        constant,
        linear,
        vanishes_at_origin,
        linear_part_nonzero,
        holds,
        conclusion: holds.then(|| "irreducible over Q implies irreducible over C".to_string()),
    }
}

/// The combined record of one run of the pipeline for `R_{k,n,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineCertificate {
    #[serde(rename = "D")]
    pub degree: u64,
    pub p: u64,
    pub e: u32,
    pub k: u32,
    pub n: u32,
    pub d: u64,
    /// `a` for `n = 1`, otherwise `R_n`.
    pub base: String,
    pub base_transcript: IrreducibilityTranscript,
    /// Absent when `R_n mod p` is reducible.
    pub certificate: Option<EisensteinCertificate>,
    /// `p^(deg B)`.
    #[serde(with = "decimal")]
    pub expected_resultant_abs: Integer,
    pub verdict: Verdict,
}

/// Certifies `R_{k,n,d}` for `D = p^e` with base `B = a` (`n = 1`) or
/// `B = R_n`. When `R_n mod p` is reducible the verdict is
/// [`Verdict::OutOfHypotheses`]; any other failed leg is an error.
pub fn theorem_pipeline(ctx: &UnicriticalContext, k: u32, n: u32, d: u64) -> Result<PipelineCertificate> {
    let (p, e) = ctx.require_prime_power()?;
    if k < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    if !ctx.valid_d().contains(&d) {
        return Err(Error::InvalidParameter(format!("d = {d} must divide D = {} and be >= 2", ctx.degree())));
    }
    let (base, label) = if n == 1 {
        (IntPoly1::x(crate::unifam::var()), "a".to_string())
    } else {
        (ctx.gleason_factor(n)?.clone(), format!("R_{n}"))
    };
    let base_transcript = base.reduce_mod(p)?.irreducibility_transcript()?;
    let expected_resultant_abs = Integer::from(p).pow(base.deg().unwrap() as u32);
    let mut out = PipelineCertificate {
        degree: ctx.degree(),
        p,
        e,
        k,
        n,
        d,
        base: label,
        base_transcript,
        certificate: None,
        expected_resultant_abs,
        verdict: Verdict::OutOfHypotheses,
    };
    if !out.base_transcript.irreducible {
        return Ok(out);
    }

    let a = ctx.preperiodic_factor(k, n, d)?.poly;
    let cert = eisenstein_general(&a, &base, p)?;
    let tag = format!("D={} k={k} n={n} d={d}", ctx.degree());
    if let Some(h) = cert.hypotheses.iter().find(|h| !h.holds) {
        return Err(Error::HypothesisFailed { hypothesis: h.name.clone(), detail: format!("{tag}: {}", h.detail) });
    }
    let res_abs = cert.resultant.as_ref().map(|r| r.clone().abs());
    if res_abs.as_ref() != Some(&out.expected_resultant_abs) {
        return Err(Error::HypothesisFailed {
            hypothesis: "resultant_value".into(),
            detail: format!("{tag}: |res| = {:?}, expected {}", res_abs.map(|r| short(&r)), out.expected_resultant_abs),
        });
    }
    out.verdict = cert.verdict;
    out.certificate = Some(cert);
    Ok(out)
}

/// Decimal form, elided in the middle when long.
fn short(x: &Integer) -> String {
    let s = x.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...{} ({} digits)", &s[..12], &s[s.len() - 12..], s.trim_start_matches('-').len())
    }
}
