//! Quadratic rational maps `G_{a,b}(z) = a z (b - z) / (1 + (b - 2) z)`
//! with fixed points `0` and `infinity`, critical point `1` and critical
//! value `a`, and the curves where `1` lands on the fixed point `0` after
//! exactly `k` steps.
//!
//! `G^(j-2)(a) = P_j / Q_j` with `P_2 = a`, `Q_2 = 1`,
//! `P_{j+1} = a P_j (b Q_j - P_j)` and `Q_{j+1} = Q_j^2 + (b - 2) P_j Q_j`;
//! the curve is `R_k = P_k - b Q_k = 0`. Along `b = 2` the map is
//! `g_a(z) = a z (2 - z)` and `r_k(a) = R_k(a, 2)`.

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::certify::{eisenstein_classic, EisensteinCertificate};
use crate::fppoly::ModPoly;
use crate::report::StructureReport;
use crate::zpoly::{HomogPart, IntPoly1, IntPoly2, SubstValue, Var};
use crate::{Error, Result, DEFAULT_BUDGET};

fn vars() -> [Var; 2] {
    [Var::from("a"), Var::from("b")]
}

fn a2(terms: &[((u32, u32), i64)]) -> IntPoly2 {
    IntPoly2::from_i64s(vars(), terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFamilyInstance {
    pub k: u32,
    /// `P_2, ..., P_k`.
    pub p_seq: Vec<IntPoly2>,
    /// `Q_2, ..., Q_k`.
    pub q_seq: Vec<IntPoly2>,
    pub r: IntPoly2,
    pub r_line: IntPoly1,
}

/// `deg R_k = 2^(k-1) - 1` for `k >= 3`.
pub fn r_degree(k: u32) -> Option<u64> {
    1u64.checked_shl(k.checked_sub(1)?).map(|v| v - 1)
}

pub fn build(k: u32) -> Result<QuadFamilyInstance> {
    build_with_budget(k, DEFAULT_BUDGET)
}

/// Refuses `k` with `deg R_k` above `budget`.
pub fn build_with_budget(k: u32, budget: usize) -> Result<QuadFamilyInstance> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("preperiod k = {k} must be at least 2")));
    }
    let needed = r_degree(k).filter(|_| k < 64).unwrap_or(u64::MAX);
    if needed > budget as u64 {
        return Err(Error::BudgetExceeded { needed: needed.min(usize::MAX as u64) as usize, budget });
    }
    let a = a2(&[((1, 0), 1)]);
    let b = a2(&[((0, 1), 1)]);
    let b_minus_2 = a2(&[((0, 1), 1), ((0, 0), -2)]);
    let mut p_seq = vec![a.clone()];
    let mut q_seq = vec![IntPoly2::one(vars())];
    for _ in 2..k {
        let (p, q) = (p_seq.last().unwrap(), q_seq.last().unwrap());
        let next_p = &(&a * p) * &(&(&b * q) - p);
        let next_q = &q.square() + &(&(&b_minus_2 * p) * q);
        p_seq.push(next_p);
        q_seq.push(next_q);
    }
    let r = p_seq.last().unwrap() - &(&b * q_seq.last().unwrap());
    let r_line = r.substitute(&Var::from("b"), &SubstValue::from(2))?;
    Ok(QuadFamilyInstance { k, p_seq, q_seq, r, r_line })
}

/// `G_{a,b}^(k-2)(a)` by exact rational iteration, or `None` if a pole is
/// met on the way.
pub fn iterate_rational(k: u32, a: &Rational, b: &Rational) -> Option<Rational> {
    let mut z = a.clone();
    for _ in 2..k {
        let den = Rational::from(1) + Rational::from(b - 2u32) * &z;
        if den == 0 {
            return None;
        }
        let num = Rational::from(a * &z) * Rational::from(b - &z);
        z = num / den;
    }
    Some(z)
}

/// `P_k(a, b) / Q_k(a, b)` at a rational point, or `None` when `Q_k`
/// vanishes there.
pub fn closed_form_at(inst: &QuadFamilyInstance, a: &Rational, b: &Rational) -> Option<Rational> {
    let p = eval_rational(inst.p_seq.last()?, a, b);
    let q = eval_rational(inst.q_seq.last()?, a, b);
    if q == 0 {
        None
    } else {
        Some(p / q)
    }
}

fn eval_rational(f: &IntPoly2, a: &Rational, b: &Rational) -> Rational {
    let mut acc = Rational::new();
    for (&(i, j), c) in f.terms() {
        let term = Rational::from(a.pow(i)) * Rational::from(b.pow(j));
        acc += term * Rational::from(c);
    }
    acc
}

impl QuadFamilyInstance {
    pub fn verify_structure(&self) -> StructureReport {
        let k = self.k;
        let mut rep = StructureReport::new(format!("quadratic rational family, k = {k}"));
        let minus_b = a2(&[((0, 1), -1)]);
        let one = IntPoly2::one(vars());

        let low = self.r.homog_part(HomogPart::Lowest).ok();
        rep.push("lowest_part", low.as_ref() == Some(&minus_b), format!("lowest part {:?}", low));

        // P_2 = a; for j >= 3 the lowest part is a^(j-1) b^(j-3) (b - a), of
        // degree 2j - 3, which is what makes -b the lowest part of R_k.
        let lows_ok = (2..=k).all(|j| {
            let idx = (j - 2) as usize;
            let want = if j == 2 {
                a2(&[((1, 0), 1)])
            } else {
                a2(&[((j - 1, j - 2), 1), ((j, j - 3), -1)])
            };
            self.p_seq[idx].homog_part(HomogPart::Lowest).ok().as_ref() == Some(&want)
                && self.q_seq[idx].homog_part(HomogPart::Lowest).ok().as_ref() == Some(&one)
        });
        rep.push(
            "orbit_lowest_parts",
            lows_ok,
            "lowest part of P_j is a^(j-1) b^(j-3) (b - a) for j >= 3 (degree 2j - 3), of Q_j is 1",
        );

        let deg = r_degree(k).unwrap() as usize;
        rep.push(
            "degree",
            self.r.total_degree().finite() == Some(deg),
            format!("deg R_k = {} (expected {deg})", self.r.total_degree()),
        );
        let bounds_ok = (3..=k).all(|j| {
            let idx = (j - 2) as usize;
            let dj = r_degree(j).unwrap() as usize;
            self.p_seq[idx].total_degree().finite().unwrap_or(0) <= dj
                && self.q_seq[idx].total_degree().finite().unwrap_or(0) < dj
        });
        rep.push("degree_bounds", bounds_ok, "deg P_j <= 2^(j-1) - 1 and deg Q_j <= 2^(j-1) - 2");

        let two = SubstValue::from(2);
        let b = Var::from("b");
        let line_ok = (3..=k).all(|j| {
            let idx = (j - 2) as usize;
            let qj = self.q_seq[idx].substitute(&b, &two).ok();
            let pj = self.p_seq[idx].substitute(&b, &two).ok().map(|p| -p);
            qj.as_ref().is_some_and(|q| *q == IntPoly1::one("a"))
                && pj.as_ref().is_some_and(|p| {
                    p.is_monic() && p.deg() == Some(r_degree(j).unwrap() as usize) && *p.coeff(0) == 0
                })
        });
        rep.push("line_orbit", line_ok, "on b = 2: q_j = 1 and -p_j monic of degree 2^(j-1) - 1 with p_j(0) = 0");

        rep.push(
            "line_constant",
            *self.r_line.coeff(0) == -2,
            format!("r_k(0) = {}", self.r_line.coeff(0)),
        );

        // The exponent printed for this congruence, 2^(k-1), exceeds
        // deg r_k; the recursion p_{j+1} = a p_j^2 mod 2 gives 2^(k-1) - 1.
        let r_mod2 = self.r_line.reduce_mod(2).map(|f| f == ModPoly::monomial(2, 1, deg)).unwrap_or(false);
        rep.push(
            "line_mod2",
            r_mod2,
            format!("r_k = a^{deg} mod 2 (corrected exponent 2^(k-1) - 1; 2^(k-1) = {} would exceed the degree)", deg + 1),
        );
        rep
    }

    /// Eisenstein at `p = 2` for the monic `-r_k`; a failed hypothesis is
    /// an error.
    pub fn certify_r(&self) -> Result<EisensteinCertificate> {
        let f = if self.r_line.leading().is_some_and(|c| *c < 0) { -&self.r_line } else { self.r_line.clone() };
        let cert = eisenstein_classic(&f, 2)?;
        if let Some(h) = cert.hypotheses.iter().find(|h| !h.holds) {
            return Err(Error::HypothesisFailed {
                hypothesis: h.name.clone(),
                detail: format!("r_{}: {}", self.k, h.detail),
            });
        }
        Ok(cert)
    }
}

/// `r_k` along `b = 2` directly from `p_2 = a`, `p_{j+1} = -a p_j^2 + 2a p_j`.
pub fn line_recursion(k: u32) -> IntPoly1 {
    let mut p = IntPoly1::x("a");
    let a = IntPoly1::x("a");
    for _ in 2..k {
        let two_minus_p = &IntPoly1::constant("a", 2) - &p;
        p = &(&a * &p) * &two_minus_p;
    }
    &p - &IntPoly1::constant("a", Integer::from(2))
}
