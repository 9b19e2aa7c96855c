//! Cubic polynomials `F_{a,b}(z) = z^3 - 3a^2 z + 2a^3 + b` with critical
//! points `a` and `-a`, and the curves along which the critical point `a`
//! is prefixed with preperiod `k`.
//!
//! `P_j = F^j(a)` satisfies `P_0 = a`, `P_1 = b`,
//! `P_{j+1} = P_j^3 - 3a^2 P_j + 2a^3 + b`; the curve is cut out by
//! `Q_k = H(P_{k-1}, P_k)` with `H(z, w) = z^2 + zw + w^2 - 3a^2`, and
//! `Q_k = (b - a) R_k`. On the line `a = 0` the unicritical slice
//! `z^3 + b` gives `q_k = b r_k = b^2 s_k`.

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
pub struct CubicFamilyInstance {
    pub k: u32,
    /// `P_0, ..., P_k`.
    pub p_seq: Vec<IntPoly2>,
    pub q: IntPoly2,
    pub r: IntPoly2,
    /// `s_k(b) = R_k(0, b) / b`.
    pub s: IntPoly1,
}

/// `deg Q_k = 2 * 3^(k-1)`.
pub fn q_degree(k: u32) -> Option<u64> {
    3u64.checked_pow(k.checked_sub(1)?)?.checked_mul(2)
}

pub fn build(k: u32) -> Result<CubicFamilyInstance> {
    build_with_budget(k, DEFAULT_BUDGET)
}

/// Refuses `k` whose `Q_k` has total degree above `budget`.
pub fn build_with_budget(k: u32, budget: usize) -> Result<CubicFamilyInstance> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("preperiod k = {k} must be at least 2")));
    }
    let needed = q_degree(k).unwrap_or(u64::MAX);
    if needed > budget as u64 {
        return Err(Error::BudgetExceeded { needed: needed.min(usize::MAX as u64) as usize, budget });
    }
    let a = a2(&[((1, 0), 1)]);
    let b = a2(&[((0, 1), 1)]);
    let three_a2 = a2(&[((2, 0), 3)]);
    let tail = a2(&[((3, 0), 2), ((0, 1), 1)]);
    let mut p_seq = vec![a, b];
    for _ in 1..k {
        let pj = p_seq.last().unwrap();
        let next = &(&pj.square() * pj) - &(&three_a2 * pj);
        p_seq.push(&next + &tail);
    }
    let (pk1, pk) = (&p_seq[k as usize - 1], &p_seq[k as usize]);
    let q = &(&(&pk1.square() + &(pk1 * pk)) + &pk.square()) - &three_a2;
    let r = q.exact_div(&a2(&[((0, 1), 1), ((1, 0), -1)]))?;
    let r0 = r.substitute(&Var::from("a"), &SubstValue::from(0))?;
    let s = r0.exact_div(&IntPoly1::x("b"))?;
    Ok(CubicFamilyInstance { k, p_seq, q, r, s })
}

/// `p_j(b) = P_j(0, b)`: `p_0 = 0`, `p_{j+1} = p_j^3 + b`.
pub fn line_orbit(j: u32) -> IntPoly1 {
    let b = IntPoly1::x("b");
    let mut p = IntPoly1::zero("b");
    for _ in 0..j {
        p = &(&p.square() * &p) + &b;
    }
    p
}

impl CubicFamilyInstance {
    pub fn verify_structure(&self) -> StructureReport {
        let k = self.k;
        let mut rep = StructureReport::new(format!("cubic family, k = {k}"));
        let a = IntPoly2::gen(vars(), 0);
        let b = IntPoly2::gen(vars(), 1);
        let bma = &b - &a;

        rep.push("q_factor", &bma * &self.r == self.q, "Q_k = (b - a) R_k");

        let low = self.r.homog_part(HomogPart::Lowest).ok();
        let want_low = a2(&[((1, 0), 3), ((0, 1), 3)]);
        rep.push("lowest_part", low.as_ref() == Some(&want_low), format!("lowest part {:?}", low));

        let t = 3u32.pow(k - 2);
        let two_a_b = a2(&[((1, 0), 2), ((0, 1), 1)]);
        let want_high = &bma.pow(4 * t - 1) * &two_a_b.pow(2 * t);
        let high = self.r.homog_part(HomogPart::Highest).ok();
        rep.push(
            "highest_part",
            high.as_ref() == Some(&want_high),
            format!("(b - a)^{} (2a + b)^{}", 4 * t - 1, 2 * t),
        );

        let diag = self.r.substitute(&Var::from("b"), &SubstValue::from(IntPoly1::x("a")));
        let six_a = IntPoly1::from_i64s("a", &[0, 6]);
        rep.push("diagonal", diag.as_ref().ok() == Some(&six_a), "R_k(a, a) = 6a");

        let lows_ok = (1..=k as usize).all(|j| self.p_seq[j].homog_part(HomogPart::Lowest).ok().as_ref() == Some(&b));
        rep.push("orbit_lowest_parts", lows_ok, "lowest part of P_j is b for 1 <= j <= k");

        let on_diagonal = (1..=k as usize).all(|j| {
            (&self.p_seq[j] - &self.p_seq[j - 1])
                .substitute(&Var::from("b"), &SubstValue::from(IntPoly1::x("a")))
                .map(|f| f.is_zero())
                .unwrap_or(false)
        });
        rep.push("orbit_on_diagonal", on_diagonal, "P_j - P_(j-1) vanishes on b = a");

        let deg_r = q_degree(k).unwrap() as usize - 1;
        let degs_ok = (1..=k as usize).all(|j| self.p_seq[j].total_degree().finite() == Some(3usize.pow(j as u32 - 1)))
            && self.q.total_degree().finite() == Some(deg_r + 1)
            && self.r.total_degree().finite() == Some(deg_r);
        rep.push("degrees", degs_ok, format!("deg P_j = 3^(j-1), deg Q_k = {}, deg R_k = {deg_r}", deg_r + 1));

        let s_ok = self.s.deg() == Some(deg_r - 1) && self.s.is_monic() && *self.s.coeff(0) == 3;
        rep.push("s_shape", s_ok, format!("s_k monic of degree {}, s_k(0) = {}", deg_r - 1, self.s.coeff(0)));

        // p_j = b^(3^(j-1)) + ... + b^3 + b mod 3.
        let mod3_ok = (1..=k).all(|j| {
            let mut c = vec![0u64; 3usize.pow(j - 1) + 1];
            for i in 0..j {
                c[3usize.pow(i)] = 1;
            }
            line_orbit(j).reduce_mod(3).map(|f| f == ModPoly::new(3, c)).unwrap_or(false)
        });
        rep.push("line_orbit_mod3", mod3_ok, "p_j = b^(3^(j-1)) + ... + b^3 + b mod 3");

        let (pk1, pk) = (line_orbit(k - 1), line_orbit(k));
        let qk = &(&pk1.square() + &(&pk1 * &pk)) + &pk.square();
        let q_line = self.q.substitute(&Var::from("a"), &SubstValue::from(0));
        rep.push("line_q", q_line.as_ref().ok() == Some(&qk), "q_k = p_(k-1)^2 + p_(k-1) p_k + p_k^2");
        let s_line = qk.exact_div(&IntPoly1::monomial("b", 1, 2));
        rep.push("line_s", s_line.as_ref().ok() == Some(&self.s), "q_k = b^2 s_k");

        let s_mod3 = self.s.reduce_mod(3).map(|f| f == ModPoly::monomial(3, 1, deg_r - 1)).unwrap_or(false);
        rep.push("s_mod3", s_mod3, format!("s_k = b^{} mod 3", deg_r - 1));
        rep
    }

    /// Classic Eisenstein certificate for `s_k` at `p = 3`; a failed
    /// hypothesis is an error.
    pub fn certify_s(&self) -> Result<EisensteinCertificate> {
        let cert = eisenstein_classic(&self.s, 3)?;
        if let Some(h) = cert.hypotheses.iter().find(|h| !h.holds) {
            return Err(Error::HypothesisFailed {
                hypothesis: h.name.clone(),
                detail: format!("s_{}: {}", self.k, h.detail),
            });
        }
        Ok(cert)
    }
}
