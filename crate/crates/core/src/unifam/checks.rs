//! Verifiers for the structural facts about the unicritical family: the
//! resultant and mod-`p` power relations, Gleason's discriminant
//! observation, the closed forms at small preperiod and the survey of `R_n`
//! over `F_p`.

use rug::Integer;
use serde::{Deserialize, Serialize};

use super::{cyclotomic_poly, var, ModpFamily, UnicriticalContext};
use crate::arith;
use crate::fppoly::ModPoly;
use crate::json::{decimal, decimal_opt};
use crate::report::StructureReport;
use crate::zpoly::{discriminant, resultant, IntPoly1};
use crate::{Error, Result};

fn failed(hypothesis: &str, detail: String) -> Error {
    Error::HypothesisFailed { hypothesis: hypothesis.into(), detail }
}

/// `res(R_{k,m,d}, R_n)` against its predicted absolute value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantWitness {
    #[serde(rename = "D")]
    pub degree: u64,
    pub k: u32,
    pub m: u32,
    pub d: u64,
    pub n: u32,
    #[serde(with = "decimal")]
    pub resultant: Integer,
    #[serde(with = "decimal")]
    pub expected_abs: Integer,
    /// Sign of the observed resultant; the prediction is only up to sign.
    pub sign: i32,
    pub holds: bool,
}

/// `R_{k,n,d} mod p` (or the aggregate when `d` is `None`) as a power of
/// `a` (`n = 1`) or of `R_n mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModpPowerReport {
    #[serde(rename = "D")]
    pub degree: u64,
    pub p: u64,
    pub k: u32,
    pub n: u32,
    pub d: Option<u64>,
    pub base: String,
    pub exponent: Option<u64>,
    pub scalar: Option<u64>,
    /// `M_{k,n}`; only predicted for the aggregate.
    pub expected_exponent: Option<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GleasonReport {
    #[serde(rename = "D")]
    pub degree: u64,
    pub n: u32,
    #[serde(with = "decimal")]
    pub discriminant: Integer,
    /// `res(P_n, P_n')`; absent for the constant `P_1`, whose discriminant
    /// is the empty product 1.
    #[serde(with = "decimal_opt")]
    pub resultant: Option<Integer>,
    pub residue: u64,
    pub holds: bool,
}

/// One row of the `F_p` irreducibility survey of `R_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    #[serde(rename = "D")]
    pub degree: u64,
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub degree_r: usize,
    pub irreducible: bool,
    /// `deg R_n | n e`.
    pub degree_screen: bool,
    /// `R_n mod p` divides `a^(D^n) - a`.
    pub frobenius: bool,
    /// The reduction of the integer `R_n` equals `prod P_m^mu` built from
    /// `P_m = sum_{j<m} a^(N_j)` over `F_p`.
    pub cross_checked: bool,
    pub expected: bool,
    pub matches: bool,
}

/// `M_{k,n}`: the exponent with `R_{k,n} = R_n^(M_{k,n}) mod p` (`R_1 := a`).
pub fn m_kn(degree: u64, k: u32, n: u32) -> Option<u64> {
    let dm1 = degree - 1;
    if n == 1 {
        return dm1.checked_mul(arith::orbit_degree(degree, k - 1)?);
    }
    let dk = degree.checked_pow(k - 1)?;
    if (k as u64 - 1).is_multiple_of(n as u64) {
        dm1.checked_mul(dk - 1)
    } else {
        dm1.checked_mul(dk)
    }
}

/// Classification of the appendix: `R_n mod p` is irreducible for `n = 2`
/// and, beyond that, only for `n = 3` with `D` in `{2, 8}`.
pub fn survey_expectation(degree: u64, n: u32) -> bool {
    n == 2 || (n == 3 && (degree == 2 || degree == 8))
}

impl UnicriticalContext {
    /// `res(R_{k,m,d}, R_n)`, predicted to be `±p^(deg R_n)` when `n = m`
    /// and `d = p^j`, and `±1` otherwise. A mismatch is an error.
    pub fn check_resultant_lemma(&self, k: u32, m: u32, d: u64, n: u32) -> Result<ResultantWitness> {
        let a = self.preperiodic_factor(k, m, d)?.poly;
        let b = self.gleason_factor(n)?;
        let res = resultant(&a, b)?;
        let expected_abs = match arith::prime_power(d) {
            Some((p, _)) if n == m => Integer::from(Integer::u_pow_u(p as u32, b.deg().unwrap() as u32)),
            _ => Integer::from(1),
        };
        let holds = res.clone().abs() == expected_abs;
        let w = ResultantWitness {
            degree: self.degree,
            k,
            m,
            d,
            n,
            sign: res.cmp0() as i32,
            resultant: res,
            expected_abs,
            holds,
        };
        if !holds {
            return Err(failed(
                "resultant_lemma",
                format!("D={} k={k} m={m} d={d} n={n}: |res| = {} but expected {}", self.degree, w.resultant, w.expected_abs),
            ));
        }
        Ok(w)
    }

    /// `|res(R_m, R_n)| = 1` for `m != n`; returns the resultant.
    pub fn check_poonen(&self, m: u32, n: u32) -> Result<Integer> {
        if m == n {
            return Err(Error::InvalidParameter("periods must differ".into()));
        }
        let res = resultant(self.gleason_factor(m)?, self.gleason_factor(n)?)?;
        if res.clone().abs() != 1 {
            return Err(failed("poonen", format!("D={} res(R_{m}, R_{n}) = {res}", self.degree)));
        }
        Ok(res)
    }

    /// Reduces `R_{k,n,d}` (all `d` when `None`) modulo `p` and expresses it
    /// as a power of `a` or `R_n mod p`. Failure to be such a power, or an
    /// aggregate exponent other than `M_{k,n}`, is an error.
    pub fn check_modp_power(&self, k: u32, n: u32, d: Option<u64>) -> Result<ModpPowerReport> {
        let fam = self.modp()?;
        let p = fam.modulus();
        let (reduced, base_name) = match d {
            Some(d) => (fam.preperiodic_factor(k, n, d)?, base_label(n)),
            None => (fam.aggregate_factor(k, n)?, base_label(n)),
        };
        let base = modp_base(fam, n)?;
        let power = reduced.as_power_of(&base)?;
        let expected_exponent = match d {
            None => Some(
                m_kn(self.degree, k, n)
                    .ok_or_else(|| Error::InvalidParameter("M_(k,n) overflows".into()))?,
            ),
            Some(_) => None,
        };
        let holds = match (&power, expected_exponent) {
            (None, _) => false,
            (Some(pw), Some(m)) => pw.exponent == m && pw.scalar == 1,
            (Some(pw), None) => pw.scalar == 1,
        };
        let report = ModpPowerReport {
            degree: self.degree,
            p,
            k,
            n,
            d,
            base: base_name,
            exponent: power.as_ref().map(|pw| pw.exponent),
            scalar: power.as_ref().map(|pw| pw.scalar),
            expected_exponent,
            holds,
        };
        if !holds {
            return Err(failed("modp_power", format!("{report:?}")));
        }
        Ok(report)
    }

    /// `P_{k+1} - P_k = a^(N_k) mod p` for `D = p^e`.
    pub fn check_orbit_difference(&self, k: u32) -> Result<bool> {
        let (p, _) = self.require_prime_power()?;
        let diff = self.critical_orbit(k + 1)? - self.critical_orbit(k)?;
        let nk = self.n_k(k)? as usize;
        Ok(diff.reduce_mod(p)? == ModPoly::monomial(p, 1, nk))
    }

    /// Gleason's observation `disc(P_n) = 1 mod D`. A different residue is
    /// an error.
    pub fn check_gleason(&self, n: u32) -> Result<GleasonReport> {
        let pn = self.critical_orbit(n)?;
        let (disc, res) = if pn.deg() == Some(0) {
            (Integer::from(1), None)
        } else {
            let res = resultant(pn, &pn.derivative())?;
            let disc = discriminant(pn)?;
            if disc.clone().abs() != res.clone().abs() {
                return Err(Error::Construction(format!("disc(P_{n}) and res(P_{n}, P_{n}') differ for monic P_{n}")));
            }
            (disc, Some(res))
        };
        let residue = disc.mod_u(self.degree as u32) as u64;
        let report = GleasonReport { degree: self.degree, n, discriminant: disc, resultant: res, residue, holds: residue == 1 % self.degree };
        if !report.holds {
            return Err(failed("gleason", format!("D={} disc(P_{n}) = {} = {residue} mod D", self.degree, report.discriminant)));
        }
        Ok(report)
    }

    /// The multiple roots of `P_{k,n,d}` are those of `P_gcd(n,k-1)`, each
    /// of multiplicity `phi(d)`: `gcd(P_{k,n,d}, P_{k,n,d}')` agrees with
    /// `P_g^(phi(d)-1)` up to a unit over the rationals.
    pub fn check_multiplicity(&self, k: u32, n: u32, d: u64) -> Result<bool> {
        let f = self.preperiodic_full(k, n, d)?;
        let g = f.gcd(&f.derivative())?;
        let pg = self.critical_orbit(arith::gcd(n as u64, k as u64 - 1) as u32)?;
        let want = pg.pow(arith::totient(d) as u32 - 1).primitive_part();
        Ok(g == want)
    }

    /// Instance check of the reducibility of `R_3` for `D = 1 mod 6`: the
    /// factor `a^2 + a + 1` divides `R_3`.
    pub fn r3_has_cyclotomic_factor(&self) -> Result<bool> {
        let r3 = self.gleason_factor(3)?;
        let phi3 = IntPoly1::from_i64s(var(), &[1, 1, 1]);
        Ok(r3.pseudo_rem(&phi3)?.is_zero())
    }

    /// The closed forms at small preperiod: `R_{2,1,d} = Phi_d(a+1, 1)` for
    /// all `d`, and for `D = 2d` also
    /// `R_{3,1,2} = b^(2d+1) - b^(2d) + b + 1` and
    /// `R_{2,2,2} = b^(2d) - 2b^(2d-1) + 2b^(2d-2) - ... - 2b + 2` at `b = a + 1`.
    pub fn special_cases_check(&self) -> Result<StructureReport> {
        let b = IntPoly1::from_i64s(var(), &[1, 1]);
        let mut r = StructureReport::new(format!("closed forms for D={}", self.degree));
        for d in self.valid_d() {
            let got = self.preperiodic_factor(2, 1, d)?.poly;
            let want = cyclotomic_poly(d).with_var(var()).compose(&b);
            r.push(format!("R_(2,1,{d})"), got == want, format!("Phi_{d}(a+1, 1) = {want}"));
        }
        if self.degree.is_multiple_of(2) {
            let two_d = self.degree as usize;
            let mut c = vec![Integer::new(); two_d + 2];
            c[two_d + 1] = Integer::from(1);
            c[two_d] = Integer::from(-1);
            c[1] = Integer::from(1);
            c[0] = Integer::from(1);
            let want = IntPoly1::new(var(), c).compose(&b);
            let got = self.preperiodic_factor(3, 1, 2)?.poly;
            r.push("R_(3,1,2)", got == want, "b^(2d+1) - b^(2d) + b + 1");

            let c = (0..=two_d)
                .map(|j| match j {
                    _ if j == two_d => Integer::from(1),
                    _ if j % 2 == 0 => Integer::from(2),
                    _ => Integer::from(-2),
                })
                .collect();
            let want = IntPoly1::new(var(), c).compose(&b);
            let got = self.preperiodic_factor(2, 2, 2)?.poly;
            r.push("R_(2,2,2)", got == want, "b^(2d) - 2b^(2d-1) + ... - 2b + 2");
        }
        Ok(r)
    }
}

fn base_label(n: u32) -> String {
    if n == 1 {
        "a".into()
    } else {
        format!("R_{n}")
    }
}

fn modp_base(fam: &ModpFamily, n: u32) -> Result<ModPoly> {
    if n == 1 {
        Ok(ModPoly::x(fam.modulus()))
    } else {
        fam.gleason_factor(n)
    }
}

/// Irreducibility of `R_n mod p` for each prime power `D` in `degrees` and
/// `n = 2..=n_max`, against the appendix classification.
pub fn fp_survey(degrees: &[u64], n_max: u32, budget: usize) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::new();
    for &degree in degrees {
        let ctx = UnicriticalContext::new(degree, budget)?;
        let (p, e) = ctx.require_prime_power()?;
        let fam = ctx.modp()?;
        for n in 2..=n_max {
            let r = fam.gleason_factor(n)?;
            let cross_checked = ctx.gleason_factor(n)?.reduce_mod(p)? == r;
            let degree_r = r.deg().unwrap_or(0);
            let irreducible = r.is_irreducible()?;
            let degree_screen = degree_r > 0 && (n as usize * e as usize).is_multiple_of(degree_r);
            let frobenius = r.frobenius_period_check(degree, n)?;
            let expected = survey_expectation(degree, n);
            let matches = cross_checked
                && irreducible == expected
                && frobenius
                && (!irreducible || degree_screen);
            rows.push(SurveyRow {
                degree,
                p,
                e,
                n,
                degree_r,
                irreducible,
                degree_screen,
                frobenius,
                cross_checked,
                expected,
                matches,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u64) -> UnicriticalContext {
        UnicriticalContext::new(d, 5000).unwrap()
    }

    #[test]
    fn resultant_lemma_examples() {
        let c = ctx(2);
        let w = c.check_resultant_lemma(2, 2, 2, 2).unwrap();
        assert_eq!(w.resultant.clone().abs(), 2);
        assert_eq!(c.check_resultant_lemma(3, 1, 2, 2).unwrap().expected_abs, 1);
        let w = ctx(4).check_resultant_lemma(2, 1, 2, 1).unwrap();
        assert_eq!(w.resultant, 1);
    }

    #[test]
    fn poonen_small() {
        for d in [2, 3] {
            let c = ctx(d);
            for m in 1..=4 {
                for n in 1..=4 {
                    if m != n {
                        assert_eq!(c.check_poonen(m, n).unwrap().abs(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn modp_power_examples() {
        assert_eq!(ctx(2).check_modp_power(3, 1, None).unwrap().exponent, Some(3));
        assert_eq!(ctx(2).check_modp_power(2, 2, None).unwrap().exponent, Some(2));
        assert_eq!(ctx(3).check_modp_power(2, 1, None).unwrap().exponent, Some(2));
        assert!(matches!(ctx(6).check_modp_power(2, 1, None), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn m_kn_values() {
        assert_eq!(m_kn(2, 3, 1), Some(3));
        assert_eq!(m_kn(2, 2, 2), Some(2));
        assert_eq!(m_kn(3, 3, 2), Some(16));
        assert_eq!(m_kn(3, 2, 1), Some(2));
    }

    #[test]
    fn orbit_differences() {
        assert!(ctx(2).check_orbit_difference(1).unwrap());
        assert!(ctx(2).check_orbit_difference(2).unwrap());
        for k in 1..=3 {
            assert!(ctx(9).check_orbit_difference(k).unwrap());
        }
    }

    #[test]
    fn gleason_examples() {
        let r = ctx(2).check_gleason(3).unwrap();
        assert_eq!(r.discriminant, -23);
        assert_eq!(r.residue, 1);
        assert_eq!(ctx(2).check_gleason(2).unwrap().discriminant, 1);
        assert_eq!(ctx(3).check_gleason(2).unwrap().discriminant, 1);
        let one = ctx(4).check_gleason(1).unwrap();
        assert!(one.resultant.is_none() && one.holds);
    }

    #[test]
    fn multiplicity_structure() {
        for dd in [2u64, 3, 4, 6] {
            let c = ctx(dd);
            for k in 2..=3 {
                for n in 1..=3 {
                    for d in c.valid_d() {
                        assert!(c.check_multiplicity(k, n, d).unwrap(), "D={dd} k={k} n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn r3_factor_instances() {
        assert!(ctx(7).r3_has_cyclotomic_factor().unwrap());
        assert!(ctx(13).r3_has_cyclotomic_factor().unwrap());
        assert!(!ctx(5).r3_has_cyclotomic_factor().unwrap());
    }

    #[test]
    fn closed_forms() {
        for d in [2u64, 3, 4, 6, 8] {
            let r = ctx(d).special_cases_check().unwrap();
            assert!(r.all_passed(), "{r}");
        }
        let two = ctx(2);
        assert_eq!(two.preperiodic_factor(2, 1, 2).unwrap().poly, IntPoly1::from_i64s("a", &[2, 1]));
    }

    #[test]
    fn survey_small() {
        let rows = fp_survey(&[2, 3, 8], 4, 5000).unwrap();
        for row in &rows {
            assert!(row.matches, "{row:?}");
        }
        let d3n3 = rows.iter().find(|r| r.degree == 3 && r.n == 3).unwrap();
        assert!(!d3n3.irreducible && !d3n3.degree_screen);
    }
}
