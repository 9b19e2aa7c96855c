//! Unicritical polynomials `f_a(z) = a z^D + 1` whose critical point `0` is
//! periodic or preperiodic, and the integer polynomials cutting out those
//! parameters.
//!
//! * `P_n = f_a^n(0)` and the Gleason factors `R_n`, obtained from `P_n` by
//!   Möbius inversion over the divisors of `n`.
//! * `P_{k,n,d} = Phi_d(P_{k+n-1}, P_{k-1})` for a homogenised cyclotomic
//!   `Phi_d`, and `R_{k,n,d}`, the part with exact preperiod `k` and period
//!   `n`.
//! * The aggregates `P_{k,n}` and `R_{k,n}` over all `d | D`, `d > 1`.

mod checks;
mod modp;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::Integer;

use crate::arith;
use crate::report::StructureReport;
use crate::zpoly::{IntPoly1, IntPoly2, Var};
use crate::{Error, Result};

pub use checks::{
    fp_survey, m_kn, survey_expectation, GleasonReport, ModpPowerReport, ResultantWitness, SurveyRow,
};
pub use modp::ModpFamily;

/// Highest orbit index a context will ever hold.
const MAX_INDEX: usize = 64;

pub(crate) fn var() -> Var {
    Var::from("a")
}

/// Per-degree state: `D`, its prime-power decomposition, and lazily filled
/// caches of `P_n` and `R_n`. Safe to share between threads.
#[derive(Debug)]
pub struct UnicriticalContext {
    degree: u64,
    prime_power: Option<(u64, u32)>,
    budget: usize,
    orbit: Vec<OnceLock<IntPoly1>>,
    gleason: Vec<OnceLock<IntPoly1>>,
    modp: OnceLock<ModpFamily>,
}

/// `R_{k,n,d}` (or the aggregate `R_{k,n}` when `d` is `None`) together with
/// the polynomial `P_{k,n,d}` (resp. `P_{k,n}`) it was extracted from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreperiodicFactor {
    pub k: u32,
    pub n: u32,
    pub d: Option<u64>,
    pub poly: IntPoly1,
    pub full: IntPoly1,
}

/// All preperiodic factors for one `(k, n)`, with the identity checks that
/// tie them together.
#[derive(Clone, Debug)]
pub struct FactorFamily {
    pub k: u32,
    pub n: u32,
    /// `R_{k,n,d}` for every `d | D`, `d > 1`, in increasing `d`.
    pub per_d: Vec<PreperiodicFactor>,
    /// `P_{k,n}` from the summation formula.
    pub full: IntPoly1,
    pub report: StructureReport,
}

impl FactorFamily {
    /// The aggregate `R_{k,n} = prod_d R_{k,n,d}` together with `P_{k,n}`.
    pub fn aggregate(&self) -> PreperiodicFactor {
        let poly = product_small_first(self.per_d.iter().map(|f| f.poly.clone()).collect())
            .unwrap_or_else(|| IntPoly1::one(var()));
        PreperiodicFactor { k: self.k, n: self.n, d: None, poly, full: self.full.clone() }
    }
}

/// Homogeneous cyclotomic coefficients and the helpers to evaluate them.
#[derive(Clone, Debug)]
struct Cyclo {
    /// `coeffs[i]` multiplies `X^i Y^(deg - i)`.
    coeffs: Vec<Integer>,
}

/// Univariate cyclotomic polynomial `Phi_d(x)`, from
/// `x^d - 1 = prod_{e | d} Phi_e(x)`.
pub fn cyclotomic_poly(d: u64) -> IntPoly1 {
    assert!(d >= 1, "cyclotomic index must be positive");
    let x = Var::from("X");
    let mut num = IntPoly1::monomial(x.clone(), 1, d as usize);
    num = num - IntPoly1::one(x.clone());
    for e in arith::divisors(d) {
        if e < d {
            num = num
                .exact_div(&cyclotomic_poly(e))
                .expect("cyclotomic division is exact");
        }
    }
    num
}

/// Homogenised cyclotomic `Phi_d(X, Y) = prod (X - w Y)` over primitive
/// `d`-th roots of unity `w`.
pub fn cyclotomic(d: u64) -> IntPoly2 {
    let f = cyclotomic_poly(d);
    let m = f.deg().unwrap() as u32;
    let vars = [Var::from("X"), Var::from("Y")];
    IntPoly2::new(
        vars,
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| ((i as u32, m - i as u32), c.clone())),
    )
}

impl Cyclo {
    fn new(d: u64) -> Self {
        Cyclo { coeffs: cyclotomic_poly(d).into_coeffs() }
    }

    /// `sum c_i X^i Y^(m-i)`, grouping the powers of `X` by Estrin's scheme
    /// so that the large products are few and balanced. When only every
    /// `s`-th coefficient is nonzero the scheme runs in `X^s`.
    fn eval(&self, xt: &mut PowerTable, y: &IntPoly1) -> IntPoly1 {
        let m = self.coeffs.len() - 1;
        let stride = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0().is_ne())
            .fold(m as u64, |g, (i, _)| arith::gcd(g, i as u64))
            .max(1) as usize;
        let ys = y.pow(stride as u32);
        let mut ypow = vec![IntPoly1::one(y.var().clone())];
        for j in 1..=m / stride {
            let next = &ypow[j - 1] * &ys;
            ypow.push(next);
        }
        let small: Vec<Option<IntPoly1>> = (0..=m / stride)
            .map(|i| {
                let c = &self.coeffs[i * stride];
                (c.cmp0().is_ne()).then(|| ypow[m / stride - i].scale(c))
            })
            .collect();
        estrin(&small, xt, stride as u32).unwrap_or_else(|| IntPoly1::zero(var()))
    }
}

/// `sum_(i+j=D-1) X^i Y^j`, evaluated through the factorisation
/// `S_(pq)(X, Y) = S_p(X, Y) S_q(X^p, Y^p)` along the prime factors of `D`.
fn geometric_sum(d: u64, xt: &mut PowerTable, y: &IntPoly1) -> IntPoly1 {
    let mut parts = Vec::new();
    let mut stride = 1u64;
    for (p, e) in arith::factorize(d) {
        for _ in 0..e {
            let mut c = vec![Integer::new(); ((p - 1) * stride + 1) as usize];
            for i in 0..p {
                c[(i * stride) as usize] = Integer::from(1);
            }
            parts.push(Cyclo { coeffs: c }.eval(xt, y));
            stride *= p;
        }
    }
    product_small_first(parts).unwrap_or_else(|| IntPoly1::one(var()))
}

/// Product of the factors, always multiplying the two shortest.
fn product_small_first(mut parts: Vec<IntPoly1>) -> Option<IntPoly1> {
    while parts.len() > 1 {
        parts.sort_by_key(|f| std::cmp::Reverse(f.coeffs().len()));
        let a = parts.pop().unwrap();
        let b = parts.pop().unwrap();
        parts.push(&a * &b);
    }
    parts.pop()
}

/// Cache of `X^i` for one large `X`, filled by repeated squaring.
pub(crate) struct PowerTable {
    pows: BTreeMap<u32, IntPoly1>,
}

impl PowerTable {
    pub(crate) fn new(x: &IntPoly1) -> Self {
        let mut pows = BTreeMap::new();
        pows.insert(1, x.clone());
        PowerTable { pows }
    }

    pub(crate) fn get(&mut self, i: u32) -> &IntPoly1 {
        assert!(i >= 1);
        if !self.pows.contains_key(&i) {
            let v = if i.is_multiple_of(2) {
                self.get(i / 2).square()
            } else {
                // Largest cached j with i - j also cached keeps the product balanced.
                let j = self
                    .pows
                    .keys()
                    .rev()
                    .copied()
                    .find(|&j| j < i && self.pows.contains_key(&(i - j)))
                    .unwrap_or(i - 1);
                let a = self.get(j).clone();
                &a * self.get(i - j)
            };
            self.pows.insert(i, v);
        }
        &self.pows[&i]
    }
}

/// `sum_i c[i] X^(stride i)` with `None` marking zero coefficients; `None` overall
/// when every coefficient is zero.
fn estrin(c: &[Option<IntPoly1>], xt: &mut PowerTable, stride: u32) -> Option<IntPoly1> {
    match c.len() {
        0 => None,
        1 => c[0].clone(),
        len => {
            let half = len.next_power_of_two() / 2;
            let lo = estrin(&c[..half], xt, stride);
            let hi = estrin(&c[half..], xt, stride).map(|h| &h * xt.get(half as u32 * stride));
            match (lo, hi) {
                (Some(l), Some(h)) => Some(l + h),
                (l, h) => l.or(h),
            }
        }
    }
}

fn construction(what: impl Into<String>) -> Error {
    Error::Construction(what.into())
}

impl UnicriticalContext {
    pub fn new(degree: u64, budget: usize) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidParameter(format!("degree D = {degree} must be at least 2")));
        }
        if degree > u32::MAX as u64 {
            return Err(Error::InvalidParameter(format!("degree D = {degree} too large")));
        }
        if budget == 0 {
            return Err(Error::InvalidParameter("budget must be positive".into()));
        }
        Ok(UnicriticalContext {
            degree,
            prime_power: arith::prime_power(degree),
            budget,
            orbit: (0..=MAX_INDEX).map(|_| OnceLock::new()).collect(),
            gleason: (0..=MAX_INDEX).map(|_| OnceLock::new()).collect(),
            modp: OnceLock::new(),
        })
    }

    /// `D`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `(p, e)` with `D = p^e`, if `D` is a prime power.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        self.prime_power
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub(crate) fn require_prime_power(&self) -> Result<(u64, u32)> {
        self.prime_power.ok_or(Error::NotPrimePower(self.degree))
    }

    /// The family reduced modulo the prime of `D = p^e`, built on first use.
    pub fn modp(&self) -> Result<&ModpFamily> {
        let (p, _) = self.require_prime_power()?;
        if let Some(f) = self.modp.get() {
            return Ok(f);
        }
        let f = ModpFamily::new(self.degree, p, self.budget)?;
        Ok(self.modp.get_or_init(|| f))
    }

    /// `N_k = (D^k - 1)/(D - 1)`.
    pub fn n_k(&self, k: u32) -> Result<u64> {
        arith::orbit_degree(self.degree, k)
            .ok_or_else(|| Error::InvalidParameter(format!("N_{k} overflows")))
    }

    fn check_budget(&self, index: u32) -> Result<()> {
        if index == 0 || index as usize > MAX_INDEX {
            return Err(Error::InvalidParameter(format!("orbit index {index} out of range")));
        }
        let needed = self.n_k(index - 1)?;
        if needed > self.budget as u64 {
            return Err(Error::BudgetExceeded {
                needed: needed.min(usize::MAX as u64) as usize,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// `P_n = f_a^n(0)`: `P_1 = 1`, `P_{n+1} = a P_n^D + 1`.
    pub fn critical_orbit(&self, n: u32) -> Result<&IntPoly1> {
        self.check_budget(n)?;
        if let Some(p) = self.orbit[n as usize].get() {
            return Ok(p);
        }
        let value = if n == 1 {
            IntPoly1::one(var())
        } else {
            let prev = self.critical_orbit(n - 1)?;
            prev.pow(self.degree as u32).shift(1) + IntPoly1::one(var())
        };
        Ok(self.orbit[n as usize].get_or_init(|| value))
    }

    /// Gleason factor `R_n = prod_{m | n} P_m^{mu(n/m)}`, checked against
    /// `prod_{m | n} R_m = P_n`.
    pub fn gleason_factor(&self, n: u32) -> Result<&IntPoly1> {
        self.check_budget(n)?;
        if let Some(r) = self.gleason[n as usize].get() {
            return Ok(r);
        }
        let mut num = IntPoly1::one(var());
        let mut den = IntPoly1::one(var());
        for m in arith::divisors(n as u64) {
            match arith::mobius(n as u64 / m) {
                1 => num = &num * self.critical_orbit(m as u32)?,
                -1 => den = &den * self.critical_orbit(m as u32)?,
                _ => {}
            }
        }
        let r = num.exact_div(&den)?;
        let mut prod = r.clone();
        for m in arith::divisors(n as u64) {
            if m < n as u64 {
                prod = &prod * self.gleason_factor(m as u32)?;
            }
        }
        if &prod != self.critical_orbit(n)? {
            return Err(construction(format!("prod_(m|{n}) R_m != P_{n}")));
        }
        Ok(self.gleason[n as usize].get_or_init(|| r))
    }

    fn check_kn(&self, k: u32, n: u32) -> Result<()> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("preperiod k = {k} must be at least 2")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("period n must be at least 1".into()));
        }
        self.check_budget(k + n - 1)
    }

    fn check_d(&self, d: u64) -> Result<()> {
        if d < 2 || !self.degree.is_multiple_of(d) {
            return Err(Error::InvalidParameter(format!(
                "d = {d} must be a divisor of D = {} with d >= 2",
                self.degree
            )));
        }
        Ok(())
    }

    /// Divisors `d | D` with `d >= 2`.
    pub fn valid_d(&self) -> Vec<u64> {
        arith::divisors(self.degree).into_iter().filter(|&d| d >= 2).collect()
    }

    fn pk_gcd(&self, k: u32, m: u32) -> Result<&IntPoly1> {
        self.critical_orbit(arith::gcd(m as u64, k as u64 - 1) as u32)
    }

    /// `P_{k,n,d} = Phi_d(P_{k+n-1}, P_{k-1})`.
    pub fn preperiodic_full(&self, k: u32, n: u32, d: u64) -> Result<IntPoly1> {
        self.check_kn(k, n)?;
        self.check_d(d)?;
        let mut xt = PowerTable::new(self.critical_orbit(k + n - 1)?);
        Ok(Cyclo::new(d).eval(&mut xt, self.critical_orbit(k - 1)?))
    }

    /// Computes `R_{k,m,d}` for every `m | n` by Möbius inversion and
    /// re-checks `P_{k,m,d} = P_gcd(m,k-1)^phi(d) prod_{m' | m} R_{k,m',d}`.
    fn d_family(
        &self,
        k: u32,
        n: u32,
        d: u64,
        top: Option<&mut PowerTable>,
        report: &mut StructureReport,
    ) -> Result<(BTreeMap<u32, IntPoly1>, BTreeMap<u32, IntPoly1>)> {
        self.check_kn(k, n)?;
        self.check_d(d)?;
        let phi = arith::totient(d) as u32;
        let cyclo = Cyclo::new(d);
        let divs: Vec<u32> = arith::divisors(n as u64).into_iter().map(|m| m as u32).collect();
        let y = self.critical_orbit(k - 1)?;
        let mut full = BTreeMap::new();
        let mut g = BTreeMap::new();
        let mut top = top;
        for &m in &divs {
            let x = self.critical_orbit(k + m - 1)?;
            let pkmd = match top.as_deref_mut() {
                Some(xt) if m == n => cyclo.eval(xt, y),
                _ => cyclo.eval(&mut PowerTable::new(x), y),
            };
            let pg = self.pk_gcd(k, m)?.pow(phi);
            g.insert(m, pkmd.exact_div_unverified(&pg)?);
            full.insert(m, pkmd);
        }
        let mut r: BTreeMap<u32, IntPoly1> = BTreeMap::new();
        for &m in &divs {
            let mut num = IntPoly1::one(var());
            let mut den = IntPoly1::one(var());
            for &mm in divs.iter().filter(|&&mm| m % mm == 0) {
                match arith::mobius((m / mm) as u64) {
                    1 => num = &num * &g[&mm],
                    -1 => den = &den * &g[&mm],
                    _ => {}
                }
            }
            let rm = num.exact_div_unverified(&den)?;
            if !rm.is_monic() {
                return Err(construction(format!("R_({k},{m},{d}) is not monic")));
            }
            r.insert(m, rm);
        }
        for &m in &divs {
            let mut prod = self.pk_gcd(k, m)?.pow(phi);
            for &mm in divs.iter().filter(|&&mm| m % mm == 0) {
                prod = &prod * &r[&mm];
            }
            let ok = prod == full[&m];
            report.push(
                format!("fkpd(k={k},n={m},d={d})"),
                ok,
                format!("P_(k,n,d) = P_gcd^{phi} * prod R_(k,m',d), degree {}", full[&m].degree()),
            );
            if !ok {
                return Err(construction(format!("P_({k},{m},{d}) factorisation identity fails")));
            }
        }
        Ok((full, r))
    }

    /// `R_{k,n,d}`, extracted by Möbius inversion with exact divisions and
    /// re-verified by multiplication.
    pub fn preperiodic_factor(&self, k: u32, n: u32, d: u64) -> Result<PreperiodicFactor> {
        let mut report = StructureReport::new("");
        let (mut full, mut r) = self.d_family(k, n, d, None, &mut report)?;
        Ok(PreperiodicFactor {
            k,
            n,
            d: Some(d),
            poly: r.remove(&n).unwrap(),
            full: full.remove(&n).unwrap(),
        })
    }

    /// `P_{k,n} = sum_{i+j=D-1} P_{k+n-1}^i P_{k-1}^j`.
    pub fn aggregate_full(&self, k: u32, n: u32) -> Result<IntPoly1> {
        self.check_kn(k, n)?;
        let mut xt = PowerTable::new(self.critical_orbit(k + n - 1)?);
        Ok(self.aggregate_with(&mut xt, k))
    }

    fn aggregate_with(&self, xt: &mut PowerTable, k: u32) -> IntPoly1 {
        let y = self.critical_orbit(k - 1).expect("checked by caller");
        geometric_sum(self.degree, xt, y)
    }

    /// The aggregate `R_{k,n} = prod_{d | D, d > 1} R_{k,n,d}`, verified
    /// against both closed forms of `P_{k,n}` and the factorisation
    /// `P_{k,n} = P_gcd(n,k-1)^(D-1) prod_{m | n} R_{k,m}`.
    pub fn aggregate_factor(&self, k: u32, n: u32) -> Result<PreperiodicFactor> {
        let fam = self.factor_family(k, n)?;
        if let Some(bad) = fam.report.failures().next() {
            return Err(construction(format!("{}: {}", bad.name, bad.detail)));
        }
        Ok(fam.aggregate())
    }

    /// Builds every `R_{k,n,d}` and the aggregate for one `(k, n)`, recording
    /// each identity check. Identity failures are report entries; only
    /// non-exact divisions abort.
    pub fn factor_family(&self, k: u32, n: u32) -> Result<FactorFamily> {
        self.check_kn(k, n)?;
        let dd = self.degree;
        let mut report = StructureReport::new(format!("unicritical D={dd} k={k} n={n}"));
        let x = self.critical_orbit(k + n - 1)?;
        let y = self.critical_orbit(k - 1)?;
        let nkn = self.n_k(k + n - 2)?;

        let mut xt = PowerTable::new(x);
        let pkn = self.aggregate_with(&mut xt, k);
        report.push(
            "fkp_constant",
            *pkn.coeff(0) == dd,
            format!("constant coefficient {} (expected D = {dd})", pkn.coeff(0)),
        );
        let want_deg = (dd - 1) * nkn;
        report.push(
            "fkp_monic_degree",
            pkn.is_monic() && pkn.deg() == Some(want_deg as usize),
            format!("degree {} (expected (D-1)N_(k+n-2) = {want_deg})", pkn.degree()),
        );
        {
            // Both closed forms agree iff (X - Y) * sum = X^D - Y^D.
            let lhs = &(x - y) * &pkn;
            let rhs = xt.get(dd as u32).clone() - y.pow(dd as u32);
            report.push(
                "pkn_quotient_form",
                lhs == rhs,
                "sum_(i+j=D-1) X^i Y^j = (X^D - Y^D)/(X - Y)",
            );
        }

        let mut per_d = Vec::new();
        let mut factors = vec![self.pk_gcd(k, n)?.pow(dd as u32 - 1)];
        for d in self.valid_d() {
            let (mut full, mut r) = self.d_family(k, n, d, Some(&mut xt), &mut report)?;
            per_d.push(PreperiodicFactor {
                k,
                n,
                d: Some(d),
                poly: r.remove(&n).unwrap(),
                full: full.remove(&n).unwrap(),
            });
            factors.extend(r.into_values());
        }
        drop(xt);

        factors.extend(per_d.iter().map(|f| f.poly.clone()));
        let buff = product_small_first(factors).unwrap();
        report.push("buff", buff == pkn, "P_(k,n) = P_gcd^(D-1) prod_(m|n) R_(k,m)");
        drop(buff);

        Ok(FactorFamily { k, n, per_d, full: pkn, report })
    }

    /// Lemma-style checks on `P_n`: monic, degree `N_(n-1)`, constant 1.
    pub fn check_orbit_polynomial(&self, n: u32) -> Result<StructureReport> {
        let p = self.critical_orbit(n)?;
        let want = self.n_k(n - 1)?;
        let mut r = StructureReport::new(format!("P_{n} for D={}", self.degree));
        r.push("monic", p.is_monic(), "");
        r.push(
            "degree",
            p.deg() == Some(want as usize),
            format!("degree {} (expected N_{} = {want})", p.degree(), n - 1),
        );
        r.push("constant_one", *p.coeff(0) == 1, format!("constant {}", p.coeff(0)));
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly1 {
        IntPoly1::from_i64s("a", c)
    }

    #[test]
    fn orbit_polynomials() {
        let ctx = UnicriticalContext::new(2, 5000).unwrap();
        assert_eq!(ctx.critical_orbit(1).unwrap(), &p(&[1]));
        assert_eq!(ctx.critical_orbit(2).unwrap(), &p(&[1, 1]));
        assert_eq!(ctx.critical_orbit(3).unwrap(), &p(&[1, 1, 2, 1]));
        // One more step of z -> a z^2 + 1 applied to P_3.
        let p3 = p(&[1, 1, 2, 1]);
        let want = &(&p3 * &p3).shift(1) + &p(&[1]);
        assert_eq!(ctx.critical_orbit(4).unwrap(), &want);
    }

    #[test]
    fn gleason_factors_d2() {
        let ctx = UnicriticalContext::new(2, 5000).unwrap();
        assert_eq!(ctx.gleason_factor(1).unwrap(), &p(&[1]));
        let p4 = ctx.critical_orbit(4).unwrap().clone();
        let r4 = ctx.gleason_factor(4).unwrap();
        assert_eq!(&(r4 * &p(&[1, 1])), &p4);
    }

    #[test]
    fn cyclotomics() {
        let vars = [Var::from("X"), Var::from("Y")];
        assert_eq!(cyclotomic(2), IntPoly2::from_i64s(vars.clone(), &[((1, 0), 1), ((0, 1), 1)]));
        assert_eq!(cyclotomic(4), IntPoly2::from_i64s(vars, &[((2, 0), 1), ((0, 2), 1)]));
        let one = Integer::from(1);
        assert_eq!(cyclotomic(6).eval(&one, &one), 1);
        assert_eq!(cyclotomic(4).eval(&one, &one), 2);
        assert_eq!(cyclotomic(9).eval(&one, &one), 3);
        assert_eq!(cyclotomic_poly(12), IntPoly1::from_i64s("X", &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn small_preperiodic_factors() {
        let ctx = UnicriticalContext::new(2, 5000).unwrap();
        assert_eq!(ctx.preperiodic_factor(2, 2, 2).unwrap().poly, p(&[1, 0, 1]));
        assert_eq!(ctx.preperiodic_factor(3, 1, 2).unwrap().poly, p(&[2, 2, 2, 1]));
        assert!(matches!(
            ctx.preperiodic_factor(2, 1, 3),
            Err(Error::InvalidParameter(_))
        ));
        let ctx3 = UnicriticalContext::new(3, 5000).unwrap();
        assert_eq!(ctx3.aggregate_full(2, 1).unwrap(), p(&[3, 3, 1]));
    }

    #[test]
    fn budget_refusal() {
        let ctx = UnicriticalContext::new(9, 5000).unwrap();
        assert!(ctx.critical_orbit(5).is_ok());
        assert!(matches!(
            ctx.critical_orbit(6),
            Err(Error::BudgetExceeded { needed: 7381, budget: 5000 })
        ));
    }
}
