//! Numeric cross-checks in double precision: all complex roots of a
//! generated polynomial, and the orbit of the critical point at each root.
//!
//! Nothing here is certified; the exact modules never depend on it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cubicfam::CubicFamilyInstance;
use crate::quadfam::QuadFamilyInstance;
use crate::unifam::UnicriticalContext;
use crate::zpoly::IntPoly1;
use crate::{Error, Result};

/// Degrees above this are refused.
pub const MAX_DEGREE: usize = 2000;
/// Required backward error `|f(z)| / sum |c_i| |z|^i` of each root.
pub const ROOT_TOLERANCE: f64 = 1e-10;
/// Default tolerance for orbit coincidences.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

const MAX_ITERATIONS: usize = 2000;
const ESCAPE: f64 = 1e150;
/// Double backward errors below this are treated as rounding noise.
const EXACT_BELOW: f64 = 1e-11;
/// Two approximations this close (relatively) have converged to one root.
const NEAR_DOUBLE: f64 = 1e-12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub backward_error: Vec<f64>,
    /// Per root: backward error below [`ROOT_TOLERANCE`].
    pub converged: Vec<bool>,
    pub iterations: usize,
}

impl RootSet {
    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }
}

fn to_f64_coeffs(f: &IntPoly1) -> Result<Vec<f64>> {
    let c: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64()).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("coefficients exceed double precision range".into()));
    }
    Ok(c)
}

/// `f(z) / f'(z)` and the backward error at `z`. For `|z| > 1` the
/// reversed polynomial is evaluated at `1/z` to stay in range.
fn newton_ratio(c: &[f64], z: Complex64) -> (Complex64, f64) {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::new(c[n], 0.0), Complex64::new(0.0, 0.0));
        let mut scale = c[n].abs();
        let r = z.norm();
        for i in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[i];
            scale = scale * r + c[i].abs();
        }
        (p / dp, p.norm() / scale)
    } else {
        // p(z) = z^n q(w) with w = 1/z and q(w) = sum c_i w^(n-i).
        let w = z.inv();
        let (mut q, mut dq) = (Complex64::new(c[0], 0.0), Complex64::new(0.0, 0.0));
        let mut scale = c[0].abs();
        let r = w.norm();
        for i in 1..=n {
            dq = dq * w + q;
            q = q * w + c[i];
            scale = scale * r + c[i].abs();
        }
        let den = q * n as f64 - w * dq;
        (z * q / den, q.norm() / scale)
    }
}

/// Starting points on circles read off the upper convex hull of
/// `(i, log |c_i|)`: an edge from `i` to `j` contributes `j - i` points of
/// modulus `|c_i / c_j|^(1/(j-i))`, the typical size of that many roots.
fn initial_points(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(i, x)| (i, x.abs().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as f64 - o.0 as f64) * (q.1 - o.1) - (a.1 - o.1) * (q.0 as f64 - o.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut z = Vec::with_capacity(n);
    // Roots at zero are exact there.
    z.extend((0..hull[0].0).map(|_| Complex64::new(0.0, 0.0)));
    for w in hull.windows(2) {
        let (i, j) = (w[0].0, w[1].0);
        let m = j - i;
        let radius = ((w[0].1 - w[1].1) / m as f64).exp();
        let offset = 2.0 * PI * i as f64 / n as f64 + 0.4;
        z.extend((0..m).map(|t| Complex64::from_polar(radius, 2.0 * PI * t as f64 / m as f64 + offset)));
    }
    z
}

/// All `deg f` complex roots, by Aberth–Ehrlich iteration from points on
/// the circles of the Newton polygon.
pub fn all_roots(f: &IntPoly1) -> Result<RootSet> {
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!("degree {n} exceeds the oracle cap {MAX_DEGREE}")));
    }
    let c = to_f64_coeffs(f)?;
    let mut z = initial_points(&c);
    let bound = z.iter().map(|w| w.norm()).fold(1e-3, f64::max);
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && !done.iter().all(|&d| d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (mut ratio, be) = newton_ratio(&c, z[i]);
            if be < EXACT_BELOW {
                ratio = accurate_ratio(f, z[i]).unwrap_or(ratio);
            }
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= step;
            if !step.norm().is_finite() {
                z[i] = Complex64::from_polar(bound, i as f64 + 0.1);
                continue;
            }
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            }
        }
    }
    let backward_error: Vec<f64> = z.iter().map(|&zi| newton_ratio(&c, zi).1).collect();
    let converged = backward_error.iter().map(|&e| e < ROOT_TOLERANCE).collect();
    Ok(RootSet { roots: z, backward_error, converged, iterations })
}

/// `f(z) / f'(z)` to double accuracy, evaluated in fixed point with enough
/// bits to absorb the cancellation. Near clustered roots of a polynomial
/// with large coefficients the double evaluation is pure rounding noise,
/// and the iteration then wanders instead of converging.
fn accurate_ratio(f: &IntPoly1, z: Complex64) -> Option<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
        return None;
    }
    let n = f.coeffs().len() - 1;
    // Truncation adds at most (n + 1) max(1, |z|)^n 2^(-w) to f(z); the
    // ratio needs that below 2^(-64) |z| |f'(z)|.
    let log_z = z.norm().log2();
    let base = 64 + (n as f64 + 1.0).log2().ceil() as u32 + (n as f64 * log_z.max(0.0)).ceil() as u32
        + (-log_z).max(0.0).ceil() as u32;
    let (ratio, log_df) = fixed_point_ratio(f, z, base)?;
    if log_df >= 0 {
        return Some(ratio);
    }
    fixed_point_ratio(f, z, base + (-log_df) as u32 + 16).map(|(r, _)| r)
}

/// Horner in fixed point with `w` fractional bits on `z ~ (X + iY) / 2^s`.
/// Returns the ratio and `floor(log2 |f'(z)|)`.
fn fixed_point_ratio(f: &IntPoly1, z: Complex64, w: u32) -> Option<(Complex64, i64)> {
    let s = (64 - z.norm().log2().floor() as i32).max(0) as u32;
    let scale = 2f64.powi(s as i32);
    let x = Integer::from_f64(z.re * scale)?;
    let y = Integer::from_f64(z.im * scale)?;
    let c = f.coeffs();
    let n = c.len() - 1;
    let mul = |ar: &Integer, ai: &Integer| -> (Integer, Integer) {
        let re = (Integer::from(ar * &x) - Integer::from(ai * &y)) >> s;
        let im = (Integer::from(ar * &y) + Integer::from(ai * &x)) >> s;
        (re, im)
    };
    let (mut pr, mut pi) = (Integer::from(&c[n] << w), Integer::new());
    let (mut dr, mut di) = (Integer::new(), Integer::new());
    for ci in c[..n].iter().rev() {
        let (tr, ti) = mul(&dr, &di);
        dr = tr + &pr;
        di = ti + &pi;
        let (tr, ti) = mul(&pr, &pi);
        pr = tr + Integer::from(ci << w);
        pi = ti;
    }
    let den = Integer::from(&dr * &dr) + Integer::from(&di * &di);
    if den == 0 {
        return None;
    }
    let log_df = (den.significant_bits() as i64 - 1) / 2 - w as i64;
    let re = Rational::from((Integer::from(&pr * &dr) + Integer::from(&pi * &di), den.clone())).to_f64();
    let im = Rational::from((Integer::from(&pi * &dr) - Integer::from(&pr * &di), den)).to_f64();
    let out = Complex64::new(re, im);
    (out.re.is_finite() && out.im.is_finite()).then_some((out, log_df))
}

/// `|sum of roots + c_(n-1)/c_n|`, relative to the size of the roots.
pub fn vieta_error(f: &IntPoly1, roots: &[Complex64]) -> Result<f64> {
    let c = to_f64_coeffs(f)?;
    let n = c.len() - 1;
    let want = -c[n - 1] / c[n];
    let sum: Complex64 = roots.iter().sum();
    let scale = roots.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    Ok((sum - want).norm() / scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum OrbitMap {
    /// `z -> z^3 + b`, critical point 0.
    CubicSlice { b: Complex64 },
    /// `G_{a,b}(z) = a z (b - z) / (1 + (b - 2) z)`, critical point 1.
    QuadraticRational { a: Complex64, b: Complex64 },
    /// `z -> a z^D + 1`, critical point 0.
    Unicritical { degree: u32, a: Complex64 },
}

impl OrbitMap {
    fn tag(&self) -> &'static str {
        match self {
            OrbitMap::CubicSlice { .. } => "cubic-slice",
            OrbitMap::QuadraticRational { .. } => "quadratic-rational-slice",
            OrbitMap::Unicritical { .. } => "unicritical",
        }
    }

    fn parameter(&self) -> Complex64 {
        match *self {
            OrbitMap::CubicSlice { b } => b,
            OrbitMap::QuadraticRational { a, .. } => a,
            OrbitMap::Unicritical { a, .. } => a,
        }
    }

    fn critical_point(&self) -> Complex64 {
        match self {
            OrbitMap::QuadraticRational { .. } => Complex64::new(1.0, 0.0),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// One step, or `None` at a pole.
    fn step(&self, z: Complex64) -> Option<Complex64> {
        match *self {
            OrbitMap::CubicSlice { b } => Some(z * z * z + b),
            OrbitMap::QuadraticRational { a, b } => {
                let den = Complex64::new(1.0, 0.0) + (b - 2.0) * z;
                let num = a * z * (b - z);
                if den.norm() <= 1e-14 * num.norm().max(1.0) {
                    None
                } else {
                    Some(num / den)
                }
            }
            OrbitMap::Unicritical { degree, a } => Some(a * z.powu(degree) + 1.0),
        }
    }

    /// `z_0, ..., z_steps` of the critical orbit, stopping early at a pole
    /// or escape.
    pub fn orbit(&self, steps: usize) -> (Vec<Complex64>, Option<OrbitVerdict>) {
        let mut z = vec![self.critical_point()];
        for _ in 0..steps {
            match self.step(*z.last().unwrap()) {
                None => return (z, Some(OrbitVerdict::Pole)),
                Some(w) if !(w.norm() < ESCAPE) => return (z, Some(OrbitVerdict::Escaped)),
                Some(w) => z.push(w),
            }
        }
        (z, None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitVerdict {
    Confirmed,
    /// A coincidence was found, but not the claimed one (or too loosely).
    Mismatch,
    /// No coincidence within the step budget.
    NotFound,
    Escaped,
    Pole,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicsReport {
    pub family: String,
    pub parameter: Complex64,
    pub claimed: Option<(u32, u32)>,
    pub preperiod: Option<u32>,
    pub period: Option<u32>,
    /// Relative distance `|z_(k+n) - z_k| / max(1, |z_k|, |z_(k+n)|)`.
    pub residual: f64,
    /// The same distance one step earlier; must exceed ten tolerances.
    pub margin: f64,
    pub verdict: OrbitVerdict,
}

fn rel_dist(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

/// Follows the critical orbit to its first near-coincidence `z_i = z_j`,
/// `i < j`, giving preperiod `i` and period `j - i`. With a claim `(k, n)`
/// the verdict is [`OrbitVerdict::Confirmed`] only when the observed pair
/// equals the claim and the coincidence one step earlier fails by at least
/// ten tolerances.
pub fn classify_orbit(map: &OrbitMap, claimed: Option<(u32, u32)>, tol: f64, max_steps: usize) -> Result<DynamicsReport> {
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} outside [1e-12, 1e-6]")));
    }
    let (orbit, stop) = map.orbit(max_steps);
    let mut found = None;
    'outer: for j in 1..orbit.len() {
        for i in 0..j {
            if rel_dist(orbit[i], orbit[j]) < tol {
                found = Some((i, j));
                break 'outer;
            }
        }
    }
    let mut report = DynamicsReport {
        family: map.tag().into(),
        parameter: map.parameter(),
        claimed,
        preperiod: None,
        period: None,
        residual: f64::INFINITY,
        margin: f64::INFINITY,
        verdict: OrbitVerdict::NotFound,
    };
    let Some((i, j)) = found else {
        report.verdict = stop.unwrap_or(OrbitVerdict::NotFound);
        return Ok(report);
    };
    report.preperiod = Some(i as u32);
    report.period = Some((j - i) as u32);
    report.residual = rel_dist(orbit[i], orbit[j]);
    if i > 0 {
        report.margin = rel_dist(orbit[i - 1], orbit[j - 1]);
    }
    report.verdict = match claimed {
        Some((k, n)) if (k as usize, (k + n) as usize) != (i, j) => OrbitVerdict::Mismatch,
        _ if report.margin < 10.0 * tol => OrbitVerdict::Mismatch,
        _ => OrbitVerdict::Confirmed,
    };
    Ok(report)
}

/// A built polynomial and the dynamics its roots should exhibit.
#[derive(Clone, Copy, Debug)]
pub enum FamilyTarget<'a> {
    /// Roots of `s_k`: preperiod `k` onto a fixed point of `z^3 + b`.
    Cubic(&'a CubicFamilyInstance),
    /// Roots of `r_k`: preperiod `k` onto the fixed point 0 of `a z (2 - z)`.
    Quadratic(&'a QuadFamilyInstance),
    /// Roots of `R_{k,n,d}`: preperiod `k`, period `n`.
    Unicritical { ctx: &'a UnicriticalContext, k: u32, n: u32, d: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub family: String,
    pub k: u32,
    pub n: u32,
    pub d: Option<u64>,
    pub degree: usize,
    pub roots_converged: usize,
    pub confirmed: usize,
    pub max_residual: f64,
    pub vieta_error: f64,
    /// For the unicritical family: the roots with
    /// `z_(k+n-1) = omega z_(k-1)` for a primitive `d`-th root of unity.
    pub omega_confirmed: Option<usize>,
    pub anomalies: Vec<String>,
    pub reports: Vec<DynamicsReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.roots_converged == self.degree
            && self.confirmed == self.degree
            && self.vieta_error < 1e-8
            && self.omega_confirmed.is_none_or(|c| c == self.degree)
            && self.anomalies.is_empty()
    }
}

/// Finds every root of the family's univariate polynomial and classifies
/// the critical orbit at each.
pub fn validate_family(target: FamilyTarget<'_>, tol: f64) -> Result<ValidationReport> {
    let (poly, family, k, n, d) = match target {
        FamilyTarget::Cubic(inst) => (inst.s.clone(), "cubic-slice", inst.k, 1, None),
        FamilyTarget::Quadratic(inst) => (inst.r_line.clone(), "quadratic-rational-slice", inst.k, 1, None),
        FamilyTarget::Unicritical { ctx, k, n, d } => {
            (ctx.preperiodic_factor(k, n, d)?.poly, "unicritical", k, n, Some(d))
        }
    };
    let roots = all_roots(&poly)?;
    let degree = roots.roots.len();
    let mut anomalies = Vec::new();
    for (i, be) in roots.backward_error.iter().enumerate() {
        if *be >= ROOT_TOLERANCE {
            anomalies.push(format!("root {i} did not converge (backward error {be:.2e})"));
        }
    }
    for i in 0..degree {
        for j in 0..i {
            if rel_dist(roots.roots[i], roots.roots[j]) < NEAR_DOUBLE {
                anomalies.push(format!("near-double root at {}", roots.roots[i]));
            }
        }
    }
    let max_steps = (k + n) as usize + 4;
    let mut reports = Vec::with_capacity(degree);
    let mut omega_ok = 0;
    for &z in &roots.roots {
        let map = match target {
            FamilyTarget::Cubic(_) => OrbitMap::CubicSlice { b: z },
            FamilyTarget::Quadratic(_) => OrbitMap::QuadraticRational { a: z, b: Complex64::new(2.0, 0.0) },
            FamilyTarget::Unicritical { ctx, .. } => OrbitMap::Unicritical { degree: ctx.degree() as u32, a: z },
        };
        let report = classify_orbit(&map, Some((k, n)), tol, max_steps)?;
        if let (FamilyTarget::Unicritical { .. }, Some(d)) = (target, d) {
            let (orbit, _) = map.orbit((k + n) as usize);
            if orbit.len() > (k + n - 1) as usize && omega_holds(orbit[(k + n - 1) as usize], orbit[k as usize - 1], d, tol) {
                omega_ok += 1;
            }
        }
        reports.push(report);
    }
    let confirmed = reports.iter().filter(|r| r.verdict == OrbitVerdict::Confirmed).count();
    let max_residual = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(ValidationReport {
        family: family.into(),
        k,
        n,
        d,
        degree,
        roots_converged: roots.converged.iter().filter(|&&c| c).count(),
        confirmed,
        max_residual,
        vieta_error: vieta_error(&poly, &roots.roots)?,
        omega_confirmed: d.map(|_| omega_ok),
        anomalies,
        reports,
    })
}

/// `x = omega y` for some primitive `d`-th root of unity `omega`.
fn omega_holds(x: Complex64, y: Complex64, d: u64, tol: f64) -> bool {
    (1..d)
        .filter(|&j| arith::gcd(j, d) == 1)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64))
        .any(|w| rel_dist(x, w * y) < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{cubicfam, quadfam};

    fn p(c: &[i64]) -> IntPoly1 {
        IntPoly1::from_i64s("a", c)
    }

    #[test]
    fn simple_roots() {
        let r = all_roots(&p(&[2, 1])).unwrap();
        assert!((r.roots[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        let mut r = all_roots(&p(&[1, 0, 1])).unwrap().roots;
        r.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn wide_coefficients() {
        // Roots 1000 and 1/1000, and a cyclotomic of degree 48.
        let f = p(&[1000, -1_000_001, 1000]);
        let r = all_roots(&f).unwrap();
        assert!(r.all_converged());
        let phi = crate::unifam::cyclotomic_poly(105).with_var("a");
        let r = all_roots(&phi).unwrap();
        assert!(r.all_converged() && vieta_error(&phi, &r.roots).unwrap() < 1e-10);
    }

    #[test]
    fn s2_roots_are_preperiodic() {
        let inst = cubicfam::build(2).unwrap();
        let v = validate_family(FamilyTarget::Cubic(&inst), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.degree, 4);
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn r3_roots() {
        let inst = quadfam::build(3).unwrap();
        let v = validate_family(FamilyTarget::Quadratic(&inst), DEFAULT_TOLERANCE).unwrap();
        assert!(v.passed(), "{v:?}");
        // The only real root; the other two are 1.4196 +- 0.6063i.
        let real: Vec<_> = v.reports.iter().filter(|r| r.parameter.im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].parameter.re + 0.839_286_76).abs() < 1e-8);
    }

    #[test]
    fn unicritical_d2() {
        let ctx = UnicriticalContext::new(2, 5000).unwrap();
        let v = validate_family(FamilyTarget::Unicritical { ctx: &ctx, k: 2, n: 2, d: 2 }, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.degree, 2);
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.omega_confirmed, Some(2));
    }

    #[test]
    fn non_root_is_not_confirmed() {
        let map = OrbitMap::Unicritical { degree: 2, a: Complex64::new(-2.0, 0.0) };
        let r = classify_orbit(&map, Some((1, 3)), DEFAULT_TOLERANCE, 20).unwrap();
        assert_ne!(r.verdict, OrbitVerdict::Confirmed);
        // -2: 0 -> 1 -> -1 -> -1, preperiod 2 onto a fixed point.
        assert_eq!((r.preperiod, r.period), (Some(2), Some(1)));
    }

    #[test]
    fn escape_and_pole() {
        let map = OrbitMap::Unicritical { degree: 2, a: Complex64::new(5.0, 0.0) };
        assert_eq!(classify_orbit(&map, None, 1e-8, 50).unwrap().verdict, OrbitVerdict::Escaped);
        // a = -1, b = 3: 1 -> -1 * 1 * 2 / 2 = -1 -> pole at 1 + z = 0.
        let map = OrbitMap::QuadraticRational { a: Complex64::new(-1.0, 0.0), b: Complex64::new(3.0, 0.0) };
        assert_eq!(classify_orbit(&map, None, 1e-8, 10).unwrap().verdict, OrbitVerdict::Pole);
        assert!(classify_orbit(&map, None, 1e-3, 10).is_err());
    }
}
