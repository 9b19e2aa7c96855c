//! The unicritical family computed directly in `F_p[a]`.
//!
//! Every division in the construction of `R_n`, `R_{k,n,d}` and `R_{k,n}` is
//! by a monic polynomial, so reducing the integer construction modulo `p`
//! step by step gives the reductions of the integer polynomials without ever
//! forming them. For `D = p^e` the reductions are sparse and cheap even where
//! the integer polynomials are not.

use std::sync::OnceLock;

use super::{cyclotomic_poly, MAX_INDEX};
use crate::arith;
use crate::fppoly::ModPoly;
use crate::zpoly::check_prime;
use crate::{Error, Result};

#[derive(Debug)]
pub struct ModpFamily {
    degree: u64,
    p: u64,
    budget: usize,
    orbit: Vec<OnceLock<ModPoly>>,
}

fn construction(what: String) -> Error {
    Error::Construction(what)
}

impl ModpFamily {
    /// Works for any `D >= 2` and prime `p`; the structure results only
    /// apply when `p` is the prime of `D = p^e`.
    pub fn new(degree: u64, p: u64, budget: usize) -> Result<Self> {
        check_prime(p)?;
        if degree < 2 || degree > u32::MAX as u64 {
            return Err(Error::InvalidParameter(format!("degree D = {degree} out of range")));
        }
        Ok(ModpFamily {
            degree,
            p,
            budget,
            orbit: (0..=MAX_INDEX).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    fn check_budget(&self, index: u32) -> Result<()> {
        if index == 0 || index as usize > MAX_INDEX {
            return Err(Error::InvalidParameter(format!("orbit index {index} out of range")));
        }
        let needed = arith::orbit_degree(self.degree, index - 1)
            .ok_or_else(|| Error::InvalidParameter(format!("N_{} overflows", index - 1)))?;
        if needed > self.budget as u64 {
            return Err(Error::BudgetExceeded {
                needed: needed.min(usize::MAX as u64) as usize,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// `P_n mod p`.
    pub fn critical_orbit(&self, n: u32) -> Result<&ModPoly> {
        self.check_budget(n)?;
        if let Some(v) = self.orbit[n as usize].get() {
            return Ok(v);
        }
        let value = if n == 1 {
            ModPoly::one(self.p)
        } else {
            let prev = self.critical_orbit(n - 1)?;
            prev.pow(self.degree).mul(&ModPoly::x(self.p))?.add(&ModPoly::one(self.p))?
        };
        Ok(self.orbit[n as usize].get_or_init(|| value))
    }

    fn exact(&self, num: &ModPoly, den: &ModPoly, what: impl FnOnce() -> String) -> Result<ModPoly> {
        num.exact_div(den)?.ok_or_else(|| construction(format!("{} is not exact mod {}", what(), self.p)))
    }

    /// `R_n mod p`.
    pub fn gleason_factor(&self, n: u32) -> Result<ModPoly> {
        let mut num = ModPoly::one(self.p);
        let mut den = ModPoly::one(self.p);
        for m in arith::divisors(n as u64) {
            match arith::mobius(n as u64 / m) {
                1 => num = num.mul(self.critical_orbit(m as u32)?)?,
                -1 => den = den.mul(self.critical_orbit(m as u32)?)?,
                _ => {}
            }
        }
        self.exact(&num, &den, || format!("R_{n}"))
    }

    /// `Phi_d(P_{k+n-1}, P_{k-1}) mod p`, by Horner's rule in `P_{k+n-1}`.
    pub fn preperiodic_full(&self, k: u32, n: u32, d: u64) -> Result<ModPoly> {
        self.check_kn(k, n)?;
        let x = self.critical_orbit(k + n - 1)?;
        let y = self.critical_orbit(k - 1)?;
        let phi = cyclotomic_poly(d);
        let c = phi.coeffs();
        let m = c.len() - 1;
        let mut acc = ModPoly::one(self.p);
        let mut ypow = ModPoly::one(self.p);
        for i in (0..m).rev() {
            ypow = ypow.mul(y)?;
            let ci = c[i].mod_u(self.p as u32) as u64;
            acc = acc.mul(x)?.add(&ypow.scale(ci))?;
        }
        Ok(acc)
    }

    fn check_kn(&self, k: u32, n: u32) -> Result<()> {
        if k < 2 || n < 1 {
            return Err(Error::InvalidParameter(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
        }
        Ok(())
    }

    fn check_d(&self, d: u64) -> Result<()> {
        if d < 2 || !self.degree.is_multiple_of(d) {
            return Err(Error::InvalidParameter(format!("d = {d} must divide D = {} and be >= 2", self.degree)));
        }
        Ok(())
    }

    /// `R_{k,n,d} mod p`, by the same Möbius inversion as over the integers.
    pub fn preperiodic_factor(&self, k: u32, n: u32, d: u64) -> Result<ModPoly> {
        self.check_kn(k, n)?;
        self.check_d(d)?;
        let phi = arith::totient(d);
        let mut num = ModPoly::one(self.p);
        let mut den = ModPoly::one(self.p);
        for m in arith::divisors(n as u64) {
            let mu = arith::mobius(n as u64 / m);
            if mu == 0 {
                continue;
            }
            let m = m as u32;
            let g = arith::gcd(m as u64, k as u64 - 1) as u32;
            let full = self.preperiodic_full(k, m, d)?;
            let gm = self.exact(&full, &self.critical_orbit(g)?.pow(phi), || {
                format!("P_({k},{m},{d}) / P_{g}^{phi}")
            })?;
            if mu == 1 {
                num = num.mul(&gm)?;
            } else {
                den = den.mul(&gm)?;
            }
        }
        self.exact(&num, &den, || format!("R_({k},{n},{d})"))
    }

    /// The aggregate `R_{k,n} mod p`.
    pub fn aggregate_factor(&self, k: u32, n: u32) -> Result<ModPoly> {
        let mut acc = ModPoly::one(self.p);
        for d in arith::divisors(self.degree).into_iter().filter(|&d| d > 1) {
            acc = acc.mul(&self.preperiodic_factor(k, n, d)?)?;
        }
        Ok(acc)
    }
}
