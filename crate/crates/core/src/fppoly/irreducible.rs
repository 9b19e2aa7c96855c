//! Irreducibility over `F_p`.
//!
//! The main test walks the Frobenius powers `x^(p^i) mod f` for
//! `i = 1..=deg(f)/2` and stops at the first nontrivial
//! `gcd(x^(p^i) - x, f)`. Rabin's criterion is kept as an independent check.

use rug::Integer;
use serde::{Deserialize, Serialize};

use super::ModPoly;
use crate::arith;
use crate::{Error, Result};

/// One Frobenius step: degree of `gcd(x^(p^i) - x, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityStep {
    pub i: usize,
    pub gcd_degree: usize,
}

/// Record of an irreducibility decision, enough to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityTranscript {
    pub p: u64,
    pub degree: usize,
    pub steps: Vec<IrreducibilityStep>,
    pub irreducible: bool,
}

impl ModPoly {
    fn frobenius(&self, h: &ModPoly) -> Result<ModPoly> {
        h.modexp(&Integer::from(self.modulus()), self)
    }

    pub fn irreducibility_transcript(&self) -> Result<IrreducibilityTranscript> {
        let n = self.deg().ok_or(Error::ConstantPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let p = self.modulus();
        let f = self.monic().0;
        let x = ModPoly::x(p).rem(&f)?;
        let mut h = x.clone();
        let mut steps = Vec::new();
        for i in 1..=n / 2 {
            h = f.frobenius(&h)?;
            let g = h.sub(&x)?.gcd(&f)?;
            let gd = g.deg().unwrap_or(0);
            steps.push(IrreducibilityStep { i, gcd_degree: gd });
            if gd != 0 {
                return Ok(IrreducibilityTranscript { p, degree: n, steps, irreducible: false });
            }
        }
        Ok(IrreducibilityTranscript { p, degree: n, steps, irreducible: true })
    }

    /// Whether the polynomial is irreducible over `F_p`. Constants are
    /// rejected.
    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.irreducibility_transcript()?.irreducible)
    }

    /// Rabin's test: `x^(p^n) = x mod f` and `gcd(x^(p^(n/t)) - x, f) = 1`
    /// for every prime `t | n`.
    pub fn is_irreducible_rabin(&self) -> Result<bool> {
        let n = self.deg().ok_or(Error::ConstantPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let p = self.modulus();
        let f = self.monic().0;
        let x = ModPoly::x(p).rem(&f)?;
        let mut powers = vec![x.clone()];
        for _ in 0..n {
            let next = f.frobenius(powers.last().unwrap())?;
            powers.push(next);
        }
        if powers[n] != x {
            return Ok(false);
        }
        for (t, _) in arith::factorize(n as u64) {
            let h = &powers[n / t as usize];
            if !h.sub(&x)?.gcd(&f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> ModPoly {
        ModPoly::from_i64s(p, c).unwrap()
    }

    #[test]
    fn known_cases() {
        assert!(fp(2, &[1, 1, 0, 1]).is_irreducible().unwrap());
        assert!(fp(2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]).is_irreducible().unwrap());
        assert!(!fp(2, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(matches!(fp(2, &[1]).is_irreducible(), Err(Error::ConstantPolynomial)));
        let t = fp(2, &[1, 0, 1]).irreducibility_transcript().unwrap();
        assert_eq!(t.steps, vec![IrreducibilityStep { i: 1, gcd_degree: 1 }]);
    }

    /// Enumerates every monic polynomial of degree `1..=deg/2` as a trial
    /// divisor.
    fn brute_force(f: &ModPoly) -> bool {
        let p = f.modulus();
        let n = f.deg().unwrap();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut r = idx;
                for _ in 0..d {
                    c.push(r % p);
                    r /= p;
                }
                c.push(1);
                let g = ModPoly::new(p, c);
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn agrees_with_enumeration_and_rabin() {
        for p in [2u64, 3, 5] {
            let max_deg = match p {
                2 => 9,
                3 => 6,
                _ => 4,
            };
            let mut seed = 12345u64;
            for _ in 0..150 {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let deg = 1 + (seed >> 33) as usize % max_deg;
                let mut c: Vec<u64> = (0..deg)
                    .map(|i| (seed >> (i % 50)) % p)
                    .collect();
                c.push(1 + (seed >> 7) % (p - 1));
                let f = ModPoly::new(p, c);
                let expect = brute_force(&f);
                assert_eq!(f.is_irreducible().unwrap(), expect, "{f:?}");
                assert_eq!(f.is_irreducible_rabin().unwrap(), expect, "{f:?}");
            }
        }
    }
}
