//! Polynomials over a prime field `F_p` with `p < 2^32`.

mod irreducible;

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::zpoly::{kronecker, Degree, IntPoly1, Var};
use crate::{Error, Result};

pub use irreducible::{IrreducibilityStep, IrreducibilityTranscript};

/// Dense polynomial over `F_p`, lowest degree first, residues in `0..p`,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

/// Result of a successful [`ModPoly::as_power_of`]: `A = scalar * B^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerOf {
    pub exponent: u64,
    pub scalar: u64,
}

pub(crate) fn mul_mod(x: u64, y: u64, p: u64) -> u64 {
    x * y % p
}

pub(crate) fn pow_mod(mut x: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    x %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, x, p);
        }
        x = mul_mod(x, x, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

impl ModPoly {
    /// Reduces `coeffs` into `0..p`. The caller vouches that `p` is a prime
    /// below `2^32`; use [`IntPoly1::reduce_mod`] for a checked entry point.
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!((2..1 << 32).contains(&p), "modulus out of range");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        trim(&mut coeffs);
        ModPoly { p, coeffs }
    }

    /// Checked constructor from signed coefficients.
    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Result<Self> {
        crate::zpoly::check_prime(p)?;
        Ok(Self::new(
            p,
            coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
        ))
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn monomial(p: u64, c: u64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Self::new(p, v)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// True when the polynomial is `c * x^e` for some `c` and `e`.
    pub fn is_monomial(&self) -> bool {
        self.nnz() == 1
    }

    /// Lift to the integers with representatives in `0..p`.
    pub fn to_int_poly(&self, var: impl Into<Var>) -> IntPoly1 {
        IntPoly1::new(var, self.coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p).collect();
        Ok(Self::new(self.p, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
            .collect();
        Ok(Self::new(self.p, c))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::new(self.p, self.coeffs.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(self.p, mul_coeffs(self.p, &self.coeffs, &other.coeffs)))
    }

    /// Scalar multiple that makes the polynomial monic, with the original
    /// leading coefficient.
    pub fn monic(&self) -> (Self, u64) {
        match self.leading() {
            None => (self.clone(), 0),
            Some(1) => (self.clone(), 1),
            Some(lc) => (self.scale(inv_mod(lc, self.p)), lc),
        }
    }

    /// Euclidean division with `self = q * d + r` and `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check(d)?;
        let m = d.deg().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        if self.coeffs.len() <= m {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_mod(d.coeffs[m], p);
        let terms: Vec<(usize, u64)> = d.coeffs[..m]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, p - c))
            .collect();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - m];
        for i in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[i + m]);
            if top == 0 {
                continue;
            }
            let t = mul_mod(top, inv, p);
            q[i] = t;
            for &(j, c) in &terms {
                r[i + j] = (r[i + j] + mul_mod(t, c, p)) % p;
            }
        }
        r.truncate(m);
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().0)
    }

    /// `self * other mod m`.
    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other)?.rem(m)
    }

    /// `base^e mod modulus` by square-and-multiply over the bits of `e`.
    pub fn modexp(&self, e: &Integer, modulus: &Self) -> Result<Self> {
        self.check(modulus)?;
        if e.cmp0().is_lt() {
            return Err(Error::InvalidParameter("negative exponent".into()));
        }
        if modulus.deg().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let base = self.rem(modulus)?;
        let mut acc = Self::one(self.p);
        for i in (0..e.significant_bits()).rev() {
            acc = acc.mul_mod(&acc, modulus)?;
            if e.get_bit(i) {
                acc = acc.mul_mod(&base, modulus)?;
            }
        }
        acc.rem(modulus)
    }

    /// `self(x^q)`. When `q` is a power of `p` this equals `self^q`.
    pub fn spread(&self, q: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u64; (self.coeffs.len() - 1) * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * q] = c;
        }
        Self::new(self.p, v)
    }

    /// `self^n`, assembled from the base-`p` digits of `n` using
    /// `f^(p^i) = f(x^(p^i))`.
    pub fn pow(&self, mut n: u64) -> Self {
        let p = self.p;
        let mut acc = Self::one(p);
        let mut frob = self.clone();
        loop {
            let digit = n % p;
            for _ in 0..digit {
                acc = acc.mul(&frob).expect("same modulus");
            }
            n /= p;
            if n == 0 {
                break;
            }
            frob = frob.spread(p as usize);
        }
        acc
    }

    /// Finds `N` and a nonzero scalar `c` with `self = c * base^N`.
    pub fn as_power_of(&self, base: &Self) -> Result<Option<PowerOf>> {
        self.check(base)?;
        let da = self.deg().ok_or(Error::ZeroPolynomial)?;
        let db = base.deg().ok_or(Error::ConstantPolynomial)?;
        if db == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if da % db != 0 {
            return Ok(None);
        }
        let n = (da / db) as u64;
        let (am, la) = self.monic();
        let (bm, lb) = base.monic();
        let candidate = if bm.is_monomial() {
            Self::monomial(self.p, 1, da)
        } else {
            bm.pow(n)
        };
        if candidate != am {
            return Ok(None);
        }
        let scalar = mul_mod(la, inv_mod(pow_mod(lb, n, self.p), self.p), self.p);
        Ok(Some(PowerOf { exponent: n, scalar }))
    }

    /// Whether `x^(D^n) = x` modulo `self`, i.e. `self` divides
    /// `x^(D^n) - x`.
    pub fn frobenius_period_check(&self, degree: u64, n: u32) -> Result<bool> {
        if self.deg().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let e = Integer::from(degree).pow(n);
        let x = Self::x(self.p);
        Ok(x.modexp(&e, self)? == x.rem(self)?)
    }
}

/// Coefficient product over `F_p`.
pub(crate) fn mul_coeffs(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let na = a.iter().filter(|&&c| c != 0).count();
    let nb = b.iter().filter(|&&c| c != 0).count();
    if na.min(nb) > 48 {
        let ia: Vec<Integer> = a.iter().map(|&c| Integer::from(c)).collect();
        let ib: Vec<Integer> = b.iter().map(|&c| Integer::from(c)).collect();
        return kronecker::mul(&ia, &ib)
            .iter()
            .map(|c| c.mod_u(p as u32) as u64)
            .collect();
    }
    let (sparse, dense) = if na <= nb { (a, b) } else { (b, a) };
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if p < 1 << 16 {
        // Products stay below 2^32, so sums can be reduced once at the end
        // as long as fewer than 2^32 terms land in a slot.
        for (i, &x) in sparse.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in out[i..].iter_mut().zip(dense) {
                *o += x * y;
            }
        }
        for o in out.iter_mut() {
            *o %= p;
        }
    } else {
        for (i, &x) in sparse.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in out[i..].iter_mut().zip(dense) {
                *o = (*o + x * y % p) % p;
            }
        }
    }
    out
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self} mod {})", self.p)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_int_poly("a"), f)
    }
}

/// Sparse bivariate polynomial over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly2 {
    p: u64,
    vars: [Var; 2],
    terms: BTreeMap<(u32, u32), u64>,
}

impl ModPoly2 {
    pub fn new(
        p: u64,
        vars: [Var; 2],
        terms: impl IntoIterator<Item = ((u32, u32), u64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let slot: &mut u64 = map.entry(e).or_default();
            *slot = (*slot + c % p) % p;
        }
        map.retain(|_, c| *c != 0);
        ModPoly2 { p, vars, terms: map }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &[Var; 2] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(c: &[i64]) -> ModPoly {
        ModPoly::from_i64s(2, c).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(f2(&[1, 0, 1]).gcd(&f2(&[1, 1])).unwrap(), f2(&[1, 1]));
        assert_eq!(f2(&[1, 1]).gcd(&f2(&[0, 1])).unwrap(), f2(&[1]));
        let g = ModPoly::from_i64s(5, &[2, 0, 3]).unwrap();
        assert_eq!(g.gcd(&g).unwrap(), g.monic().0);
        assert_eq!(g.gcd(&ModPoly::zero(5)).unwrap(), g.monic().0);
        assert!(matches!(
            g.gcd(&f2(&[1])),
            Err(Error::ModulusMismatch(5, 2))
        ));
    }

    #[test]
    fn modexp_by_hand() {
        let m = f2(&[1, 1, 1]);
        let x = f2(&[0, 1]);
        assert_eq!(x.modexp(&Integer::from(4), &m).unwrap(), x);
        assert_eq!(x.modexp(&Integer::from(1), &f2(&[1, 0, 1, 1])).unwrap(), x);
        assert!(matches!(
            x.modexp(&Integer::from(3), &f2(&[1])),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn power_detection() {
        let b = f2(&[1, 1]);
        let got = f2(&[1, 0, 1]).as_power_of(&b).unwrap().unwrap();
        assert_eq!(got, PowerOf { exponent: 2, scalar: 1 });
        assert_eq!(f2(&[1, 1, 1]).as_power_of(&b).unwrap(), None);
        assert!(matches!(
            ModPoly::zero(2).as_power_of(&b),
            Err(Error::ZeroPolynomial)
        ));
        // Scalars are tolerated and reported.
        let b3 = ModPoly::from_i64s(3, &[1, 1]).unwrap();
        let a3 = ModPoly::from_i64s(3, &[2, 4, 2]).unwrap();
        assert_eq!(
            a3.as_power_of(&b3).unwrap(),
            Some(PowerOf { exponent: 2, scalar: 2 })
        );
    }

    #[test]
    fn frobenius_period_examples() {
        assert!(f2(&[1, 1]).frobenius_period_check(2, 2).unwrap());
        assert!(f2(&[1, 1, 0, 1]).frobenius_period_check(2, 3).unwrap());
        let r2 = ModPoly::from_i64s(3, &[1, 1]).unwrap();
        assert!(r2.frobenius_period_check(3, 2).unwrap());
        // x^2 + x + 1 has roots of order 3 in F_4, which are not fixed by x -> x^2.
        assert!(!f2(&[1, 1, 1]).frobenius_period_check(2, 1).unwrap());
    }

    #[test]
    fn frobenius_pow_matches_repeated_multiplication() {
        let b = ModPoly::from_i64s(3, &[2, 1, 0, 1]).unwrap();
        let mut acc = ModPoly::one(3);
        for n in 0..30u64 {
            assert_eq!(b.pow(n), acc, "n = {n}");
            acc = acc.mul(&b).unwrap();
        }
    }

    #[test]
    fn kronecker_branch_agrees() {
        let p = 7;
        let a: Vec<u64> = (0..200).map(|i| (i * i + 3) % p).collect();
        let b: Vec<u64> = (0..150).map(|i| (5 * i + 1) % p).collect();
        let fast = mul_coeffs(p, &a, &b);
        let mut slow = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] = (slow[i + j] + x * y) % p;
            }
        }
        assert_eq!(fast, slow);
    }
}
