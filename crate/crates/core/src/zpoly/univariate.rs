use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Assign, Integer};

use super::{check_prime, kronecker, Degree, Var};
use crate::fppoly::ModPoly;
use crate::{Error, Result};

static ZERO: Integer = Integer::ZERO;

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly1 {
    var: Var,
    coeffs: Vec<Integer>,
}

fn trim(c: &mut Vec<Integer>) {
    while c.last().is_some_and(|x| x.cmp0().is_eq()) {
        c.pop();
    }
}

fn nnz(c: &[Integer]) -> usize {
    c.iter().filter(|x| x.cmp0().is_ne()).count()
}

/// Coefficient product, choosing between a sparse long multiplication and
/// Kronecker substitution.
pub(crate) fn mul_coeffs(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (na, nb) = (nnz(a), nnz(b));
    if na.min(nb) > 12 && na.saturating_mul(nb) > 4096 {
        let mut out = kronecker::mul(a, b);
        trim(&mut out);
        return out;
    }
    // Iterate over the sparser operand.
    let (sparse, dense) = if na <= nb { (a, b) } else { (b, a) };
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in sparse.iter().enumerate() {
        if x.cmp0().is_eq() {
            continue;
        }
        for (j, y) in dense.iter().enumerate() {
            if y.cmp0().is_ne() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Long division that fails as soon as a quotient coefficient is not an
/// integer or the final remainder is nonzero. A zero remainder is exactly the
/// identity `num - den * q = 0`, accumulated term by term.
fn long_exact_div(num: &[Integer], den: &[Integer]) -> Result<Vec<Integer>> {
    let m = den.len() - 1;
    let lc = &den[m];
    let unit = *lc == 1 || *lc == -1;
    let terms: Vec<(usize, &Integer)> = den[..m]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.cmp0().is_ne())
        .collect();
    let mut rem = num.to_vec();
    let mut q = vec![Integer::new(); num.len() - m];
    let mut t = Integer::new();
    for i in (0..q.len()).rev() {
        let top = std::mem::take(&mut rem[i + m]);
        if top.cmp0().is_eq() {
            continue;
        }
        if unit {
            t.assign(if *lc == 1 { top } else { -top });
        } else {
            if !top.is_divisible(lc) {
                return Err(Error::NotExact(format!(
                    "leading coefficient {lc} does not divide {top}"
                )));
            }
            t.assign(top.div_exact(lc));
        }
        for &(j, c) in &terms {
            rem[i + j] -= &t * c;
        }
        q[i].assign(&t);
    }
    if rem[..m].iter().any(|x| x.cmp0().is_ne()) {
        return Err(Error::NotExact("nonzero remainder".into()));
    }
    Ok(q)
}

impl IntPoly1 {
    pub fn new(var: impl Into<Var>, mut coeffs: Vec<Integer>) -> Self {
        trim(&mut coeffs);
        IntPoly1 { var: var.into(), coeffs }
    }

    pub fn from_i64s(var: impl Into<Var>, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero(var: impl Into<Var>) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn one(var: impl Into<Var>) -> Self {
        Self::constant(var, Integer::from(1))
    }

    pub fn constant(var: impl Into<Var>, c: impl Into<Integer>) -> Self {
        Self::new(var, vec![c.into()])
    }

    /// `c * var^e`.
    pub fn monomial(var: impl Into<Var>, c: impl Into<Integer>, e: usize) -> Self {
        let mut coeffs = vec![Integer::new(); e + 1];
        coeffs[e] = c.into();
        Self::new(var, coeffs)
    }

    /// The polynomial `var` itself.
    pub fn x(var: impl Into<Var>) -> Self {
        Self::monomial(var, 1, 1)
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn with_var(mut self, var: impl Into<Var>) -> Self {
        self.var = var.into();
        self
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Integer {
        self.coeffs.get(i).unwrap_or(&ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an integer, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        nnz(&self.coeffs)
    }

    pub fn max_coeff_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }

    fn same_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut c = long.coeffs.clone();
        for (x, y) in c.iter_mut().zip(&short.coeffs) {
            *x += y;
        }
        Ok(Self::new(self.var.clone(), c))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        let mut c = self.coeffs.clone();
        if c.len() < other.coeffs.len() {
            c.resize(other.coeffs.len(), Integer::new());
        }
        for (x, y) in c.iter_mut().zip(&other.coeffs) {
            *x -= y;
        }
        Ok(Self::new(self.var.clone(), c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_var(other)?;
        let c = if std::ptr::eq(self, other) {
            mul_coeffs(&self.coeffs, &self.coeffs)
        } else {
            mul_coeffs(&self.coeffs, &other.coeffs)
        };
        Ok(Self::new(self.var.clone(), c))
    }

    pub fn square(&self) -> Self {
        Self::new(self.var.clone(), mul_coeffs(&self.coeffs, &self.coeffs))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.var.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn scale(&self, c: &Integer) -> Self {
        Self::new(
            self.var.clone(),
            self.coeffs.iter().map(|x| Integer::from(x * c)).collect(),
        )
    }

    /// Multiplies by `var^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Integer::new(); e];
        c.extend(self.coeffs.iter().cloned());
        Self::new(self.var.clone(), c)
    }

    pub fn div_exact_scalar(&self, c: &Integer) -> Result<Self> {
        if c.cmp0().is_eq() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            if !x.is_divisible(c) {
                return Err(Error::NotExact(format!("{c} does not divide {x}")));
            }
            out.push(Integer::from(x.div_exact_ref(c)));
        }
        Ok(Self::new(self.var.clone(), out))
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
        g
    }

    /// `self / content`, sign-normalised to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.cmp0().is_lt()) {
            g = -g;
        }
        self.div_exact_scalar(&g).expect("content divides every coefficient")
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Integer::from(c * i as u64))
            .collect();
        Self::new(self.var.clone(), c)
    }

    /// `self(inner)` by Horner's rule; the result lives in `inner`'s variable.
    pub fn compose(&self, inner: &IntPoly1) -> Self {
        let mut acc = IntPoly1::zero(inner.var.clone());
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc = acc + IntPoly1::constant(inner.var.clone(), c.clone());
        }
        acc
    }

    /// Exact quotient `self / den`. Fails with [`Error::NotExact`] unless
    /// `self = den * q` holds over the integers; the identity is always
    /// confirmed before returning.
    pub fn exact_div(&self, den: &IntPoly1) -> Result<Self> {
        self.exact_div_impl(den, true)
    }

    /// Exact division whose large-operand path skips the final
    /// re-multiplication; for callers that re-verify the quotient anyway.
    pub(crate) fn exact_div_unverified(&self, den: &IntPoly1) -> Result<Self> {
        self.exact_div_impl(den, false)
    }

    fn exact_div_impl(&self, den: &IntPoly1, full_check: bool) -> Result<Self> {
        self.same_var(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.len() < den.coeffs.len() {
            return Err(Error::NotExact("numerator degree below denominator".into()));
        }
        if den.coeffs.len() == 1 {
            return self.div_exact_scalar(&den.coeffs[0]);
        }
        let nq = self.coeffs.len() - den.coeffs.len() + 1;
        let dn = den.nnz();
        if nq > 32 && dn > 64 {
            if let Some(q) = kronecker::exact_div(&self.coeffs, &den.coeffs, full_check) {
                return Ok(Self::new(self.var.clone(), q));
            }
        }
        let q = long_exact_div(&self.coeffs, &den.coeffs)?;
        Ok(Self::new(self.var.clone(), q))
    }

    /// Pseudo-remainder `lc(den)^(deg self - deg den + 1) * self mod den`.
    pub fn pseudo_rem(&self, den: &IntPoly1) -> Result<Self> {
        self.same_var(den)?;
        let m = den.deg().ok_or(Error::DivisionByZero)?;
        let Some(n) = self.deg() else {
            return Ok(self.clone());
        };
        if n < m {
            return Ok(self.clone());
        }
        let lc = &den.coeffs[m];
        let monic = *lc == 1;
        let terms: Vec<(usize, &Integer)> = den.coeffs[..m]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0().is_ne())
            .collect();
        let mut r = self.coeffs.clone();
        let mut steps = (n - m + 1) as u32;
        let mut top = n;
        let mut t = Integer::new();
        loop {
            if top < m {
                break;
            }
            let lead = std::mem::take(&mut r[top]);
            if !monic {
                for x in r[..top].iter_mut() {
                    *x *= lc;
                }
            }
            if lead.cmp0().is_ne() {
                t.assign(&lead);
                let off = top - m;
                for &(j, c) in &terms {
                    r[off + j] -= &t * c;
                }
            }
            steps -= 1;
            if top == 0 {
                break;
            }
            top -= 1;
        }
        if !monic && steps > 0 {
            let f = Integer::from(lc.pow(steps));
            for x in r.iter_mut() {
                *x *= &f;
            }
        }
        r.truncate(m);
        Ok(Self::new(self.var.clone(), r))
    }

    /// Greatest common divisor over the rationals, returned primitive with a
    /// positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &IntPoly1) -> Result<Self> {
        self.same_var(other)?;
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b)?.primitive_part();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Coefficientwise reduction into `0..p`.
    pub fn reduce_mod(&self, p: u64) -> Result<ModPoly> {
        check_prime(p)?;
        Ok(self.reduce_mod_unchecked(p))
    }

    pub(crate) fn reduce_mod_unchecked(&self, p: u64) -> ModPoly {
        let c = self
            .coeffs
            .iter()
            .map(|x| x.mod_u(p as u32) as u64)
            .collect();
        ModPoly::new(p, c)
    }

    pub fn is_divisible_by_scalar(&self, p: &Integer) -> bool {
        self.coeffs.iter().all(|c| c.is_divisible(p))
    }
}

impl fmt::Debug for IntPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly1({self})")
    }
}

impl fmt::Display for IntPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0().is_eq() {
                continue;
            }
            let neg = c.cmp0().is_lt();
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let v = &self.var;
            match (i, abs == 1) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "{v}")?,
                (1, false) => write!(f, "{abs}*{v}")?,
                (_, true) => write!(f, "{v}^{i}")?,
                (_, false) => write!(f, "{abs}*{v}^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&IntPoly1> for &IntPoly1 {
            type Output = IntPoly1;
            /// Panics if the operands use different variables; use the
            /// `try_` form to handle that case.
            fn $m(self, rhs: &IntPoly1) -> IntPoly1 {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&IntPoly1> for IntPoly1 {
            type Output = IntPoly1;
            fn $m(self, rhs: &IntPoly1) -> IntPoly1 {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $tr<IntPoly1> for IntPoly1 {
            type Output = IntPoly1;
            fn $m(self, rhs: IntPoly1) -> IntPoly1 {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add, |a, b| a.accumulate(b, false));
owned_binop!(Sub, sub, |a, b| a.accumulate(b, true));
owned_binop!(Mul, mul, |a, b| &a * b);

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl IntPoly1 {
    /// In-place `self += sign * rhs`, reusing `self`'s storage.
    fn accumulate(mut self, rhs: &IntPoly1, negate: bool) -> IntPoly1 {
        if self.var != rhs.var {
            panic!(
                "{}",
                Error::VarMismatch { left: self.var.clone(), right: rhs.var.clone() }
            );
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Integer::new());
        }
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
        trim(&mut self.coeffs);
        self
    }
}

impl Neg for &IntPoly1 {
    type Output = IntPoly1;
    fn neg(self) -> IntPoly1 {
        IntPoly1::new(
            self.var.clone(),
            self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
        )
    }
}

impl Neg for IntPoly1 {
    type Output = IntPoly1;
    fn neg(mut self) -> IntPoly1 {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}
