use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Integer;

use super::univariate::mul_coeffs;
use super::{check_prime, Degree, IntPoly1, Var};
use crate::fppoly::ModPoly2;
use crate::{Error, Result};

/// Which extreme homogeneous component to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomogPart {
    Lowest,
    Highest,
}

/// Value substituted for one variable of an [`IntPoly2`].
#[derive(Clone, Debug)]
pub enum SubstValue {
    Int(Integer),
    Poly(IntPoly1),
}

impl From<i64> for SubstValue {
    fn from(v: i64) -> Self {
        SubstValue::Int(Integer::from(v))
    }
}

impl From<IntPoly1> for SubstValue {
    fn from(p: IntPoly1) -> Self {
        SubstValue::Poly(p)
    }
}

/// Sparse bivariate polynomial. The key `(i, j)` stands for
/// `vars[0]^i * vars[1]^j`; stored coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    vars: [Var; 2],
    terms: BTreeMap<(u32, u32), Integer>,
}

impl IntPoly2 {
    pub fn new(
        vars: [Var; 2],
        terms: impl IntoIterator<Item = ((u32, u32), Integer)>,
    ) -> Self {
        let mut map: BTreeMap<(u32, u32), Integer> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| c.cmp0().is_ne());
        IntPoly2 { vars, terms: map }
    }

    pub fn from_i64s(vars: [Var; 2], terms: &[((u32, u32), i64)]) -> Self {
        Self::new(vars, terms.iter().map(|&(e, c)| (e, Integer::from(c))))
    }

    pub fn zero(vars: [Var; 2]) -> Self {
        IntPoly2 { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: [Var; 2], c: impl Into<Integer>) -> Self {
        Self::new(vars, [((0, 0), c.into())])
    }

    pub fn one(vars: [Var; 2]) -> Self {
        Self::constant(vars, 1)
    }

    /// The variable `vars[idx]` as a polynomial.
    pub fn gen(vars: [Var; 2], idx: usize) -> Self {
        let e = if idx == 0 { (1, 0) } else { (0, 1) };
        Self::new(vars, [(e, Integer::from(1))])
    }

    /// Embeds a univariate polynomial whose variable is one of `vars`.
    pub fn from_univariate(vars: [Var; 2], p: &IntPoly1) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == p.var())
            .ok_or(Error::UnknownVar(p.var().clone()))?;
        let terms = p.coeffs().iter().enumerate().map(|(i, c)| {
            let e = if idx == 0 { (i as u32, 0) } else { (0, i as u32) };
            (e, c.clone())
        });
        Ok(Self::new(vars, terms))
    }

    pub fn vars(&self) -> &[Var; 2] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Integer> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Integer {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(i, j)| (i + j) as usize)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Lowest total degree of a stored term.
    pub fn order(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(i, j)| (i + j) as usize)
            .min()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Largest exponent of `vars[idx]`.
    pub fn degree_in(&self, idx: usize) -> Degree {
        self.terms
            .keys()
            .map(|&(i, j)| if idx == 0 { i } else { j } as usize)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.total_degree()
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.vars[0].clone(),
                right: other.vars[0].clone(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(*e).or_default() += c;
        }
        out.terms.retain(|_, c| c.cmp0().is_ne());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(*e).or_default() -= c;
        }
        out.terms.retain(|_, c| c.cmp0().is_ne());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if self.len().saturating_mul(other.len()) <= 2048 {
            let mut map: BTreeMap<(u32, u32), Integer> = BTreeMap::new();
            for (&(i, j), x) in &self.terms {
                for (&(k, l), y) in &other.terms {
                    *map.entry((i + k, j + l)).or_default() += x * y;
                }
            }
            map.retain(|_, c| c.cmp0().is_ne());
            return Ok(IntPoly2 { vars: self.vars.clone(), terms: map });
        }
        let stride = self.stride_for(other);
        let a = self.to_dense(stride);
        let c = if std::ptr::eq(self, other) {
            mul_coeffs(&a, &a)
        } else {
            mul_coeffs(&a, &other.to_dense(stride))
        };
        Ok(Self::from_dense(self.vars.clone(), c, stride))
    }

    /// Stride large enough that the first exponents of a product never
    /// carry into the second.
    fn stride_for(&self, other: &Self) -> usize {
        let da = self.degree_in(0).finite().unwrap_or(0);
        let db = other.degree_in(0).finite().unwrap_or(0);
        da + db + 1
    }

    fn to_dense(&self, stride: usize) -> Vec<Integer> {
        let len = self
            .terms
            .keys()
            .map(|&(i, j)| i as usize + j as usize * stride + 1)
            .max()
            .unwrap_or(0);
        let mut v = vec![Integer::new(); len];
        for (&(i, j), c) in &self.terms {
            v[i as usize + j as usize * stride] = c.clone();
        }
        v
    }

    fn from_dense(vars: [Var; 2], c: Vec<Integer>, stride: usize) -> Self {
        let terms = c
            .into_iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0().is_ne())
            .map(|(t, c)| (((t % stride) as u32, (t / stride) as u32), c))
            .collect();
        IntPoly2 { vars, terms }
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("same variables")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
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
            self.vars.clone(),
            self.terms.iter().map(|(e, x)| (*e, Integer::from(x * c))),
        )
    }

    /// Exact quotient `self / den`, confirmed by re-multiplication before
    /// returning.
    pub fn exact_div(&self, den: &IntPoly2) -> Result<Self> {
        self.same_vars(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // The quotient's first exponents are bounded by the numerator's, so
        // this stride keeps the packed images faithful.
        let stride = self.degree_in(0).finite().unwrap_or(0) + 1;
        let v = Var::new("_");
        let n = IntPoly1::new(v.clone(), self.to_dense(stride));
        let d = IntPoly1::new(v, den.to_dense(stride));
        let q = n.exact_div(&d)?;
        let q = Self::from_dense(self.vars.clone(), q.into_coeffs(), stride);
        if &(&q * den) != self {
            return Err(Error::NotExact("bivariate quotient check failed".into()));
        }
        Ok(q)
    }

    /// Sum of the terms of minimal (or maximal) total degree.
    pub fn homog_part(&self, which: HomogPart) -> Result<Self> {
        let deg = match which {
            HomogPart::Lowest => self.order(),
            HomogPart::Highest => self.total_degree(),
        };
        let deg = deg.finite().ok_or(Error::ZeroPolynomial)? as u32;
        Ok(IntPoly2 {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == deg)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }

    /// Specialises `var` to `value`. The result is a polynomial in the other
    /// variable; a polynomial value must itself be written in that variable.
    pub fn substitute(&self, var: &Var, value: &SubstValue) -> Result<IntPoly1> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVar(var.clone()))?;
        let other = self.vars[1 - idx].clone();
        // Collect f = sum_e c_e(other) * var^e.
        let mut by_exp: BTreeMap<u32, Vec<Integer>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (e, o) = if idx == 0 { (i, j) } else { (j, i) };
            let row = by_exp.entry(e).or_default();
            if row.len() <= o as usize {
                row.resize(o as usize + 1, Integer::new());
            }
            row[o as usize] += c;
        }
        let top = by_exp.keys().next_back().copied().unwrap_or(0);
        let value = match value {
            SubstValue::Int(v) => IntPoly1::constant(other.clone(), v.clone()),
            SubstValue::Poly(p) => {
                if p.var() != &other && !p.is_constant() {
                    return Err(Error::VarMismatch {
                        left: other,
                        right: p.var().clone(),
                    });
                }
                p.clone().with_var(other.clone())
            }
        };
        let mut acc = IntPoly1::zero(other.clone());
        for e in (0..=top).rev() {
            acc = &acc * &value;
            if let Some(row) = by_exp.remove(&e) {
                acc = acc + IntPoly1::new(other.clone(), row);
            }
        }
        Ok(acc)
    }

    /// Value at an integer point `(vars[0], vars[1]) = (x, y)`.
    pub fn eval(&self, x: &Integer, y: &Integer) -> Integer {
        let mut acc = Integer::new();
        for (&(i, j), c) in &self.terms {
            acc += Integer::from(x.pow(i)) * Integer::from(y.pow(j)) * c;
        }
        acc
    }

    pub fn reduce_mod(&self, p: u64) -> Result<ModPoly2> {
        check_prime(p)?;
        Ok(ModPoly2::new(
            p,
            self.vars.clone(),
            self.terms
                .iter()
                .map(|(e, c)| (*e, c.mod_u(p as u32) as u64)),
        ))
    }
}

impl fmt::Debug for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly2({self})")
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.cmp0().is_lt();
            let abs = Integer::from(c.abs_ref());
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = Vec::new();
            if abs != 1 || (i == 0 && j == 0) {
                parts.push(abs.to_string());
            }
            for (v, e) in self.vars.iter().zip([i, j]) {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&IntPoly2> for &IntPoly2 {
            type Output = IntPoly2;
            /// Panics if the operands use different variable pairs.
            fn $m(self, rhs: &IntPoly2) -> IntPoly2 {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<IntPoly2> for IntPoly2 {
            type Output = IntPoly2;
            fn $m(self, rhs: IntPoly2) -> IntPoly2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly2> for IntPoly2 {
            type Output = IntPoly2;
            fn $m(self, rhs: &IntPoly2) -> IntPoly2 {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        IntPoly2 {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, Integer::from(-c))).collect(),
        }
    }
}

impl Neg for IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> [Var; 2] {
        [Var::from("a"), Var::from("b")]
    }

    fn p(t: &[((u32, u32), i64)]) -> IntPoly2 {
        IntPoly2::from_i64s(ab(), t)
    }

    #[test]
    fn hand_expansion() {
        let bma = p(&[((0, 1), 1), ((1, 0), -1)]);
        let two_a_b = p(&[((1, 0), 2), ((0, 1), 1)]);
        assert_eq!(
            &bma * &two_a_b,
            p(&[((2, 0), -2), ((1, 1), 1), ((0, 2), 1)])
        );
    }

    #[test]
    fn lowest_part_by_inspection() {
        let f = p(&[((1, 0), 3), ((0, 1), 3), ((2, 1), 1)]);
        let low = f.homog_part(HomogPart::Lowest).unwrap();
        assert_eq!(low, p(&[((1, 0), 3), ((0, 1), 3)]));
        assert_eq!(
            f.homog_part(HomogPart::Highest).unwrap(),
            p(&[((2, 1), 1)])
        );
        assert!(matches!(
            IntPoly2::zero(ab()).homog_part(HomogPart::Lowest),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn substitution() {
        let r2 = p(&[((1, 0), 1), ((0, 1), -1)]);
        let at2 = r2.substitute(&Var::from("b"), &2.into()).unwrap();
        assert_eq!(at2, IntPoly1::from_i64s("a", &[-2, 1]));
        let diag = r2
            .substitute(&Var::from("b"), &IntPoly1::x("a").into())
            .unwrap();
        assert!(diag.is_zero());
        assert!(matches!(
            r2.substitute(&Var::from("c"), &0.into()),
            Err(Error::UnknownVar(_))
        ));
    }

    #[test]
    fn kronecker_path_matches_naive() {
        // Large enough to leave the naive branch.
        let f = p(&[((0, 1), 1), ((1, 0), -1), ((0, 0), 3)]).pow(40);
        let g = p(&[((2, 0), 2), ((1, 1), 1), ((0, 0), -1)]).pow(30);
        let prod = &f * &g;
        let mut naive: BTreeMap<(u32, u32), Integer> = BTreeMap::new();
        for (&(i, j), x) in f.terms() {
            for (&(k, l), y) in g.terms() {
                *naive.entry((i + k, j + l)).or_default() += Integer::from(x * y);
            }
        }
        naive.retain(|_, c| c.cmp0().is_ne());
        assert_eq!(prod.terms(), &naive);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn inexact_bivariate_division() {
        let f = p(&[((2, 0), 1), ((0, 2), 1)]);
        let g = p(&[((1, 0), 1), ((0, 1), -1)]);
        assert!(matches!(f.exact_div(&g), Err(Error::NotExact(_))));
    }
}
