//! Resultants over the integers.
//!
//! The sign convention is that of the Sylvester determinant with the rows of
//! the first argument on top, so `resultant(f, g) = lc(f)^deg(g) * prod g(x)`
//! over the roots `x` of `f`, and swapping the arguments multiplies by
//! `(-1)^(deg f * deg g)`.

use rug::ops::Pow;
use rug::Integer;

use super::IntPoly1;
use crate::{Error, Result};

fn sign_for(m: usize, n: usize) -> i32 {
    if (m * n) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Exact resultant via the subresultant remainder sequence.
pub fn resultant(f: &IntPoly1, g: &IntPoly1) -> Result<Integer> {
    if f.var() != g.var() {
        return Err(Error::VarMismatch {
            left: f.var().clone(),
            right: g.var().clone(),
        });
    }
    let (Some(m), Some(n)) = (f.deg(), g.deg()) else {
        return Err(Error::ZeroPolynomial);
    };
    if n == 0 {
        return Ok(Integer::from(g.coeff(0).pow(m as u32)));
    }
    if m == 0 {
        return Ok(Integer::from(f.coeff(0).pow(n as u32)));
    }
    // A monic argument of smaller degree lets the larger one be reduced
    // first: res(B, A) = res(B, A mod B) when B is monic.
    if n < m && g.is_monic() {
        let r = f.pseudo_rem(g)?;
        let v = if r.is_zero() { Integer::new() } else { resultant(g, &r)? };
        return Ok(v * sign_for(m, n));
    }
    if m < n && f.is_monic() {
        let r = g.pseudo_rem(f)?;
        return Ok(if r.is_zero() { Integer::new() } else { resultant(f, &r)? });
    }
    Ok(subresultant(f, g))
}

fn subresultant(f: &IntPoly1, g: &IntPoly1) -> Integer {
    let (mut a, mut b, mut s) = if f.deg() < g.deg() {
        (g.clone(), f.clone(), sign_for(f.deg().unwrap(), g.deg().unwrap()))
    } else {
        (f.clone(), g.clone(), 1)
    };
    let ca = a.content();
    let cb = b.content();
    a = a.div_exact_scalar(&ca).expect("content");
    b = b.div_exact_scalar(&cb).expect("content");
    let da = a.deg().unwrap() as u32;
    let db = b.deg().unwrap() as u32;
    let t = Integer::from((&ca).pow(db)) * Integer::from((&cb).pow(da));
    let mut gg = Integer::from(1);
    let mut h = Integer::from(1);
    loop {
        let (m, n) = (a.deg().unwrap(), b.deg().unwrap());
        let delta = (m - n) as u32;
        if m % 2 == 1 && n % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b).expect("nonzero divisor");
        a = b;
        if r.is_zero() {
            return Integer::new();
        }
        let div = &gg * Integer::from((&h).pow(delta));
        b = r.div_exact_scalar(&div).expect("subresultant division is exact");
        gg = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => Integer::from((&gg).pow(delta)).div_exact(&Integer::from((&h).pow(delta - 1))),
        };
        if b.deg() == Some(0) {
            break;
        }
    }
    let m = a.deg().unwrap() as u32;
    let lb = b.coeff(0);
    let h = match m {
        1 => lb.clone(),
        _ => Integer::from(lb.pow(m)).div_exact(&Integer::from((&h).pow(m - 1))),
    };
    t * h * s
}

/// Resultant as the Sylvester determinant, by fraction-free elimination.
/// Intended as an independent cross-check at small degrees.
pub fn resultant_sylvester(f: &IntPoly1, g: &IntPoly1) -> Result<Integer> {
    if f.var() != g.var() {
        return Err(Error::VarMismatch {
            left: f.var().clone(),
            right: g.var().clone(),
        });
    }
    let (Some(m), Some(n)) = (f.deg(), g.deg()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = m + n;
    if size == 0 {
        return Ok(Integer::from(1));
    }
    let mut mat = vec![vec![Integer::new(); size]; size];
    for r in 0..n {
        for i in 0..=m {
            mat[r][r + i] = f.coeff(m - i).clone();
        }
    }
    for r in 0..m {
        for i in 0..=n {
            mat[n + r][r + i] = g.coeff(n - i).clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if m[k][k].cmp0().is_eq() {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k].cmp0().is_ne()) else {
                return Integer::new();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

/// Discriminant `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly1) -> Result<Integer> {
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(Integer::from(1));
    }
    let r = resultant(f, &f.derivative())?;
    let lc = f.leading().unwrap();
    if !r.is_divisible(lc) {
        return Err(Error::NotExact("leading coefficient does not divide res(f, f')".into()));
    }
    let d = r.div_exact(lc);
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly1 {
        IntPoly1::from_i64s("a", c)
    }

    #[test]
    fn linear_monic_evaluation() {
        let f = p(&[1, 0, 1]);
        let g = p(&[1, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), 2);
        assert_eq!(resultant_sylvester(&f, &g).unwrap(), 2);
    }

    #[test]
    fn constant_argument() {
        let f = p(&[3, -1, 4, 1]);
        assert_eq!(resultant(&f, &p(&[5])).unwrap(), 125);
        assert_eq!(resultant_sylvester(&f, &p(&[5])).unwrap(), 125);
        assert!(matches!(resultant(&f, &p(&[])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn common_root_gives_zero() {
        let f = p(&[-2, 1, 1]); // (a+2)(a-1)
        let g = p(&[3, -5, 2]); // (2a-3)(a-1)
        assert_eq!(resultant(&f, &g).unwrap(), 0);
        assert_eq!(resultant_sylvester(&f, &g).unwrap(), 0);
    }

    #[test]
    fn cubic_discriminant_formula() {
        // 18abcd - 4b^3 d + b^2 c^2 - 4 a c^3 - 27 a^2 d^2 at a=1,b=2,c=1,d=1
        let (a, b, c, d) = (1i64, 2i64, 1i64, 1i64);
        let want = 18 * a * b * c * d - 4 * b.pow(3) * d + b * b * c * c
            - 4 * a * c.pow(3)
            - 27 * a * a * d * d;
        assert_eq!(want, -23);
        assert_eq!(discriminant(&p(&[1, 1, 2, 1])).unwrap(), want);
    }

    #[test]
    fn non_monic_sign_convention() {
        let f = p(&[3, 0, 2, 5, -7]);
        let g = p(&[-1, 4, 0, 6]);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, resultant_sylvester(&f, &g).unwrap());
        // deg f * deg g = 12, so swapping keeps the sign.
        assert_eq!(resultant(&g, &f).unwrap(), r);
        let h = p(&[2, 3]);
        assert_eq!(resultant(&g, &h).unwrap(), -resultant(&h, &g).unwrap());
    }
}
