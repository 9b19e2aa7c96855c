use dynirr::fppoly::ModPoly;
use dynirr::zpoly::{resultant, resultant_sylvester, HomogPart, IntPoly1, IntPoly2, Var};
use dynirr::Integer;
use proptest::prelude::*;

fn poly1(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly1> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| IntPoly1::from_i64s("a", &c))
}

fn nonzero1(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly1> {
    poly1(max_deg, bound).prop_filter("nonzero", |f| !f.is_zero())
}

fn vars() -> [Var; 2] {
    [Var::from("a"), Var::from("b")]
}

fn poly2(max_deg: u32, bound: i64) -> impl Strategy<Value = IntPoly2> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -bound..=bound), 0..8)
        .prop_map(|t| IntPoly2::from_i64s(vars(), &t))
}

/// Reference product over `F_p` by schoolbook convolution.
fn naive_mul_mod(f: &[u64], g: &[u64], p: u64) -> ModPoly {
    if f.is_empty() || g.is_empty() {
        return ModPoly::zero(p);
    }
    let mut c = vec![0u64; f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    ModPoly::new(p, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn univariate_ring_laws(f in poly1(6, 50), g in poly1(6, 50), h in poly1(6, 50)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        prop_assert_eq!(f.square(), &f * &f);
    }

    #[test]
    fn bivariate_ring_laws(f in poly2(4, 20), g in poly2(4, 20), h in poly2(4, 20)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        let x = Integer::from(3);
        let y = Integer::from(-2);
        prop_assert_eq!((&f * &g).eval(&x, &y), f.eval(&x, &y) * g.eval(&x, &y));
    }

    #[test]
    fn exact_division_recovers_factor(f in poly1(8, 1000), g in nonzero1(5, 1000)) {
        prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn bivariate_exact_division(f in poly2(4, 30), g in poly2(3, 30)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
    }

    #[test]
    fn inexact_division_is_refused(f in nonzero1(6, 30)) {
        // x^2 + 1 has no rational roots, so (x^2 + 1) f + 1 is never a multiple of it.
        let g = IntPoly1::from_i64s("a", &[1, 0, 1]);
        let num = &(&f * &g) + &IntPoly1::one("a");
        prop_assert!(num.exact_div(&g).is_err());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in nonzero1(4, 9), g in nonzero1(4, 9), h in poly1(2, 3)) {
        // Force a shared factor half of the time.
        let (f, g) = if h.deg().unwrap_or(0) >= 1 { (&f * &h, &g * &h) } else { (f, g) };
        prop_assume!(f.deg().unwrap_or(0) >= 1 && g.deg().unwrap_or(0) >= 1);
        let res = resultant(&f, &g).unwrap();
        let common = f.gcd(&g).unwrap().deg().unwrap_or(0) >= 1;
        prop_assert_eq!(res == 0, common);
        prop_assert_eq!(res.clone(), resultant_sylvester(&f, &g).unwrap());
        // A shared factor over Q survives reduction modulo primes that
        // keep both degrees.
        for p in [5u64, 7, 11, 13] {
            let (fp, gp) = (f.reduce_mod(p).unwrap(), g.reduce_mod(p).unwrap());
            if fp.deg() == f.deg() && gp.deg() == g.deg() {
                let gcd_p = fp.gcd(&gp).unwrap();
                prop_assert_eq!(res.is_divisible_u(p as u32), gcd_p.deg().unwrap_or(0) >= 1);
            }
        }
    }

    #[test]
    fn resultant_is_multiplicative(f in nonzero1(3, 9), g in nonzero1(3, 9), h in nonzero1(3, 9)) {
        prop_assume!(f.deg().unwrap_or(0) >= 1);
        let lhs = resultant(&f, &(&g * &h)).unwrap();
        let rhs = resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_parts(t in prop::collection::vec((0u32..=6, -20i64..=20), 1..6), deg in 1u32..7) {
        let terms: Vec<((u32, u32), i64)> = t.iter().filter(|(i, _)| *i <= deg).map(|&(i, c)| ((i, deg - i), c)).collect();
        let f = IntPoly2::from_i64s(vars(), &terms);
        prop_assume!(!f.is_zero());
        prop_assert!(f.is_homogeneous());
        prop_assert_eq!(f.homog_part(HomogPart::Lowest).unwrap(), f.clone());
        prop_assert_eq!(f.homog_part(HomogPart::Highest).unwrap(), f.clone());
    }

    #[test]
    fn homogeneous_parts_of_products(f in poly2(4, 20), g in poly2(4, 20)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        for which in [HomogPart::Lowest, HomogPart::Highest] {
            prop_assert_eq!(
                fg.homog_part(which).unwrap(),
                &f.homog_part(which).unwrap() * &g.homog_part(which).unwrap()
            );
        }
    }

    #[test]
    fn reduction_is_a_ring_morphism(f in poly1(8, 10_000), g in poly1(8, 10_000), p in prop::sample::select(vec![2u64, 3, 5, 7, 65_537])) {
        let (fp, gp) = (f.reduce_mod(p).unwrap(), g.reduce_mod(p).unwrap());
        prop_assert_eq!((&f * &g).reduce_mod(p).unwrap(), naive_mul_mod(fp.coeffs(), gp.coeffs(), p));
        prop_assert_eq!((&f * &g).reduce_mod(p).unwrap(), fp.mul(&gp).unwrap());
        prop_assert_eq!((&f + &g).reduce_mod(p).unwrap(), fp.add(&gp).unwrap());
    }

    #[test]
    fn bivariate_reduction_is_a_morphism(f in poly2(3, 100), g in poly2(3, 100), p in prop::sample::select(vec![2u64, 3, 7])) {
        let (fp, gp) = (f.reduce_mod(p).unwrap(), g.reduce_mod(p).unwrap());
        let mut prod = Vec::new();
        for (&(i, j), x) in fp.terms() {
            for (&(k, l), y) in gp.terms() {
                prod.push(((i + k, j + l), x * y % p));
            }
        }
        let want = dynirr::fppoly::ModPoly2::new(p, vars(), prod);
        prop_assert_eq!((&f * &g).reduce_mod(p).unwrap(), want);
    }

    #[test]
    fn json_round_trip(f in poly1(10, i64::MAX), g in poly2(5, i64::MAX)) {
        let f2: IntPoly1 = dynirr::json::from_str(&dynirr::json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(f2, f);
        let g2: IntPoly2 = dynirr::json::from_str(&dynirr::json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(g2, g);
    }
}
