use dynirr::fppoly::ModPoly;
use dynirr::unifam::UnicriticalContext;
use dynirr::Integer;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn modpoly(p: u64, max_deg: usize) -> impl Strategy<Value = ModPoly> {
    prop::collection::vec(0..p, 0..=max_deg + 1).prop_map(move |c| ModPoly::new(p, c))
}

fn prime_and_poly(max_deg: usize) -> impl Strategy<Value = (u64, ModPoly)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(move |p| (Just(p), modpoly(p, max_deg)))
}

fn prime_and_pair(max_deg: usize) -> impl Strategy<Value = (u64, ModPoly, ModPoly)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(move |p| (Just(p), modpoly(p, max_deg), modpoly(p, max_deg)))
}

/// Every monic polynomial of degree `d` over `F_p`.
fn monics(p: u64, d: usize) -> impl Iterator<Item = ModPoly> {
    (0..p.pow(d as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        ModPoly::new(p, c)
    })
}

/// Irreducibility by trial division by all monic polynomials of degree up
/// to `deg / 2`.
fn brute_irreducible(f: &ModPoly) -> bool {
    let n = f.deg().unwrap();
    if n == 0 {
        return false;
    }
    let p = f.modulus();
    (1..=n / 2).all(|d| monics(p, d).all(|g| !f.rem(&g).unwrap().is_zero()))
}

fn naive_modexp(f: &ModPoly, e: u64, m: &ModPoly) -> ModPoly {
    let mut acc = ModPoly::one(f.modulus()).rem(m).unwrap();
    for _ in 0..e {
        acc = acc.mul(f).unwrap().rem(m).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn irreducibility_matches_trial_division((p, f) in prime_and_poly(10)) {
        let n = f.deg().unwrap_or(0);
        prop_assume!(n >= 1 && (p as f64).powi(n as i32) <= 65_536.0);
        prop_assert_eq!(f.is_irreducible().unwrap(), brute_irreducible(&f));
    }

    #[test]
    fn ben_or_agrees_with_rabin((_p, f) in prime_and_poly(40)) {
        prop_assume!(f.deg().unwrap_or(0) >= 1);
        prop_assert_eq!(f.is_irreducible().unwrap(), f.is_irreducible_rabin().unwrap());
    }

    #[test]
    fn products_are_reducible((_p, f, g) in prime_and_pair(8)) {
        prop_assume!(f.deg().unwrap_or(0) >= 1 && g.deg().unwrap_or(0) >= 1);
        let fg = f.mul(&g).unwrap();
        prop_assert!(!fg.is_irreducible().unwrap());
        prop_assert!(!fg.is_irreducible_rabin().unwrap());
    }

    #[test]
    fn power_of_base_recovers_exponent((_p, b) in prime_and_poly(6), n in 1u64..=8, c in 1u64..13) {
        prop_assume!(b.deg().unwrap_or(0) >= 1);
        let scalar = c % b.modulus();
        prop_assume!(scalar != 0);
        let a = b.pow(n).scale(scalar);
        let found = a.as_power_of(&b).unwrap().expect("a power of the base");
        prop_assert_eq!(found.exponent, n);
        prop_assert_eq!(b.pow(found.exponent).scale(found.scalar), a);
    }

    #[test]
    fn perturbed_power_is_not_a_power((_p, b) in prime_and_poly(5), n in 2u64..=6) {
        prop_assume!(b.deg().unwrap_or(0) >= 1);
        let a = b.pow(n).add(&ModPoly::one(b.modulus())).unwrap();
        // b^n + 1 = c b^n would force b^n to be a constant.
        prop_assert_eq!(a.as_power_of(&b).unwrap(), None);
    }

    #[test]
    fn modexp_matches_repeated_multiplication((_p, f, m) in prime_and_pair(6), e in 0u64..=64) {
        prop_assume!(m.deg().unwrap_or(0) >= 1);
        prop_assert_eq!(f.modexp(&Integer::from(e), &m).unwrap(), naive_modexp(&f, e, &m));
    }

    #[test]
    fn gcd_divides_both((_p, f, g) in prime_and_pair(8)) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let h = f.gcd(&g).unwrap();
        prop_assert!(f.rem(&h).unwrap().is_zero());
        prop_assert!(g.rem(&h).unwrap().is_zero());
        prop_assert!(h.is_monic());
    }

    #[test]
    fn div_rem_reconstructs((_p, f, g) in prime_and_pair(10)) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(q.mul(&g).unwrap().add(&r).unwrap(), f);
        prop_assert!(r.deg().is_none_or(|d| d < g.deg().unwrap()));
    }
}

#[test]
fn orbit_factors_have_frobenius_period() {
    for degree in [2u64, 3, 4, 8, 9] {
        let ctx = UnicriticalContext::new(degree, 8000).unwrap();
        let modp = ctx.modp().unwrap();
        for n in 1..=4 {
            let r = modp.gleason_factor(n).unwrap();
            if r.deg().unwrap_or(0) == 0 {
                continue;
            }
            assert!(r.frobenius_period_check(degree, n).unwrap(), "D = {degree}, n = {n}");
        }
    }
}
