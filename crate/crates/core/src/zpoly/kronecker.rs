//! Kronecker substitution: a coefficient vector is packed into one large
//! integer by evaluating at `2^K` (with `K` a multiple of 64), so that
//! polynomial products and exact quotients become single GMP operations.

use rug::integer::Order;
use rug::Integer;

fn max_bits(c: &[Integer]) -> u64 {
    c.iter().map(|x| u64::from(x.significant_bits())).max().unwrap_or(0)
}

fn ceil_log2(n: usize) -> u64 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as u64
}

/// Packs `c` at `limbs` 64-bit words per slot. Negative coefficients are
/// handled by packing the positive and negative parts separately.
fn pack(c: &[Integer], limbs: usize) -> Integer {
    let mut pos = vec![0u64; c.len() * limbs];
    let mut neg: Vec<u64> = Vec::new();
    for (i, x) in c.iter().enumerate() {
        if x.cmp0().is_eq() {
            continue;
        }
        let slot = i * limbs..(i + 1) * limbs;
        if x.cmp0().is_lt() {
            if neg.is_empty() {
                neg = vec![0u64; c.len() * limbs];
            }
            x.write_digits(&mut neg[slot], Order::Lsf);
        } else {
            x.write_digits(&mut pos[slot], Order::Lsf);
        }
    }
    let mut v = Integer::from_digits(&pos, Order::Lsf);
    if !neg.is_empty() {
        v -= Integer::from_digits(&neg, Order::Lsf);
    }
    v
}

/// Inverse of [`pack`] for `n` slots, assuming every coefficient lies in
/// `[-2^(K-1), 2^(K-1))`.
fn unpack(v: &Integer, n: usize, limbs: usize) -> Vec<Integer> {
    let mut bias = vec![0u64; n * limbs];
    for i in 0..n {
        bias[(i + 1) * limbs - 1] = 1u64 << 63;
    }
    let bias = Integer::from_digits(&bias, Order::Lsf);
    let shifted = Integer::from(v + &bias);
    drop(bias);
    debug_assert!(!shifted.cmp0().is_lt());
    let mut digits = shifted.to_digits::<u64>(Order::Lsf);
    drop(shifted);
    digits.resize(n * limbs, 0);
    let half = Integer::from(1) << (64 * limbs as u32 - 1);
    digits
        .chunks(limbs)
        .map(|chunk| Integer::from_digits(chunk, Order::Lsf) - &half)
        .collect()
}

fn slot_limbs(bits: u64) -> usize {
    (bits / 64 + 1) as usize
}

/// Product of two nonempty coefficient vectors.
pub(crate) fn mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let bits = max_bits(a) + max_bits(b) + ceil_log2(a.len().min(b.len())) + 1;
    let limbs = slot_limbs(bits);
    let n = a.len() + b.len() - 1;
    let pa = pack(a, limbs);
    let prod = if std::ptr::eq(a, b) {
        Integer::from(pa.square_ref())
    } else {
        let pb = pack(b, limbs);
        pa * pb
    };
    unpack(&prod, n, limbs)
}

/// Exact quotient of `num` by `den`, or `None` if the division is not exact.
/// With `full_check` false the result is only checked at a few points
/// modulo a word-size prime, so the caller must confirm it by other means.
pub(crate) fn exact_div(num: &[Integer], den: &[Integer], full_check: bool) -> Option<Vec<Integer>> {
    let n = num.len() - den.len() + 1;
    let base = max_bits(num) + 2;
    // A quotient coefficient can exceed the numerator's by at most about
    // deg(q) bits; try a cheap slot size first.
    for extra in [64u64, n as u64 + ceil_log2(num.len()) + 64] {
        let limbs = slot_limbs(base + extra);
        let pn = pack(num, limbs);
        let pd = pack(den, limbs);
        if pd.cmp0().is_eq() {
            return None;
        }
        let q = pn.div_exact(&pd);
        let qc = unpack(&q, n, limbs);
        drop(q);
        if !full_check {
            if spot_check(num, den, &qc) {
                return Some(qc);
            }
            continue;
        }
        let mut back = mul(den, &qc);
        while back.last().is_some_and(|c| c.cmp0().is_eq()) {
            back.pop();
        }
        if back.as_slice() == num {
            return Some(qc);
        }
    }
    None
}

const SPOT_PRIME: u64 = (1 << 61) - 1;

fn eval_mod(c: &[Integer], x: u64) -> u64 {
    let m = Integer::from(SPOT_PRIME);
    let mut acc: u128 = 0;
    for v in c.iter().rev() {
        let mut r = Integer::from(v % &m);
        if r.cmp0().is_lt() {
            r += &m;
        }
        let r = r.to_u64_wrapping() as u128;
        acc = (acc * x as u128 + r) % SPOT_PRIME as u128;
    }
    acc as u64
}

fn spot_check(num: &[Integer], den: &[Integer], q: &[Integer]) -> bool {
    [3u64, 1_000_003, 0x1234_5678_9abc].iter().all(|&x| {
        let lhs = eval_mod(den, x) as u128 * eval_mod(q, x) as u128 % SPOT_PRIME as u128;
        lhs as u64 == eval_mod(num, x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn school(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        let mut out = vec![Integer::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += Integer::from(x * y);
            }
        }
        out
    }

    #[test]
    fn signed_products_match_schoolbook() {
        let a = ints(&[-3, 0, 7, -1, 1 << 40, -(1 << 62)]);
        let b = ints(&[5, -2, 0, 0, 9]);
        assert_eq!(mul(&a, &b), school(&a, &b));
        assert_eq!(mul(&a, &a), school(&a, &a));
    }

    #[test]
    fn exact_quotient_recovered() {
        let q = ints(&[1, -1, 1, -1, 1, -1, 1]);
        let d = ints(&[1, 1]);
        let n = school(&q, &d);
        for full in [true, false] {
            assert_eq!(exact_div(&n, &d, full), Some(q.clone()));
            assert_eq!(exact_div(&ints(&[1, 0, 1]), &ints(&[1, 1]), full), None);
        }
    }
}
