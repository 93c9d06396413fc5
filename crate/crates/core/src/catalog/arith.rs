//! Elementary number theory on `u64`.

pub use crate::modular::gcd;
use crate::modular::Modulus;

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n` in increasing order; empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn totient(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

/// Multiplicative order of `a` modulo `n`, or `None` if `a` is not a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    let m = Modulus::new(n).ok()?;
    if !m.is_unit(a % n) {
        return None;
    }
    // the order divides φ(n); take the smallest such divisor
    divisors(totient(n)).into_iter().find(|&d| m.pow(a, d) == 1 % n)
}

/// Smallest generator of `(ℤ/nℤ)^×`, if the group is cyclic.
pub fn primitive_root(n: u64) -> Option<u64> {
    let phi = totient(n);
    (1..n.max(2)).find(|&g| multiplicative_order(g, n) == Some(phi))
}

/// Smallest primitive root modulo `p²`; it is also one modulo `p`.
pub fn primitive_root_mod_p_squared(p: u64) -> Option<u64> {
    primitive_root(p.checked_mul(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(36), 12);
        assert_eq!((1..=10).map(mobius).collect::<Vec<_>>(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(13), Some(2));
        assert_eq!(primitive_root(8), None);
        assert_eq!(primitive_root_mod_p_squared(5), Some(2));
        assert_eq!(multiplicative_order(4, 13), Some(6));
        assert_eq!(multiplicative_order(2, 4), None);
    }

    #[test]
    fn totient_counts_units() {
        for n in 1..200u64 {
            let count = (0..n).filter(|&x| gcd(x, n) == 1).count() as u64;
            assert_eq!(totient(n), count, "n={n}");
        }
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 2..300u64 {
            assert_eq!(divisors(n).into_iter().map(mobius).sum::<i64>(), 0);
        }
    }

    #[test]
    fn primitive_roots_generate_units() {
        for p in (3..200u64).filter(|&p| is_prime(p)) {
            let g = primitive_root(p).unwrap();
            assert_eq!(multiplicative_order(g, p), Some(p - 1));
            let g2 = primitive_root_mod_p_squared(p).unwrap();
            assert_eq!(multiplicative_order(g2, p * p), Some(p * (p - 1)));
            assert_eq!(multiplicative_order(g2 % p, p), Some(p - 1));
        }
    }

    proptest! {
        #[test]
        fn multiplicative(a in 1u64..500, b in 1u64..500) {
            if gcd(a, b) == 1 {
                prop_assert_eq!(totient(a * b), totient(a) * totient(b));
                prop_assert_eq!(mobius(a * b), mobius(a) * mobius(b));
            }
        }
    }
}
