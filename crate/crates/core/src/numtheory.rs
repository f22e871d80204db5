//! Integer helpers: primality, trial-division factoring, Euler's totient and
//! exact powers.

use crate::error::{LabError, Result};
use num_bigint::BigUint;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `base^exp` if it fits in a `u64`.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Prime factorization by trial division with divisors up to `bound`.
///
/// A cofactor left over once the bound is reached is accepted when it is
/// prime; otherwise the factorization fails.
pub fn factorize(n: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut k = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    let mut step = 2;
    while d <= bound && d.saturating_mul(d) <= rest {
        push(d, &mut rest);
        d += step;
        step = 6 - step;
    }
    if rest > 1 {
        if d.saturating_mul(d) > rest || is_prime(rest) {
            out.push((rest, 1));
        } else {
            return Err(LabError::FactorBoundExceeded { value: n, bound });
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn prime_divisors(n: u64, bound: u64) -> Result<Vec<u64>> {
    Ok(factorize(n, bound)?.into_iter().map(|(p, _)| p).collect())
}

pub fn euler_phi(n: u64, bound: u64) -> Result<u64> {
    let mut phi = n;
    for (p, _) in factorize(n, bound)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Multiplicative order of an element given the group exponent `n` and a
/// test `is_one(k)` for `x^k == 1`. Drops each prime factor of `n` while the
/// reduced exponent still annihilates the element.
pub fn order_by_exponent_dropping<F>(n: u64, bound: u64, mut is_one: F) -> Result<u64>
where
    F: FnMut(u64) -> bool,
{
    let mut order = n;
    for (p, k) in factorize(n, bound)? {
        for _ in 0..k {
            if order.is_multiple_of(p) && is_one(order / p) {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        let brute: Vec<u64> = (0..200).filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0)).collect();
        let mr: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        assert_eq!(brute, mr);
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime((1u64 << 62) - 1));
    }

    #[test]
    fn factor_and_phi() {
        assert_eq!(factorize(15, 1 << 32).unwrap(), vec![(3, 1), (5, 1)]);
        assert_eq!(factorize(1 << 20, 1 << 32).unwrap(), vec![(2, 20)]);
        assert_eq!(euler_phi(15, 1 << 32).unwrap(), 8);
        assert_eq!(euler_phi(3, 1 << 32).unwrap(), 2);
        assert_eq!(euler_phi(1, 1 << 32).unwrap(), 1);
        assert_eq!(euler_phi(255, 1 << 32).unwrap(), 128);
        // 2^62 - 1 = 3 * 715827883 * 2147483647
        let f = factorize((1u64 << 62) - 1, 1 << 32).unwrap();
        assert_eq!(f.iter().map(|&(p, k)| p.pow(k)).product::<u64>(), (1u64 << 62) - 1);
    }

    #[test]
    fn factor_bound_is_enforced() {
        // 1009 * 1013: neither divisor reachable with bound 100 and cofactor composite.
        let err = factorize(1009 * 1013, 100).unwrap_err();
        assert!(matches!(err, LabError::FactorBoundExceeded { .. }));
        // Prime cofactor beyond the bound is still accepted.
        assert_eq!(factorize(2 * 1_000_003, 100).unwrap(), vec![(2, 1), (1_000_003, 1)]);
    }

    #[test]
    fn order_dropping_matches_iteration() {
        // Orders of residues mod 31 in (Z/31)^*.
        for a in 1..31u64 {
            let direct = (1..=30).find(|&k| pow_mod(a, k, 31) == 1).unwrap();
            let fast = order_by_exponent_dropping(30, 1 << 32, |k| pow_mod(a, k, 31) == 1).unwrap();
            assert_eq!(direct, fast);
        }
    }
}
