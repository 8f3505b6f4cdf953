//! Small integer helpers: trial-division primality, modular inverses, overflow-checked powers.

use crate::error::{Error, Result};

/// Smallest prime factor of `n` (for `n >= 2`), by trial division.
pub fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

/// Returns `Ok(())` when `p` is prime, otherwise an error naming the smallest factor.
pub fn require_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::TooSmallForPrime(p));
    }
    let f = smallest_factor(p);
    if f != p {
        return Err(Error::NotPrime { value: p, factor: f });
    }
    Ok(())
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `base^exp`, or `None` on u64 overflow.
pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
