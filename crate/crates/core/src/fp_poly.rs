//! Dense polynomials over F_p, stored as coefficient vectors with the constant term first.
//!
//! Every function expects reduced coefficients (`0 <= c < p`) and returns trimmed vectors:
//! no trailing zeros, so the zero polynomial is the empty vector.

use crate::arith::{inv_mod, mul_mod};

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&c| mul_mod(c, s, p)).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`. Panics if `b` is zero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        let q = mul_mod(c, lead_inv, p);
        quot[i - db] = q;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = mul_mod(q, bj, p);
            let k = i - db + j;
            rem[k] = (rem[k] + p - t) % p;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// The monic polynomial `x^d + sum c_i x^i` whose lower coefficients are the base-`p` digits of `key`.
pub fn monic_from_key(key: u64, d: usize, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(d + 1);
    let mut k = key;
    for _ in 0..d {
        out.push(k % p);
        k /= p;
    }
    out.push(1);
    out
}

/// Inverse of `a` modulo `m` over F_p via the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, m) != 1`.
pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; invertible iff it is a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p);
    let (_, inv) = divrem(&scale(&s0, c, p), m, p);
    Some(inv)
}
