//! Exhaustive checks that `t^{p^m} + c` (with `c` in F_p) permutes every F_{p^n}, that the
//! Frobenius map is an automorphism, and that bijective maps outside that family exist.

use rayon::prelude::*;

use crate::arith::{self, require_prime};
use crate::dynamics::{build_graph, decompose_successors, is_permutation};
use crate::error::{Error, Result};
use crate::field::{make_ext_field, ExtFieldCtx, MAX_FIELD_ORDER};
use crate::poly::IntPoly;

/// Largest exponent `p^m` accepted by a sweep; maps are stored as dense coefficient lists.
pub const MAX_FAMILY_EXPONENT: u64 = 1 << 16;

/// Maximum number of candidate polynomials enumerated by [`find_bijective_outside_family`].
pub const OUTSIDE_FAMILY_BUDGET: u64 = 1 << 20;

/// Which constants `c` a sweep uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantRange {
    /// Every `c` in `{0, .., p-1}`.
    AllOfFp,
    /// Integers reduced mod p (duplicates after reduction are dropped).
    Explicit(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub primes: Vec<u64>,
    pub m_values: Vec<u32>,
    pub n_values: Vec<usize>,
    pub constants: ConstantRange,
}

impl Default for SweepSpec {
    /// p in {2, 3, 5}, m in {1, 2}, n in {1, 2, 3}, every c in F_p.
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5],
            m_values: vec![1, 2],
            n_values: vec![1, 2, 3],
            constants: ConstantRange::AllOfFp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SweepTuple {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    pub c: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub tuple: SweepTuple,
    pub injective: bool,
    pub preperiodic_count: u64,
}

impl SweepRow {
    pub fn passes(&self) -> bool {
        self.injective && self.preperiodic_count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    /// One row per tuple, sorted by (p, m, n, c).
    pub rows: Vec<SweepRow>,
    pub counterexamples: Vec<SweepRow>,
}

impl SweepResult {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl SweepSpec {
    /// Expands and validates every (p, m, n, c) tuple.
    pub fn tuples(&self) -> Result<Vec<SweepTuple>> {
        if self.primes.is_empty() || self.m_values.is_empty() || self.n_values.is_empty() {
            return Err(Error::InvalidSweep("primes, m and n must all be non-empty".into()));
        }
        if let ConstantRange::Explicit(cs) = &self.constants {
            if cs.is_empty() {
                return Err(Error::InvalidSweep("explicit constant list is empty".into()));
            }
        }
        let mut out = Vec::new();
        for &p in &self.primes {
            require_prime(p)?;
            let cs: Vec<u64> = match &self.constants {
                ConstantRange::AllOfFp => (0..p).collect(),
                ConstantRange::Explicit(cs) => {
                    let mut v: Vec<u64> = cs.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            };
            for &m in &self.m_values {
                if m == 0 {
                    return Err(Error::InvalidSweep("m must be at least 1".into()));
                }
                match arith::checked_pow(p, m.into()) {
                    Some(e) if e <= MAX_FAMILY_EXPONENT => {}
                    _ => {
                        return Err(Error::InvalidSweep(format!(
                            "exponent {p}^{m} exceeds {MAX_FAMILY_EXPONENT} (p={p}, m={m})"
                        )))
                    }
                }
                for &n in &self.n_values {
                    if n == 0 {
                        return Err(Error::InvalidSweep("n must be at least 1".into()));
                    }
                    match arith::checked_pow(p, n as u64) {
                        Some(q) if q <= MAX_FIELD_ORDER => {}
                        _ => {
                            return Err(Error::InvalidSweep(format!(
                                "field order {p}^{n} exceeds 2^32 (p={p}, m={m}, n={n})"
                            )))
                        }
                    }
                    out.extend(cs.iter().map(|&c| SweepTuple { p, m, n, c }));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// `t^{p^m} + c`.
pub fn family_map(p: u64, m: u32, c: u64) -> IntPoly {
    let exponent = p.pow(m) as usize;
    IntPoly::monomial_plus(exponent, c as i64)
}

/// Builds `t^{p^m} + c` over F_{p^n} (default modulus) for every tuple and records whether it is
/// injective and how many preperiodic points it has.
pub fn check_theorem(spec: &SweepSpec) -> Result<SweepResult> {
    let tuples = spec.tuples()?;
    let mut fields: Vec<((u64, usize), ExtFieldCtx)> = Vec::new();
    for t in &tuples {
        if !fields.iter().any(|(k, _)| *k == (t.p, t.n)) {
            fields.push(((t.p, t.n), make_ext_field(t.p, t.n, None)?));
        }
    }
    let ctx_for =
        |p: u64, n: usize| -> &ExtFieldCtx { &fields.iter().find(|(k, _)| *k == (p, n)).expect("context prepared").1 };

    let mut rows: Vec<SweepRow> = tuples
        .par_iter()
        .map(|&tuple| {
            let g = build_graph(&family_map(tuple.p, tuple.m, tuple.c), ctx_for(tuple.p, tuple.n));
            let report = g.decompose().report();
            SweepRow {
                tuple,
                injective: g.is_injective(),
                preperiodic_count: report.preperiodic_count,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.tuple);
    let counterexamples = rows.iter().filter(|r| !r.passes()).cloned().collect();
    Ok(SweepResult { rows, counterexamples })
}

/// Result of sweeping the constant over all of F_{p^n} rather than F_p. Reported, not asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedRow {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    /// Canonical index of the constant in F_{p^n}.
    pub constant_index: u64,
    pub injective: bool,
    pub preperiodic_count: u64,
}

/// Exploratory variant of [`check_theorem`] with `c` ranging over all of F_{p^n}.
pub fn explore_extended_constants(spec: &SweepSpec) -> Result<Vec<ExtendedRow>> {
    let mut keys: Vec<(u64, u32, usize)> = spec.tuples()?.iter().map(|t| (t.p, t.m, t.n)).collect();
    keys.dedup();
    let mut rows = Vec::new();
    for (p, m, n) in keys {
        let ctx = make_ext_field(p, n, None)?;
        let power = build_graph(&IntPoly::monomial(p.pow(m) as usize), &ctx);
        for gamma in ctx.elements() {
            let succ: Vec<u64> = power
                .successors()
                .iter()
                .map(|&s| Ok(ctx.element(s)?.add(&gamma)?.index()))
                .collect::<Result<_>>()?;
            rows.push(ExtendedRow {
                p,
                m,
                n,
                constant_index: gamma.index(),
                injective: is_permutation(&succ),
                preperiodic_count: decompose_successors(&succ).report().preperiodic_count,
            });
        }
    }
    Ok(rows)
}

/// The Frobenius map `a -> a^p` as a permutation candidate over canonical indices.
pub fn frobenius_map(ctx: &ExtFieldCtx) -> Vec<u64> {
    build_graph(&IntPoly::monomial(ctx.p() as usize), ctx)
        .successors()
        .to_vec()
}

/// True iff Frobenius is a bijection on `ctx` (exhaustive).
pub fn check_frobenius_bijective(ctx: &ExtFieldCtx) -> bool {
    is_permutation(&frobenius_map(ctx))
}

/// Order of a permutation: the lcm of its cycle lengths. `None` if `perm` is not a bijection.
pub fn permutation_order(perm: &[u64]) -> Option<u64> {
    if !is_permutation(perm) {
        return None;
    }
    let d = decompose_successors(perm);
    Some(d.cycles().iter().fold(1, |acc, c| arith::lcm(acc, c.len() as u64)))
}

/// Order of the Frobenius automorphism of `ctx`; divides `n`.
pub fn frobenius_order(ctx: &ExtFieldCtx) -> Option<u64> {
    permutation_order(&frobenius_map(ctx))
}

/// True iff the reduced coefficients spell `t^{p^m} + c` for some `m >= 1` and `c` in F_p.
pub fn is_family_form(coeffs: &[u64], p: u64) -> bool {
    let Some((&lead, lower)) = coeffs.split_last() else {
        return false;
    };
    let deg = lower.len() as u64;
    if lead != 1 || deg < p {
        return false;
    }
    let mut e = deg;
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1 && lower.iter().skip(1).all(|&c| c == 0)
}

/// Some `(m, c)` with `m` in `1..=n` and `c` in F_p such that `f` agrees with `t^{p^m} + c` at
/// every point of `ctx`, if any. Exponents beyond `n` add nothing since `a^{p^n} = a`.
pub fn pointwise_family_match(ctx: &ExtFieldCtx, f: &IntPoly) -> Option<(u32, u64)> {
    let target = build_graph(f, ctx);
    let n = ctx.degree() as u32;
    (1..=n).find_map(|m| {
        let base = build_graph(&IntPoly::monomial(ctx.p().pow(m) as usize), ctx);
        (0..ctx.p()).find_map(|c| {
            let c_elem = ctx.from_int(c as i64);
            let agrees = base.successors().iter().zip(target.successors()).all(|(&s, &t)| {
                ctx.element(s)
                    .and_then(|e| e.add(&c_elem))
                    .map(|e| e.index() == t)
                    .unwrap_or(false)
            });
            agrees.then_some((m, c))
        })
    })
}

/// Every polynomial with coefficients in `{0, .., p-1}` and degree at most `max_degree` that
/// permutes `ctx` and is not syntactically of the form `t^{p^m} + c`. Sorted by degree, then
/// by coefficients from the constant term upward.
pub fn find_bijective_outside_family(ctx: &ExtFieldCtx, max_degree: usize) -> Result<Vec<IntPoly>> {
    let p = ctx.p();
    let count = arith::checked_pow(p, max_degree as u64 + 1)
        .filter(|&c| c <= OUTSIDE_FAMILY_BUDGET)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "{p}^{} candidate polynomials exceed the limit of {OUTSIDE_FAMILY_BUDGET}",
                max_degree + 1
            ))
        })?;

    let mut found: Vec<IntPoly> = (0..count)
        .into_par_iter()
        .filter_map(|key| {
            let mut coeffs = vec![0u64; max_degree + 1];
            let mut k = key;
            for c in coeffs.iter_mut() {
                *c = k % p;
                k /= p;
            }
            crate::fp_poly::trim(&mut coeffs);
            if is_family_form(&coeffs, p) {
                return None;
            }
            let f = IntPoly::new(coeffs.iter().map(|&c| c as i64).collect());
            build_graph(&f, ctx).is_injective().then_some(f)
        })
        .collect();
    found.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(found)
}
