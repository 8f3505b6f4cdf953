//! Exact arithmetic in F_p and F_{p^n} = F_p[x]/(m(x)).
//!
//! Elements are coefficient vectors of length `n` over F_p, constant term first. The
//! canonical index `sum c_i p^i` is a bijection onto `0..p^n`, with 0 and 1 mapping to the
//! additive and multiplicative identities.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, require_prime};
use crate::error::{Error, Result};
use crate::fp_poly;
use crate::poly::{render_fp, IntPoly, FIELD_VAR};

/// Contexts with more elements than this are rejected; graphs store one successor per element.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;

/// Isomorphisms between fields of at most this order are verified on every pair.
pub const EXHAUSTIVE_ISOMORPHISM_ORDER: u64 = 256;

/// Seed for the sampled isomorphism check above [`EXHAUSTIVE_ISOMORPHISM_ORDER`].
pub const ISOMORPHISM_SAMPLE_SEED: u64 = 0x1503_0f1e_1d5e_ed00;

#[derive(Debug)]
struct CtxInner {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
    order: u64,
}

/// An immutable description of F_{p^n}: the prime, the degree, and a monic irreducible modulus.
///
/// Cloning is cheap; clones share the same description.
#[derive(Clone)]
pub struct ExtFieldCtx(Arc<CtxInner>);

impl PartialEq for ExtFieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtFieldCtx {}

impl fmt::Debug for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p(), self.degree(), self.modulus_text())
    }
}

impl fmt::Display for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{} (p={}, n={}, modulus {})",
            self.order(),
            self.p(),
            self.degree(),
            self.modulus_text()
        )
    }
}

fn field_order(p: u64, n: usize) -> Result<u64> {
    arith::checked_pow(p, n as u64)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(Error::OrderTooLarge { p, n })
}

/// Context for the prime field F_p, using the degree-one modulus `x`.
pub fn make_prime(p: u64) -> Result<ExtFieldCtx> {
    make_ext_field(p, 1, Some(&[0, 1]))
}

/// Builds F_{p^n}. With no modulus, the smallest-key irreducible from [`find_irreducible`] is used.
pub fn make_ext_field(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<ExtFieldCtx> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = field_order(p, n)?;
    let modulus = match modulus {
        Some(m) => {
            check_monic_reduced(m, p)?;
            let found = m.len() - 1;
            if found != n {
                return Err(Error::ModulusDegree { expected: n, found });
            }
            if let Some(factor) = find_factor_unchecked(m, p) {
                return Err(Error::ReducibleModulus {
                    modulus: render_fp(m, FIELD_VAR),
                    factor: render_fp(&factor, FIELD_VAR),
                    p,
                });
            }
            m.to_vec()
        }
        None => find_irreducible(p, n)?,
    };
    Ok(ExtFieldCtx(Arc::new(CtxInner { p, n, modulus, order })))
}

fn check_monic_reduced(poly: &[u64], p: u64) -> Result<()> {
    if let Some((power, &coeff)) = poly.iter().enumerate().find(|(_, &c)| c >= p) {
        return Err(Error::UnreducedCoefficient { coeff, power, p });
    }
    match fp_poly::degree(poly) {
        None | Some(0) => Err(Error::ConstantPolynomial),
        Some(d) if d + 1 != poly.len() || poly[d] != 1 => Err(Error::NotMonic),
        Some(_) => Ok(()),
    }
}

/// A monic factor of degree `1..=deg/2`, found by trial division in key order.
fn find_factor_unchecked(poly: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = arith::checked_pow(p, d as u64).expect("trial divisor count fits in u64");
        for key in 0..count {
            let divisor = fp_poly::monic_from_key(key, d, p);
            let (_, rem) = fp_poly::divrem(poly, &divisor, p);
            if rem.is_empty() {
                return Some(divisor);
            }
        }
    }
    None
}

/// A nontrivial monic factor of `poly` over F_p, if one exists.
pub fn find_factor(poly: &[u64], p: u64) -> Result<Option<Vec<u64>>> {
    require_prime(p)?;
    check_monic_reduced(poly, p)?;
    Ok(find_factor_unchecked(poly, p))
}

/// Irreducibility over F_p by trial division against every monic polynomial of degree
/// at most half the input's degree. `poly` is monic, reduced, constant term first.
pub fn is_irreducible(poly: &[u64], p: u64) -> Result<bool> {
    Ok(find_factor(poly, p)?.is_none())
}

/// The monic irreducible `x^n + sum c_i x^i` of degree `n` with the smallest key `sum c_i p^i`.
pub fn find_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    (0u64..)
        .map(|key| fp_poly::monic_from_key(key, n, p))
        .find(|cand| find_factor_unchecked(cand, p).is_none())
        .ok_or_else(|| Error::Internal(format!("no irreducible of degree {n} over F_{p}")))
}

/// Key of a monic polynomial under the [`find_irreducible`] ordering.
pub fn modulus_key(poly: &[u64], p: u64) -> u64 {
    poly[..poly.len() - 1].iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl ExtFieldCtx {
    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `n`.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Monic modulus, constant term first, length `n + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_text(&self) -> String {
        render_fp(&self.0.modulus, FIELD_VAR)
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn zero(&self) -> FieldElem {
        self.elem_unchecked(vec![0; self.degree()])
    }

    pub fn one(&self) -> FieldElem {
        let mut c = vec![0; self.degree()];
        c[0] = 1;
        self.elem_unchecked(c)
    }

    /// The class of `x`, a root of the modulus. In a prime field (modulus `x`) this is 0.
    pub fn modulus_root(&self) -> FieldElem {
        let mut c = vec![0; self.degree()];
        if self.degree() > 1 {
            c[1] = 1;
        }
        self.elem_unchecked(c)
    }

    /// The embedding of an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        let mut c = vec![0; self.degree()];
        c[0] = (v as i128).rem_euclid(self.p() as i128) as u64;
        self.elem_unchecked(c)
    }

    /// Element from a length-`n` vector of reduced coefficients.
    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElem> {
        if coeffs.len() != self.degree() {
            return Err(Error::CoefficientLength {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        if let Some((power, &coeff)) = coeffs.iter().enumerate().find(|(_, &c)| c >= self.p()) {
            return Err(Error::UnreducedCoefficient {
                coeff,
                power,
                p: self.p(),
            });
        }
        Ok(self.elem_unchecked(coeffs))
    }

    pub fn element(&self, index: u64) -> Result<FieldElem> {
        if index >= self.order() {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(self.elem_unchecked(self.coeffs_of(index)))
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(move |i| self.elem_unchecked(self.coeffs_of(i)))
    }

    fn elem_unchecked(&self, coeffs: Vec<u64>) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    pub(crate) fn coeffs_of(&self, index: u64) -> Vec<u64> {
        let mut out = vec![0; self.degree()];
        self.write_coeffs(index, &mut out);
        out
    }

    pub(crate) fn write_coeffs(&self, mut index: u64, out: &mut [u64]) {
        let p = self.p();
        for c in out.iter_mut() {
            *c = index % p;
            index /= p;
        }
    }

    pub(crate) fn index_of(&self, coeffs: &[u64]) -> u64 {
        let p = self.p();
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// Canonical polynomial text of the element with the given index.
    pub fn label(&self, index: u64) -> String {
        render_fp(&self.coeffs_of(index), FIELD_VAR)
    }

    /// `out = a * b mod modulus`; `scratch` must hold `2n - 1` entries.
    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64], scratch: &mut [u64]) {
        let p = self.p();
        let n = self.degree();
        let m = self.modulus();
        scratch.fill(0);
        // p < 2^32, so products of reduced residues fit in u64.
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                scratch[i + j] = (scratch[i + j] + x * y % p) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = scratch[i];
            if c == 0 {
                continue;
            }
            scratch[i] = 0;
            for (j, &mj) in m[..n].iter().enumerate() {
                let t = c * mj % p;
                scratch[i - n + j] = (scratch[i - n + j] + p - t) % p;
            }
        }
        out.copy_from_slice(&scratch[..n]);
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.degree();
        let mut out = vec![0; n];
        let mut scratch = vec![0; 2 * n - 1];
        self.mul_into(a, b, &mut out, &mut scratch);
        out
    }

    fn pow_coeffs(&self, base: &[u64], mut k: u64) -> Vec<u64> {
        let n = self.degree();
        let mut scratch = vec![0; 2 * n - 1];
        let mut tmp = vec![0; n];
        let mut acc = vec![0; n];
        acc[0] = 1;
        let mut b = base.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                self.mul_into(&acc, &b, &mut tmp, &mut scratch);
                std::mem::swap(&mut acc, &mut tmp);
            }
            k >>= 1;
            if k > 0 {
                self.mul_into(&b, &b, &mut tmp, &mut scratch);
                std::mem::swap(&mut b, &mut tmp);
            }
        }
        acc
    }

    /// Evaluator for an integer polynomial over this field, coefficients reduced mod p.
    pub fn evaluator(&self, f: &IntPoly) -> PolyEvaluator {
        PolyEvaluator::new(self, f)
    }

    /// All roots of `f` in this field, in canonical index order, by exhaustive scan.
    pub fn roots_of(&self, f: &IntPoly) -> Result<Vec<FieldElem>> {
        roots_of(f, self)
    }
}

/// Evaluates one integer polynomial at field elements given by canonical index.
///
/// Dense polynomials use Horner's rule; sparse ones (such as `t^{p^m} + c`) step between
/// the exponents of their nonzero terms by repeated squaring.
#[derive(Clone)]
pub struct PolyEvaluator {
    ctx: ExtFieldCtx,
    coeffs: Vec<u64>,
    sparse: bool,
    x: Vec<u64>,
    acc: Vec<u64>,
    tmp: Vec<u64>,
    power: Vec<u64>,
    scratch: Vec<u64>,
}

impl PolyEvaluator {
    fn new(ctx: &ExtFieldCtx, f: &IntPoly) -> Self {
        let coeffs = f.reduce_mod(ctx.p());
        let nonzero = coeffs.iter().filter(|&&c| c != 0).count();
        let n = ctx.degree();
        Self {
            ctx: ctx.clone(),
            sparse: nonzero * 8 < coeffs.len(),
            coeffs,
            x: vec![0; n],
            acc: vec![0; n],
            tmp: vec![0; n],
            power: vec![0; n],
            scratch: vec![0; 2 * n - 1],
        }
    }

    /// True when `f` reduces to the zero polynomial mod p.
    pub fn is_zero_map(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_index(&mut self, index: u64) -> u64 {
        let ctx = &self.ctx;
        let p = ctx.p();
        ctx.write_coeffs(index, &mut self.x);
        self.acc.fill(0);
        if self.coeffs.is_empty() {
            return 0;
        }
        if self.sparse {
            self.power.fill(0);
            self.power[0] = 1;
            let mut last_exp = 0u64;
            for (e, &c) in self.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let step = ctx.pow_coeffs(&self.x, e as u64 - last_exp);
                ctx.mul_into(&self.power, &step, &mut self.tmp, &mut self.scratch);
                std::mem::swap(&mut self.power, &mut self.tmp);
                last_exp = e as u64;
                for (a, &w) in self.acc.iter_mut().zip(&self.power) {
                    *a = (*a + c * w % p) % p;
                }
            }
        } else {
            for &c in self.coeffs.iter().rev() {
                ctx.mul_into(&self.acc, &self.x, &mut self.tmp, &mut self.scratch);
                std::mem::swap(&mut self.acc, &mut self.tmp);
                self.acc[0] = (self.acc[0] + c) % p;
            }
        }
        ctx.index_of(&self.acc)
    }
}

/// An element of a specific [`ExtFieldCtx`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    ctx: ExtFieldCtx,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_fp(&self.coeffs, FIELD_VAR))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_fp(&self.coeffs, FIELD_VAR))
    }
}

impl FieldElem {
    pub fn ctx(&self) -> &ExtFieldCtx {
        &self.ctx
    }

    /// Coefficient of `x^i` at position `i`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.ctx.index_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.ctx.p();
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(self.with_coeffs(c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p();
        self.with_coeffs(self.coeffs.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with_coeffs(self.ctx.mul_coeffs(&self.coeffs, &other.coeffs)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.ctx.p();
        let inv = fp_poly::inverse_mod(&self.coeffs, self.ctx.modulus(), p)
            .ok_or_else(|| Error::Internal("nonzero element without inverse".into()))?;
        let mut c = vec![0; self.ctx.degree()];
        c[..inv.len()].copy_from_slice(&inv);
        Ok(self.with_coeffs(c))
    }

    /// `self^k` by square-and-multiply; `pow(0)` is 1 for every element, including 0.
    pub fn pow(&self, k: u64) -> Self {
        self.with_coeffs(self.ctx.pow_coeffs(&self.coeffs, k))
    }

    /// The p-th power map.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p())
    }

    /// Value of the integer polynomial `f` at this element.
    pub fn eval(&self, f: &IntPoly) -> Self {
        let idx = self.ctx.evaluator(f).eval_index(self.index());
        self.with_coeffs(self.ctx.coeffs_of(idx))
    }
}

/// Every root of `f` in `ctx`, by exhaustive scan, in canonical index order.
///
/// Fails when `f` is zero after reducing its coefficients mod p.
pub fn roots_of(f: &IntPoly, ctx: &ExtFieldCtx) -> Result<Vec<FieldElem>> {
    let mut ev = ctx.evaluator(f);
    if ev.is_zero_map() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = (0..ctx.order())
        .filter(|&i| ev.eval_index(i) == 0)
        .map(|i| ctx.elem_unchecked(ctx.coeffs_of(i)))
        .collect();
    Ok(roots)
}

/// How an isomorphism was checked against both field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsomorphismCheck {
    /// Every ordered pair of elements.
    Exhaustive { pairs: u64 },
    /// Uniformly random pairs drawn from a ChaCha8 stream with a fixed seed.
    Sampled { pairs: u64, seed: u64 },
}

/// A verified field isomorphism between two presentations of F_{p^n}.
#[derive(Debug, Clone)]
pub struct FieldIsomorphism {
    /// `map[i]` is the index in the target of the image of source index `i`.
    pub map: Vec<u64>,
    /// Image of the source generator `x`, a root of the source modulus in the target.
    pub image_of_generator: FieldElem,
    pub check: IsomorphismCheck,
}

/// Finds an explicit isomorphism `a -> b` by sending `x` to the smallest-index root of
/// `a`'s modulus in `b` and extending linearly, then verifies it.
pub fn find_isomorphism(a: &ExtFieldCtx, b: &ExtFieldCtx) -> Result<FieldIsomorphism> {
    if a.p() != b.p() || a.degree() != b.degree() {
        return Err(Error::OrderMismatch {
            a_p: a.p(),
            a_n: a.degree(),
            b_p: b.p(),
            b_n: b.degree(),
        });
    }
    let modulus_a = IntPoly::new(a.modulus().iter().map(|&c| c as i64).collect());
    let beta = roots_of(&modulus_a, b)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("source modulus has no root in the target field".into()))?;

    let n = a.degree();
    let p = a.p();
    let mut basis = Vec::with_capacity(n);
    let mut power = b.one();
    for _ in 0..n {
        basis.push(power.coeffs().to_vec());
        power = power.mul(&beta)?;
    }

    let mut src = vec![0; n];
    let mut img = vec![0; n];
    let map: Vec<u64> = (0..a.order())
        .map(|i| {
            a.write_coeffs(i, &mut src);
            img.fill(0);
            for (c, v) in src.iter().zip(&basis) {
                if *c == 0 {
                    continue;
                }
                for (o, &w) in img.iter_mut().zip(v) {
                    *o = (*o + c * w % p) % p;
                }
            }
            b.index_of(&img)
        })
        .collect();

    let check = verify_isomorphism(a, b, &map)?;
    Ok(FieldIsomorphism {
        map,
        image_of_generator: beta,
        check,
    })
}

/// Checks that `map` is a bijection fixing 0 and 1 that preserves addition and multiplication.
pub fn verify_isomorphism(a: &ExtFieldCtx, b: &ExtFieldCtx, map: &[u64]) -> Result<IsomorphismCheck> {
    let order = a.order();
    let fail = |what: &str| Err(Error::Internal(format!("isomorphism check failed: {what}")));
    if map.len() as u64 != order || b.order() != order {
        return fail("size");
    }
    if map[0] != 0 || map[1 % map.len()] != 1 % order {
        return fail("identities");
    }
    let mut seen = vec![false; map.len()];
    for &v in map {
        if v >= order || std::mem::replace(&mut seen[v as usize], true) {
            return fail("not a bijection");
        }
    }

    let preserves = |i: u64, j: u64| -> Result<bool> {
        let (x, y) = (a.element(i)?, a.element(j)?);
        let (fx, fy) = (b.element(map[i as usize])?, b.element(map[j as usize])?);
        let sum = map[x.add(&y)?.index() as usize] == fx.add(&fy)?.index();
        let prod = map[x.mul(&y)?.index() as usize] == fx.mul(&fy)?.index();
        Ok(sum && prod)
    };

    let check = if order <= EXHAUSTIVE_ISOMORPHISM_ORDER {
        for i in 0..order {
            for j in 0..order {
                if !preserves(i, j)? {
                    return fail("operations not preserved");
                }
            }
        }
        IsomorphismCheck::Exhaustive { pairs: order * order }
    } else {
        let pairs = 10 * order;
        let mut rng = ChaCha8Rng::seed_from_u64(ISOMORPHISM_SAMPLE_SEED);
        for _ in 0..pairs {
            let (i, j) = (rng.gen_range(0..order), rng.gen_range(0..order));
            if !preserves(i, j)? {
                return fail("operations not preserved");
            }
        }
        IsomorphismCheck::Sampled {
            pairs,
            seed: ISOMORPHISM_SAMPLE_SEED,
        }
    };
    Ok(check)
}

/// For `n` with two distinct prime factors, returns `(q, n / q)` with `q` the smallest prime
/// factor: both nonzero mod `n`, product zero mod `n`. Prime powers have no such pair.
pub fn zero_divisor_witness(n: u64) -> Result<Option<(u64, u64)>> {
    if n < 2 {
        return Err(Error::BelowTwo(n));
    }
    let q = arith::smallest_factor(n);
    let mut rest = n;
    while rest.is_multiple_of(q) {
        rest /= q;
    }
    Ok((rest != 1).then_some((q, n / q)))
}
