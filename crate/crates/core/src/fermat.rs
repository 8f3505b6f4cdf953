//! The interval map `T_n(x) = nx - floor(nx)` (with `T_n(1) = 1`) in exact rational arithmetic,
//! and the orbit count that shows `p | a^p - a`.
//!
//! The fixed points of `T_{a^p}` are the grid `k / (a^p - 1)` for `k < a^p - 1` plus the point 1.
//! On that grid `T_a` acts as `k -> a k mod (a^p - 1)`, so orbits are enumerated on residues and
//! only converted to [`UnitRational`] for presentation.

use std::fmt;

use serde::Serialize;

use crate::arith::{self, gcd, require_prime};
use crate::error::{Error, Result};

/// Orbit enumeration keeps one visited flag per grid point; `a^p` above this is refused.
pub const MAX_FLT_GRID: u64 = 1 << 32;

/// An exact rational in `[0, 1]`, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitRational {
    num: u64,
    den: u64,
}

impl UnitRational {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::NotUnitInterval { num, den });
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl PartialOrd for UnitRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnitRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => f.write_str("0"),
            (n, d) if n == d => f.write_str("1"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

fn check_degree(n: u64) -> Result<()> {
    if n <= 1 {
        return Err(Error::IntervalMapDegree(n));
    }
    Ok(())
}

/// `T_n(x)`: the fractional part of `n x`, with 1 sent to itself.
pub fn t_apply(n: u64, x: UnitRational) -> Result<UnitRational> {
    check_degree(n)?;
    if x.is_one() {
        return Ok(UnitRational::ONE);
    }
    let num = (n as u128 * x.num as u128 % x.den as u128) as u64;
    UnitRational::new(num, x.den)
}

/// The `n` fixed points of `T_n`: `k / (n - 1)` for `k = 0..n-1`, and 1.
pub fn fixed_points(n: u64) -> Result<Vec<UnitRational>> {
    check_degree(n)?;
    let mut pts = (0..n - 1)
        .map(|k| UnitRational::new(k, n - 1))
        .collect::<Result<Vec<_>>>()?;
    pts.push(UnitRational::ONE);
    for &x in &pts {
        if t_apply(n, x)? != x {
            return Err(Error::Internal(format!("{x} is not fixed by T_{n}")));
        }
    }
    Ok(pts)
}

/// Checks `T_m(T_l(x)) = T_{ml}(x)` at every `x = k / grid_den`, `k = 0..=grid_den`.
pub fn compose_check(m: u64, l: u64, grid_den: u64) -> Result<bool> {
    check_degree(m)?;
    check_degree(l)?;
    if grid_den == 0 {
        return Err(Error::NotUnitInterval { num: 0, den: 0 });
    }
    let ml = m.checked_mul(l).ok_or_else(|| Error::Overflow(format!("{m} * {l}")))?;
    for k in 0..=grid_den {
        let x = UnitRational::new(k, grid_den)?;
        if t_apply(m, t_apply(l, x)?)? != t_apply(ml, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of counting `T_a`-orbits among the fixed points of `T_{a^p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FltReport {
    pub a: u64,
    pub p: u64,
    /// `|fixed points of T_{a^p}|`, which is `a^p`.
    pub total_fixed_of_t_a_pow_p: u64,
    /// Points among them already fixed by `T_a`.
    pub fixed_of_t_a: u64,
    /// Points whose minimal period under `T_a` is exactly `p`.
    pub minimal_period_p_points: u64,
    /// Number of `T_a`-orbits of length `p`.
    pub orbit_count: u64,
    /// `(a^p - a) / p`, rounded down.
    pub quotient: u64,
    pub quotient_is_integer: bool,
    /// Every point not fixed by `T_a` has minimal period exactly `p`.
    pub all_periods_exact: bool,
}

struct OrbitScan {
    grid: u64,
    fixed: u64,
    orbits_of_len_p: u64,
    points_of_period_p: u64,
    all_exact: bool,
    orbits: Option<Vec<Vec<u64>>>,
}

fn scan_orbits(a: u64, p: u64, keep_orbits: bool) -> Result<OrbitScan> {
    if a < 2 {
        return Err(Error::IntervalMapDegree(a));
    }
    require_prime(p)?;
    let total = arith::checked_pow(a, p).ok_or_else(|| Error::Overflow(format!("{a}^{p} exceeds 64 bits")))?;
    if total > MAX_FLT_GRID {
        return Err(Error::BudgetExceeded(format!(
            "{a}^{p} = {total} grid points exceed the enumeration limit {MAX_FLT_GRID}"
        )));
    }
    let grid = total - 1;
    let mut visited = vec![false; grid as usize];
    // The endpoint 1 is fixed by every T_n.
    let mut fixed = 1u64;
    let mut orbits_of_len_p = 0u64;
    let mut points_of_period_p = 0u64;
    let mut all_exact = true;
    let mut orbits = keep_orbits.then(Vec::new);
    for start in 0..grid {
        if visited[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut len = 0u64;
        let mut k = start;
        loop {
            visited[k as usize] = true;
            len += 1;
            if keep_orbits {
                orbit.push(k);
            }
            k = (a as u128 * k as u128 % grid as u128) as u64;
            if k == start {
                break;
            }
        }
        match len {
            1 => fixed += 1,
            l if l == p => {
                orbits_of_len_p += 1;
                points_of_period_p += p;
            }
            _ => all_exact = false,
        }
        if let Some(o) = orbits.as_mut() {
            o.push(orbit);
        }
    }
    Ok(OrbitScan {
        grid,
        fixed,
        orbits_of_len_p,
        points_of_period_p,
        all_exact,
        orbits,
    })
}

/// Partitions the `a^p` fixed points of `T_{a^p}` into `T_a`-orbits and counts them.
pub fn flt_orbit_count(a: u64, p: u64) -> Result<FltReport> {
    let scan = scan_orbits(a, p, false)?;
    let total = scan.grid + 1;
    let report = FltReport {
        a,
        p,
        total_fixed_of_t_a_pow_p: total,
        fixed_of_t_a: scan.fixed,
        minimal_period_p_points: scan.points_of_period_p,
        orbit_count: scan.orbits_of_len_p,
        quotient: (total - a) / p,
        quotient_is_integer: (total - a).is_multiple_of(p),
        all_periods_exact: scan.all_exact,
    };
    let consistent = report.fixed_of_t_a == a
        && report.minimal_period_p_points == total - a
        && report.orbit_count * p == report.minimal_period_p_points;
    if !consistent {
        return Err(Error::Internal(format!(
            "orbit counts inconsistent for a={a}, p={p}: {report:?}"
        )));
    }
    Ok(report)
}

/// The `T_a`-orbits on the grid `k / (a^p - 1)` as reduced fractions, sorted by smallest member,
/// followed by the fixed endpoint 1.
pub fn flt_orbits(a: u64, p: u64) -> Result<Vec<Vec<UnitRational>>> {
    let scan = scan_orbits(a, p, true)?;
    let grid = scan.grid;
    let mut out = scan
        .orbits
        .unwrap_or_default()
        .into_iter()
        .map(|o| {
            o.into_iter()
                .map(|k| UnitRational::new(k, grid))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    out.push(vec![UnitRational::ONE]);
    Ok(out)
}
