//! Periodic and preperiodic point counts of one integer polynomial across F_p, F_{p^2}, ..., F_{p^M}.

use rayon::prelude::*;

use crate::arith::{self, require_prime};
use crate::dynamics::{build_graph, iterate_successors};
use crate::error::{Error, Result};
use crate::field::{make_ext_field, ExtFieldCtx, MAX_FIELD_ORDER};
use crate::poly::IntPoly;

/// Which count the gap column `|N - q - 1|` is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountedSet {
    #[default]
    Periodic,
    Preperiodic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    pub m: u32,
    /// Field order `p^m`.
    pub q: u64,
    pub periodic_count: u64,
    pub preperiodic_count: u64,
    pub fixed_count: u64,
    /// Cycle lengths in ascending order, with multiplicity.
    pub cycle_lengths: Vec<u64>,
    /// `|N - q - 1|` where N is the count selected by the series' [`CountedSet`].
    pub gap: u64,
    /// `2 sqrt(q)`, printed for comparison only.
    pub hasse_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub p: u64,
    pub map: IntPoly,
    pub counted: CountedSet,
    /// Rows for `m = 1..=M'`, ordered by `m`.
    pub rows: Vec<CountRow>,
    /// The requested `M` when rows stop early because `p^m` exceeds the field size bound.
    pub truncated_from: Option<u32>,
}

fn row_for(f: &IntPoly, ctx: &ExtFieldCtx, m: u32, counted: CountedSet) -> CountRow {
    let report = build_graph(f, ctx).decompose().report();
    let q = ctx.order();
    let n = match counted {
        CountedSet::Periodic => report.periodic_count,
        CountedSet::Preperiodic => report.preperiodic_count,
    };
    CountRow {
        m,
        q,
        periodic_count: report.periodic_count,
        preperiodic_count: report.preperiodic_count,
        fixed_count: report.fixed_count,
        cycle_lengths: report.cycle_lengths,
        gap: (n as i128 - q as i128 - 1).unsigned_abs() as u64,
        hasse_bound: 2.0 * (q as f64).sqrt(),
    }
}

/// Counts for `m = 1..=max_m` using the default modulus for each F_{p^m}.
///
/// When `p^max_m` is beyond the size bound, the series stops at the largest feasible `m` and
/// `truncated_from` records the request. It is an error if not even `m = 1` fits.
pub fn count_series(f: &IntPoly, p: u64, max_m: u32, counted: CountedSet) -> Result<CountSeries> {
    require_prime(p)?;
    if max_m == 0 {
        return Err(Error::ZeroDegree);
    }
    let feasible = (1..=max_m)
        .take_while(|&m| arith::checked_pow(p, m.into()).is_some_and(|q| q <= MAX_FIELD_ORDER))
        .last()
        .ok_or(Error::OrderTooLarge { p, n: 1 })?;

    let rows = (1..=feasible)
        .into_par_iter()
        .map(|m| {
            let ctx = make_ext_field(p, m as usize, None)?;
            Ok(row_for(f, &ctx, m, counted))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CountSeries {
        p,
        map: f.clone(),
        counted,
        rows,
        truncated_from: (feasible < max_m).then_some(max_m),
    })
}

/// Number of points with `f^k(a) = a`, from the `k`-th iterate of the successor array.
pub fn fixed_count_by_period(f: &IntPoly, ctx: &ExtFieldCtx, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidSweep("iterate count k must be at least 1".into()));
    }
    let g = build_graph(f, ctx);
    let iterate = iterate_successors(g.successors(), k);
    Ok(iterate.iter().enumerate().filter(|&(i, &s)| i as u64 == s).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_plus_1_over_f3_tower() {
        let f = IntPoly::parse("t^2+1").unwrap();
        let s = count_series(&f, 3, 2, CountedSet::Periodic).unwrap();
        assert_eq!((s.rows[1].periodic_count, s.rows[1].preperiodic_count), (3, 6));
        let s = count_series(&f, 2, 3, CountedSet::Periodic).unwrap();
        assert_eq!((s.rows[2].periodic_count, s.rows[2].preperiodic_count), (8, 0));
        assert_eq!(s.rows.iter().map(|r| r.m).collect::<Vec<_>>(), [1, 2, 3]);
    }

    #[test]
    fn identity_counts() {
        let s = count_series(&IntPoly::identity(), 5, 3, CountedSet::Preperiodic).unwrap();
        for r in &s.rows {
            assert_eq!(r.periodic_count, r.q);
            assert_eq!(r.preperiodic_count, 0);
            assert_eq!(r.gap, r.q + 1);
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let s = count_series(&IntPoly::identity(), 65537, 3, CountedSet::Periodic).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.truncated_from, Some(3));
        assert!(count_series(&IntPoly::identity(), 2, 0, CountedSet::Periodic).is_err());
    }

    #[test]
    fn iterate_fixed_counts() {
        let f = IntPoly::parse("t^2+1").unwrap();
        let f8 = make_ext_field(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert_eq!(fixed_count_by_period(&f, &f8, 6).unwrap(), 8);
        assert_eq!(fixed_count_by_period(&f, &f8, 3).unwrap(), 0);
        let f9 = make_ext_field(3, 2, Some(&[2, 1, 1])).unwrap();
        assert_eq!(fixed_count_by_period(&f, &f9, 1).unwrap(), 1);
        assert!(fixed_count_by_period(&f, &f9, 0).is_err());
    }
}
