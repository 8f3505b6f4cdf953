//! Functional graphs of polynomial maps over a finite field and their orbit structure.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::ExtFieldCtx;
use crate::poly::IntPoly;

/// The self-map `f: F_{p^n} -> F_{p^n}` materialised as a successor array over canonical indices.
#[derive(Debug, Clone)]
pub struct FunctionalGraph {
    ctx: ExtFieldCtx,
    map: IntPoly,
    succ: Vec<u64>,
}

/// Evaluates `f` at every element. Constant maps are allowed.
pub fn build_graph(f: &IntPoly, ctx: &ExtFieldCtx) -> FunctionalGraph {
    let order = ctx.order() as usize;
    let succ = (0..order)
        .into_par_iter()
        .with_min_len(1024)
        .map_init(|| ctx.evaluator(f), |ev, i| ev.eval_index(i as u64))
        .collect();
    FunctionalGraph {
        ctx: ctx.clone(),
        map: f.clone(),
        succ,
    }
}

impl FunctionalGraph {
    pub fn ctx(&self) -> &ExtFieldCtx {
        &self.ctx
    }

    pub fn map(&self) -> &IntPoly {
        &self.map
    }

    pub fn successors(&self) -> &[u64] {
        &self.succ
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// True iff the map is a permutation of the field.
    pub fn is_injective(&self) -> bool {
        is_permutation(&self.succ)
    }

    pub fn decompose(&self) -> OrbitDecomposition {
        let d = decompose_successors(&self.succ);
        debug_assert_eq!(
            self.is_injective(),
            d.report().preperiodic_count == 0,
            "a self-map of a finite set is injective exactly when it has no preperiodic points"
        );
        d
    }

    /// The successor array of the `k`-th iterate `f^k`, by repeated squaring of the map.
    pub fn iterate(&self, k: u64) -> Vec<u64> {
        iterate_successors(&self.succ, k)
    }
}

/// Same as [`FunctionalGraph::is_injective`]; kept for callers that think in free functions.
pub fn is_injective_map(g: &FunctionalGraph) -> bool {
    g.is_injective()
}

pub fn is_permutation(succ: &[u64]) -> bool {
    let mut seen = vec![false; succ.len()];
    succ.iter().all(|&s| {
        let slot = &mut seen[s as usize];
        !std::mem::replace(slot, true)
    })
}

pub fn iterate_successors(succ: &[u64], mut k: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = (0..succ.len() as u64).collect();
    let mut step = succ.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.iter().map(|&i| step[i as usize]).collect();
        }
        k >>= 1;
        if k > 0 {
            step = step.iter().map(|&i| step[i as usize]).collect();
        }
    }
    acc
}

/// Order in which nodes are seeded during decomposition. The result does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisitOrder {
    Forward,
    Reverse,
}

/// Orbit type of a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Fixed,
    Periodic(u64),
    Preperiodic { tail: u64, period: u64 },
}

impl PointClass {
    pub fn name(&self) -> &'static str {
        match self {
            PointClass::Fixed => "fixed",
            PointClass::Periodic(_) => "periodic",
            PointClass::Preperiodic { .. } => "preperiodic",
        }
    }
}

/// Summary counts. Fixed points are also counted as periodic (of period 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub fixed_count: u64,
    pub periodic_count: u64,
    pub preperiodic_count: u64,
    /// Cycle lengths in ascending order, with multiplicity.
    pub cycle_lengths: Vec<u64>,
    pub max_tail_length: u64,
}

/// Per-node tail length, eventual period, and cycle membership, plus the cycles themselves.
///
/// Each cycle starts at its smallest index and follows the map; cycles are sorted by
/// (length, smallest index) and the cycle id is the position in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    tail: Vec<u64>,
    period: Vec<u64>,
    cycle_id: Vec<usize>,
    cycles: Vec<Vec<u64>>,
}

pub fn decompose(g: &FunctionalGraph) -> OrbitDecomposition {
    g.decompose()
}

pub fn decompose_successors(succ: &[u64]) -> OrbitDecomposition {
    decompose_in_order(succ, VisitOrder::Forward)
}

/// Peels in-degree-zero nodes (the tails), walks the remaining nodes (all on cycles), then
/// assigns tail lengths in reverse peel order so every node follows its successor.
pub fn decompose_in_order(succ: &[u64], order: VisitOrder) -> OrbitDecomposition {
    let len = succ.len();
    let visit: Box<dyn Iterator<Item = usize>> = match order {
        VisitOrder::Forward => Box::new(0..len),
        VisitOrder::Reverse => Box::new((0..len).rev()),
    };
    let visit: Vec<usize> = visit.collect();

    let mut indeg = vec![0u64; len];
    for &s in succ {
        indeg[s as usize] += 1;
    }
    let mut peeled: Vec<usize> = visit.iter().copied().filter(|&i| indeg[i] == 0).collect();
    let mut head = 0;
    while head < peeled.len() {
        let s = succ[peeled[head]] as usize;
        indeg[s] -= 1;
        if indeg[s] == 0 {
            peeled.push(s);
        }
        head += 1;
    }
    let mut on_tail = vec![false; len];
    for &i in &peeled {
        on_tail[i] = true;
    }

    let mut cycles: Vec<Vec<u64>> = Vec::new();
    let mut seen = on_tail.clone();
    for &start in &visit {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v as u64);
            v = succ[v] as usize;
        }
        let min_pos = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
        cycle.rotate_left(min_pos);
        cycles.push(cycle);
    }
    cycles.sort_by_key(|c| (c.len(), c[0]));

    let mut tail = vec![0u64; len];
    let mut period = vec![0u64; len];
    let mut cycle_id = vec![0usize; len];
    for (id, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            period[v as usize] = cycle.len() as u64;
            cycle_id[v as usize] = id;
        }
    }
    for &v in peeled.iter().rev() {
        let s = succ[v] as usize;
        tail[v] = tail[s] + 1;
        period[v] = period[s];
        cycle_id[v] = cycle_id[s];
    }

    OrbitDecomposition {
        tail,
        period,
        cycle_id,
        cycles,
    }
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    /// Distance from each node to its eventual cycle.
    pub fn tail_lengths(&self) -> &[u64] {
        &self.tail
    }

    /// Length of each node's eventual cycle.
    pub fn periods(&self) -> &[u64] {
        &self.period
    }

    pub fn cycle_ids(&self) -> &[usize] {
        &self.cycle_id
    }

    pub fn cycles(&self) -> &[Vec<u64>] {
        &self.cycles
    }

    pub fn classify(&self, i: u64) -> Result<PointClass> {
        let idx = usize::try_from(i)
            .ok()
            .filter(|&idx| idx < self.len())
            .ok_or(Error::IndexOutOfRange {
                index: i,
                order: self.len() as u64,
            })?;
        Ok(match (self.tail[idx], self.period[idx]) {
            (0, 1) => PointClass::Fixed,
            (0, k) => PointClass::Periodic(k),
            (tail, period) => PointClass::Preperiodic { tail, period },
        })
    }

    pub fn report(&self) -> OrbitReport {
        let cycle_lengths: Vec<u64> = self.cycles.iter().map(|c| c.len() as u64).collect();
        let periodic_count = cycle_lengths.iter().sum();
        OrbitReport {
            fixed_count: cycle_lengths.iter().filter(|&&l| l == 1).count() as u64,
            periodic_count,
            preperiodic_count: self.len() as u64 - periodic_count,
            cycle_lengths,
            max_tail_length: self.tail.iter().copied().max().unwrap_or(0),
        }
    }
}

pub fn classify_point(d: &OrbitDecomposition, i: u64) -> Result<PointClass> {
    d.classify(i)
}
