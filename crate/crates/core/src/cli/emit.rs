//! Text, DOT, JSON and CSV renderings. All output is ASCII with LF line endings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dynamics::{FunctionalGraph, OrbitDecomposition, PointClass};
use crate::fermat::{FltReport, UnitRational};
use crate::field::{ExtFieldCtx, FieldElem, FieldIsomorphism, IsomorphismCheck};
use crate::poly::IntPoly;
use crate::theorem::{ExtendedRow, SweepResult};
use crate::zeta::{CountSeries, CountedSet};

fn labels(ctx: &ExtFieldCtx) -> Vec<String> {
    (0..ctx.order()).map(|i| ctx.label(i)).collect()
}

/// Graphviz rendering: one node line per element, then one edge line per element, both in
/// canonical index order, labelled with canonical polynomial text.
pub fn emit_dot(g: &FunctionalGraph) -> String {
    let labels = labels(g.ctx());
    let mut out = String::from("digraph orbit {\n");
    for l in &labels {
        let _ = writeln!(out, "  \"{l}\";");
    }
    for (l, &s) in labels.iter().zip(g.successors()) {
        let _ = writeln!(out, "  \"{l}\" -> \"{}\";", labels[s as usize]);
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct FieldJson {
    p: u64,
    n: usize,
    modulus: String,
}

impl FieldJson {
    fn of(ctx: &ExtFieldCtx) -> Self {
        Self {
            p: ctx.p(),
            n: ctx.degree(),
            modulus: ctx.modulus_text(),
        }
    }
}

#[derive(Serialize)]
struct NodeJson {
    label: String,
    succ_label: String,
    tail: u64,
    period: u64,
    cycle_id: usize,
    class: &'static str,
}

#[derive(Serialize)]
struct ReportJson {
    fixed: u64,
    periodic: u64,
    preperiodic: u64,
    cycle_lengths: Vec<u64>,
    max_tail: u64,
}

#[derive(Serialize)]
struct OrbitsJson {
    field: FieldJson,
    map: String,
    nodes: Vec<NodeJson>,
    cycles: Vec<Vec<String>>,
    report: ReportJson,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

pub fn emit_json(g: &FunctionalGraph, d: &OrbitDecomposition) -> String {
    let labels = labels(g.ctx());
    let nodes = (0..labels.len())
        .map(|i| NodeJson {
            label: labels[i].clone(),
            succ_label: labels[g.successors()[i] as usize].clone(),
            tail: d.tail_lengths()[i],
            period: d.periods()[i],
            cycle_id: d.cycle_ids()[i],
            class: d.classify(i as u64).map(|c| c.name()).unwrap_or("unknown"),
        })
        .collect();
    let cycles = d
        .cycles()
        .iter()
        .map(|c| c.iter().map(|&v| labels[v as usize].clone()).collect())
        .collect();
    let r = d.report();
    to_json(&OrbitsJson {
        field: FieldJson::of(g.ctx()),
        map: g.map().to_string(),
        nodes,
        cycles,
        report: ReportJson {
            fixed: r.fixed_count,
            periodic: r.periodic_count,
            preperiodic: r.preperiodic_count,
            cycle_lengths: r.cycle_lengths,
            max_tail: r.max_tail_length,
        },
    })
}

fn multiset(values: &[u64], sep: &str) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn class_text(c: PointClass) -> String {
    match c {
        PointClass::Fixed => "fixed".into(),
        PointClass::Periodic(k) => format!("periodic (period {k})"),
        PointClass::Preperiodic { tail, period } => format!("preperiodic (tail {tail}, period {period})"),
    }
}

pub fn emit_text(g: &FunctionalGraph, d: &OrbitDecomposition) -> String {
    let labels = labels(g.ctx());
    let r = d.report();
    let mut out = String::new();
    let _ = writeln!(out, "field: {}", g.ctx());
    let _ = writeln!(out, "map: {}", g.map());
    let _ = writeln!(out, "fixed: {}", r.fixed_count);
    let _ = writeln!(out, "periodic: {}", r.periodic_count);
    let _ = writeln!(out, "preperiodic: {}", r.preperiodic_count);
    let _ = writeln!(out, "cycle lengths: {{{}}}", multiset(&r.cycle_lengths, ","));
    let _ = writeln!(out, "max tail: {}", r.max_tail_length);
    let _ = writeln!(out, "injective: {}", yes_no(g.is_injective()));
    out.push_str("cycles:\n");
    for c in d.cycles() {
        let names: Vec<&str> = c.iter().map(|&v| labels[v as usize].as_str()).collect();
        let _ = writeln!(out, "  ({})", names.join(", "));
    }
    out.push_str("points:\n");
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    for (i, l) in labels.iter().enumerate() {
        let succ = &labels[g.successors()[i] as usize];
        let class = d.classify(i as u64).map(class_text).unwrap_or_default();
        let _ = writeln!(out, "  {l:<width$} -> {succ:<width$}  {class}");
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Addition and multiplication tables, rows and columns in canonical index order.
pub fn field_table(ctx: &ExtFieldCtx) -> String {
    let elems: Vec<FieldElem> = ctx.elements().collect();
    let labels: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    let _ = writeln!(out, "{ctx}");
    type Op = fn(&FieldElem, &FieldElem) -> crate::Result<FieldElem>;
    let ops: [(&str, &str, Op); 2] = [
        ("addition", "+", FieldElem::add),
        ("multiplication", "*", FieldElem::mul),
    ];
    for (name, sym, op) in ops {
        let _ = writeln!(out, "\n{name}");
        let _ = write!(out, "{sym:>width$} |");
        for l in &labels {
            let _ = write!(out, " {l:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}", "-".repeat((width + 1) * (labels.len() + 1) + 1));
        for (a, la) in elems.iter().zip(&labels) {
            let _ = write!(out, "{la:>width$} |");
            for b in &elems {
                let v = op(a, b).expect("same field").to_string();
                let _ = write!(out, " {v:>width$}");
            }
            out.push('\n');
        }
    }
    out
}

pub const COUNTS_HEADER: &str =
    "m,q,periodic_count,preperiodic_count,fixed_count,cycle_length_multiset,gap,hasse_bound";

/// One CSV row per extension degree. Cycle lengths are `;`-separated within their column.
pub fn counts_csv(series: &CountSeries) -> String {
    let mut out = String::from(COUNTS_HEADER);
    out.push('\n');
    for r in &series.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6}",
            r.m,
            r.q,
            r.periodic_count,
            r.preperiodic_count,
            r.fixed_count,
            multiset(&r.cycle_lengths, ";"),
            r.gap,
            r.hasse_bound
        );
    }
    out
}

pub fn counted_set_name(c: CountedSet) -> &'static str {
    match c {
        CountedSet::Periodic => "periodic",
        CountedSet::Preperiodic => "preperiodic",
    }
}

pub fn fermat_text(r: &FltReport, orbits: Option<&[Vec<UnitRational>]>) -> String {
    let rows: [(&str, String); 9] = [
        ("a", r.a.to_string()),
        ("p", r.p.to_string()),
        ("fixed points of T_a^p", r.total_fixed_of_t_a_pow_p.to_string()),
        ("fixed by T_a", r.fixed_of_t_a.to_string()),
        ("minimal period p points", r.minimal_period_p_points.to_string()),
        ("orbit_count", r.orbit_count.to_string()),
        ("quotient", r.quotient.to_string()),
        ("integer", yes_no(r.quotient_is_integer).to_string()),
        ("all periods exactly p", yes_no(r.all_periods_exact).to_string()),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 1;
    let mut out = String::new();
    for (k, v) in rows {
        let key = format!("{k}:");
        let _ = writeln!(out, "{key:<width$} {v}");
    }
    if let Some(orbits) = orbits {
        out.push_str("orbits:\n");
        for o in orbits {
            let pts: Vec<String> = o.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  {{{}}}", pts.join(", "));
        }
    }
    out
}

#[derive(Serialize)]
struct FermatJson<'a> {
    #[serde(flatten)]
    report: &'a FltReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbits: Option<Vec<Vec<String>>>,
}

pub fn fermat_json(r: &FltReport, orbits: Option<&[Vec<UnitRational>]>) -> String {
    let orbits = orbits.map(|os| os.iter().map(|o| o.iter().map(ToString::to_string).collect()).collect());
    to_json(&FermatJson { report: r, orbits })
}

pub fn sweep_text(result: &SweepResult, extended: Option<&[ExtendedRow]>) -> String {
    let mut out = String::from("p,m,n,c,injective,preperiodic\n");
    for row in &result.rows {
        let t = row.tuple;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            t.p,
            t.m,
            t.n,
            t.c,
            yes_no(row.injective),
            row.preperiodic_count
        );
    }
    let _ = writeln!(
        out,
        "result: {} ({} tuples, {} counterexamples)",
        if result.pass() { "PASS" } else { "FAIL" },
        result.rows.len(),
        result.counterexamples.len()
    );
    if let Some(rows) = extended {
        out.push_str("extended constants (c over F_{p^n}, reported only)\n");
        out.push_str("p,m,n,c_index,injective,preperiodic\n");
        for r in rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.p,
                r.m,
                r.n,
                r.constant_index,
                yes_no(r.injective),
                r.preperiodic_count
            );
        }
    }
    out
}

#[derive(Serialize)]
struct SweepRowJson {
    p: u64,
    m: u32,
    n: usize,
    c: u64,
    injective: bool,
    preperiodic: u64,
}

#[derive(Serialize)]
struct SweepJson {
    pass: bool,
    rows: Vec<SweepRowJson>,
    counterexamples: Vec<SweepRowJson>,
}

pub fn sweep_json(result: &SweepResult) -> String {
    let conv = |rows: &[crate::theorem::SweepRow]| {
        rows.iter()
            .map(|r| SweepRowJson {
                p: r.tuple.p,
                m: r.tuple.m,
                n: r.tuple.n,
                c: r.tuple.c,
                injective: r.injective,
                preperiodic: r.preperiodic_count,
            })
            .collect()
    };
    to_json(&SweepJson {
        pass: result.pass(),
        rows: conv(&result.rows),
        counterexamples: conv(&result.counterexamples),
    })
}

fn check_text(check: IsomorphismCheck) -> String {
    match check {
        IsomorphismCheck::Exhaustive { pairs } => format!("exhaustive over {pairs} pairs"),
        IsomorphismCheck::Sampled { pairs, seed } => format!("sampled {pairs} pairs (seed {seed:#x})"),
    }
}

pub fn isomorphism_text(a: &ExtFieldCtx, b: &ExtFieldCtx, iso: &FieldIsomorphism) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "source: {a}");
    let _ = writeln!(out, "target: {b}");
    let _ = writeln!(out, "x -> {}", iso.image_of_generator);
    let _ = writeln!(out, "check: {}", check_text(iso.check));
    let src = labels(a);
    let width = src.iter().map(String::len).max().unwrap_or(1);
    for (i, l) in src.iter().enumerate() {
        let _ = writeln!(out, "{l:<width$} -> {}", b.label(iso.map[i]));
    }
    out
}

#[derive(Serialize)]
struct CheckJson {
    kind: &'static str,
    pairs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct IsomorphismJson {
    source: FieldJson,
    target: FieldJson,
    generator_image: String,
    check: CheckJson,
    map: Vec<u64>,
    labels: Vec<[String; 2]>,
}

pub fn isomorphism_json(a: &ExtFieldCtx, b: &ExtFieldCtx, iso: &FieldIsomorphism) -> String {
    let check = match iso.check {
        IsomorphismCheck::Exhaustive { pairs } => CheckJson {
            kind: "exhaustive",
            pairs,
            seed: None,
        },
        IsomorphismCheck::Sampled { pairs, seed } => CheckJson {
            kind: "sampled",
            pairs,
            seed: Some(seed),
        },
    };
    to_json(&IsomorphismJson {
        source: FieldJson::of(a),
        target: FieldJson::of(b),
        generator_image: iso.image_of_generator.to_string(),
        check,
        map: iso.map.clone(),
        labels: iso
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| [a.label(i as u64), b.label(j)])
            .collect(),
    })
}

pub fn roots_text(roots: &[FieldElem]) -> String {
    roots.iter().map(|r| format!("{r}\n")).collect()
}

#[derive(Serialize)]
struct RootsJson {
    field: FieldJson,
    poly: String,
    roots: Vec<String>,
}

pub fn roots_json(ctx: &ExtFieldCtx, f: &IntPoly, roots: &[FieldElem]) -> String {
    to_json(&RootsJson {
        field: FieldJson::of(ctx),
        poly: f.to_string(),
        roots: roots.iter().map(ToString::to_string).collect(),
    })
}
