use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ffdyn").chain(args.iter().copied());
    let code = ffdyn::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

fn line_value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no {key:?} line in:\n{text}"))
        .trim()
}

/// Object keys at one indentation level of pretty-printed JSON, in first-appearance order.
fn keys_at_indent(text: &str, indent: usize) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for line in text.lines() {
        let rest = &line[line.len() - line.trim_start().len()..];
        if line.len() - rest.len() != indent || !rest.starts_with('"') {
            continue;
        }
        if let Some(end) = rest[1..].find("\":") {
            let key = rest[1..1 + end].to_string();
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    keys
}

#[test]
fn orbits_text_f9() {
    let out = ok(&[
        "orbits",
        "3",
        "2",
        "--map",
        "t^2+1",
        "--modulus",
        "x^2+x+2",
        "--format",
        "text",
    ]);
    assert_eq!(line_value(&out, "fixed:"), "1");
    assert_eq!(line_value(&out, "preperiodic:"), "6");
    assert_eq!(line_value(&out, "cycle lengths:"), "{1,2}");
    assert_eq!(line_value(&out, "injective:"), "no");
}

#[test]
fn orbits_text_f8() {
    let out = ok(&["orbits", "2", "3", "--map", "t^2+1"]);
    assert_eq!(line_value(&out, "preperiodic:"), "0");
    assert_eq!(line_value(&out, "cycle lengths:"), "{2,6}");
    assert_eq!(line_value(&out, "injective:"), "yes");
}

#[test]
fn dot_layout() {
    let out = ok(&["orbits", "2", "3", "--map", "t^2+1", "--format", "dot"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.first(), Some(&"digraph orbit {"));
    assert_eq!(lines.last(), Some(&"}"));
    assert!(out.ends_with("}\n"));
    assert!(!out.contains('\r'));
    assert_eq!(lines.len(), 2 + 8 + 8);
    assert_eq!(lines[1], "  \"0\";");
    assert_eq!(lines[8], "  \"x^2+x+1\";");
    assert!(lines.contains(&"  \"0\" -> \"1\";"));
    assert!(lines.contains(&"  \"1\" -> \"0\";"));
    assert!(lines.contains(&"  \"x\" -> \"x^2+1\";"));
    assert!(out.is_ascii());

    let f9 = ok(&[
        "orbits",
        "3",
        "2",
        "--map",
        "t^2+1",
        "--modulus",
        "x^2+x+2",
        "--format",
        "dot",
    ]);
    assert!(f9.lines().any(|l| l == "  \"2\" -> \"2\";"));
}

#[test]
fn dot_is_byte_stable() {
    let args = ["orbits", "5", "2", "--map", "t^3+2t+1", "--format", "dot"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn identity_dot_on_f2() {
    let out = ok(&["orbits", "2", "1", "--map", "t", "--format", "dot"]);
    assert_eq!(
        out,
        "digraph orbit {\n  \"0\";\n  \"1\";\n  \"0\" -> \"0\";\n  \"1\" -> \"1\";\n}\n"
    );
}

#[test]
fn json_key_order_and_report() {
    let out = ok(&[
        "orbits",
        "3",
        "2",
        "--map",
        "t^2+1",
        "--modulus",
        "x^2+x+2",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(keys_at_indent(&out, 2), ["field", "map", "nodes", "cycles", "report"]);
    assert_eq!(v["field"]["modulus"], "x^2+x+2");
    assert_eq!(v["map"], "t^2+1");
    assert_eq!(v["report"]["preperiodic"], 6);
    assert_eq!(v["report"]["fixed"], 1);

    let node = &v["nodes"][5];
    assert_eq!(
        keys_at_indent(&out, 6),
        ["label", "succ_label", "tail", "period", "cycle_id", "class"]
    );
    assert_eq!(node["label"], "x+2");
    assert_eq!(node["succ_label"], "0");
    assert_eq!(node["tail"], 3);
    assert_eq!(node["class"], "preperiodic");
    let report = &out[out.find("\"report\"").unwrap()..];
    assert_eq!(
        keys_at_indent(report, 4),
        ["fixed", "periodic", "preperiodic", "cycle_lengths", "max_tail"]
    );
    assert_eq!(
        keys_at_indent(&out[..out.find("\"map\"").unwrap()], 4),
        ["p", "n", "modulus"]
    );
}

#[test]
fn json_identity_and_f8() {
    let v: Value = serde_json::from_str(&ok(&["orbits", "3", "1", "--map", "t", "--format", "json"])).unwrap();
    assert_eq!(v["report"]["fixed"], 3);
    assert_eq!(v["cycles"], serde_json::json!([["0"], ["1"], ["2"]]));

    let v: Value = serde_json::from_str(&ok(&["orbits", "2", "3", "--map", "t^2+1", "--format", "json"])).unwrap();
    assert_eq!(v["report"]["cycle_lengths"], serde_json::json!([2, 6]));
}

#[test]
fn fermat_report() {
    let out = ok(&["fermat", "2", "3"]);
    assert_eq!(line_value(&out, "orbit_count:"), "2");
    assert_eq!(line_value(&out, "quotient:"), "2");
    assert_eq!(line_value(&out, "integer:"), "yes");

    let v: Value = serde_json::from_str(&ok(&["fermat", "3", "5", "--format", "json"])).unwrap();
    assert_eq!(v["orbit_count"], 48);
    assert_eq!(v["all_periods_exact"], true);
}

#[test]
fn fermat_orbit_listing() {
    let out = ok(&["fermat", "2", "3", "--orbits"]);
    assert!(out.contains("1/7"), "{out}");
    assert!(out.contains("6/7"), "{out}");
}

#[test]
fn counts_csv() {
    let out = ok(&["counts", "3", "3", "--map", "t^2+1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "m,q,periodic_count,preperiodic_count,fixed_count,cycle_length_multiset,gap,hasse_bound"
    );
    assert_eq!(lines.len(), 4);
    let row2: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&row2[..6], ["2", "9", "3", "6", "1", "1;2"]);
    for line in &lines[1..] {
        let f: Vec<u64> = line.split(',').take(4).map(|s| s.parse().unwrap()).collect();
        assert_eq!(f[2] + f[3], f[1]);
    }
}

#[test]
fn truncated_counts_warn_and_fail() {
    let (code, out, err) = run(&["counts", "65537", "3", "--map", "t^2+1"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 2);
    assert!(err.contains("m=1 of 3") && err.contains("65537^2"), "{err}");
}

#[test]
fn counts_preperiodic_set_changes_gap_only() {
    let a = ok(&["counts", "3", "2", "--map", "t^2+1"]);
    let b = ok(&["counts", "3", "2", "--map", "t^2+1", "--set", "preperiodic"]);
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.split(',').take(6).collect::<Vec<_>>().join(","))
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_ne!(a, b);
}

#[test]
fn check_theorem_passes() {
    let (code, out, _) = run(&["check-theorem"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"), "{out}");
    let (code, _, _) = run(&["check-theorem", "--primes", "7", "--m", "1", "--n", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn check_theorem_rejects_composite_prime() {
    let (code, _, err) = run(&["check-theorem", "--primes", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains('2'), "{err}");
}

#[test]
fn isomorphism_and_roots() {
    let out = ok(&[
        "isomorphism",
        "2",
        "3",
        "--modulus-a",
        "x^3+x+1",
        "--modulus-b",
        "x^3+x^2+1",
    ]);
    assert!(out.contains("exhaustive over 64 pairs"), "{out}");
    assert!(out
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["x", "->", "x+1"]));

    let roots = ok(&["roots", "3", "2", "--poly", "t^4-1", "--modulus", "x^2+x+2"]);
    assert_eq!(roots.lines().collect::<Vec<_>>(), ["1", "2", "x+2", "2x+1"]);
    assert_eq!(
        ok(&["roots", "2", "3", "--poly", "t^4-1"]).lines().collect::<Vec<_>>(),
        ["1"]
    );
}

#[test]
fn field_table_f4() {
    let out = ok(&["field-table", "2", "2"]);
    assert!(out.contains("x^2+x+1"));
    let mul_row = out.lines().rev().find(|l| l.starts_with("  x |")).unwrap();
    assert_eq!(
        mul_row.split_whitespace().collect::<Vec<_>>(),
        ["x", "|", "0", "x", "x+1", "1"]
    );
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, err) = run(&["orbits", "3", "2", "--map", "t", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bogus"), "{err}");
}

#[test]
fn malformed_polynomial_names_token_and_position() {
    let (code, _, err) = run(&["orbits", "3", "2", "--map", "t^2+*1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 5"), "{err}");
    assert!(err.contains("\"*\""), "{err}");
}

#[test]
fn reducible_modulus_is_compute_error() {
    let (code, out, err) = run(&["orbits", "3", "2", "--map", "t", "--modulus", "x^2+2x+1"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("reducible"), "{err}");
}

#[test]
fn non_prime_names_factor() {
    let (code, _, err) = run(&["field-table", "6", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains('2'), "{err}");
}

#[test]
fn config_file_fills_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# alternate F_9\nmodulus = x^2+x+2\nmap = t^2+1\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let v: Value = serde_json::from_str(&ok(&["--config", cfg, "orbits", "3", "2"])).unwrap();
    assert_eq!(v["report"]["preperiodic"], 6);

    let out = ok(&["--config", cfg, "orbits", "3", "2", "--map", "t", "--format", "text"]);
    assert_eq!(line_value(&out, "fixed:"), "9");
}

#[test]
fn config_unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "mapp = t\n").unwrap();
    let (code, _, err) = run(&["--config", cfg.to_str().unwrap(), "orbits", "3", "2"]);
    assert_ne!(code, 0);
    assert!(err.contains("mapp"), "{err}");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f8.dot");
    let (code, out, _) = run(&[
        "orbits",
        "2",
        "3",
        "--map",
        "t^2+1",
        "--format",
        "dot",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, ok(&["orbits", "2", "3", "--map", "t^2+1", "--format", "dot"]));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ffdyn");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let o = status(&["fermat", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("orbit_count"));

    assert_eq!(status(&["--nope"]).status.code(), Some(2));
    assert_eq!(status(&["orbits", "3", "2", "--map", "t^"]).status.code(), Some(2));
    assert_eq!(
        status(&["orbits", "3", "2", "--map", "t", "--modulus", "x^2+1+x+x"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(status(&["check-theorem"]).status.code(), Some(0));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
