use noncircular::cli::format::parse_rational;
use noncircular::cli::{run, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("noncircular").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn arcsin_two_terms_text() {
    let (code, out, _) = call(&["pi", "--method", "arcsin", "--terms", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("2 + 1/3 + 3/20"));
    assert!(out.contains("149/60"));
}

#[test]
fn json_has_exact_keys_and_outward_decimals() {
    let (code, out, _) = call(&[
        "pi",
        "--method",
        "archimedes",
        "--doublings",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["elapsed_ms", "hi", "lo", "method", "width", "work"]);
    let dec = |k: &str| parse_rational(v[k]["decimal"].as_str().unwrap()).unwrap();
    let exact = |k: &str| parse_rational(v[k]["exact"].as_str().unwrap()).unwrap();
    assert!(dec("lo") <= exact("lo"));
    assert!(dec("hi") >= exact("hi"));
    assert_eq!(v["work"], 6);
}

#[test]
fn all_prints_intersection_and_digits() {
    let (code, out, _) = call(&["pi", "--method", "all", "--target-width", "1e-6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.contains("work=")).count(), 4);
    let digits = out
        .lines()
        .find_map(|l| l.strip_prefix("guaranteed digits "))
        .unwrap();
    assert!(digits.starts_with("3.14159"), "{digits}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["pi", "--method", "arcsin"][..],
        &[
            "pi",
            "--method",
            "arcsin",
            "--terms",
            "3",
            "--doublings",
            "2",
        ],
        &["pi", "--method", "cosroot", "--terms", "3"],
        &["pi", "--method", "all", "--terms", "3"],
        &["pi", "--method", "machin", "--terms", "3"],
        &["pi", "--method", "arcsin", "--target-width", "abc"],
        &["table", "--method", "all", "--max-work", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(call(args).0, EXIT_USAGE, "{args:?}");
    }
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn table_csv_is_deterministic() {
    let args = ["table", "--method", "quadrature", "--max-work", "64"];
    let (code, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("method,work,lo,hi,width"));
    let works: Vec<u64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(works, [1, 2, 4, 8, 16, 32, 64]);
}

#[test]
fn table_rows_narrow() {
    let (_, out, _) = call(&[
        "table",
        "--method",
        "archimedes",
        "--max-work",
        "10",
        "--schedule",
        "linear",
    ]);
    let widths: Vec<_> = out
        .lines()
        .skip(1)
        .map(|l| parse_rational(l.split(',').nth(4).unwrap()).unwrap())
        .collect();
    assert_eq!(widths.len(), 11);
    assert!(widths.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn csv_for_all_ends_with_intersection() {
    let (_, out, _) = call(&[
        "pi",
        "--method",
        "all",
        "--target-width",
        "1/1000",
        "--format",
        "csv",
    ]);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("intersection,"));
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn demo_formats() {
    let (code, text, _) = call(&["demo-circularity"]);
    assert_eq!(code, EXIT_OK);
    for section in ["CYCLE", "PARAMETRIC-DEAD-END", "REPAIR"] {
        assert!(text.contains(section));
    }
    let (_, machine, _) = call(&["demo-circularity", "--machine"]);
    assert!(machine.contains("edge.cycle=4->1"));
    let (_, json, _) = call(&["demo-circularity", "--format", "json"]);
    let v: Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["chain"].as_array().unwrap().len(), 4);
    assert_eq!(v["cycle_edge"]["from"], 4);
}

#[test]
fn inconsistency_exit_code_is_distinct() {
    assert_ne!(EXIT_INCONSISTENT, EXIT_USAGE);
    assert_ne!(EXIT_INCONSISTENT, EXIT_OK);
}
