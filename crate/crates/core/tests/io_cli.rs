use petaluma::cli::run_with;
use petaluma::invariants::alexander_polynomial;
use petaluma::io::{emit_pd, load_results, parse_link, parse_pd, parse_perm, IoError, RecordFilter};
use petaluma::petal::petal_to_diagram;
use petaluma::sampling::{uniform_heights, SeededStream};
use petaluma::verify::{fixture, FIXTURES};
use petaluma::PetalPermutation;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["petaluma"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn every_fixture_round_trips() {
    for (name, text) in FIXTURES {
        let d = parse_pd(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_pd(&emit_pd(&d)).unwrap(), d, "{name}");
    }
    assert_eq!(parse_pd(fixture("3_1").unwrap()).unwrap().crossing_count(), 3);
}

#[test]
fn petal_diagrams_round_trip_through_pd() {
    let mut s = SeededStream::new(31, 0);
    for p in [3, 5, 7, 9] {
        let pi = PetalPermutation::new(uniform_heights(p, &mut s)).unwrap();
        let d = petal_to_diagram(&pi);
        let e = parse_pd(&emit_pd(&d)).unwrap();
        assert_eq!(e.crossing_count(), d.crossing_count());
        assert_eq!(e.gauss_code().to_string(), d.canonical().gauss_code().to_string());
        assert_eq!(alexander_polynomial(&e).unwrap(), alexander_polynomial(&d).unwrap());
    }
}

#[test]
fn malformed_pd() {
    assert!(matches!(parse_pd(""), Err(IoError::Syntax(_))));
    assert!(matches!(parse_pd("X[1,2,3,4"), Err(IoError::Syntax(_))));
    // label 7 appears once, label 6 once
    assert!(matches!(parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,7,3]"), Err(IoError::InconsistentCode(_))));
    assert!(matches!(parse_pd("X[1,1,1,1]"), Err(IoError::InconsistentCode(_))));
}

#[test]
fn literals_round_trip() {
    for text in ["(1,3,5,2,4)", "(1)", "(2,6,10,4,9,1,3,11,8,7,5)"] {
        assert_eq!(parse_perm(text).unwrap().to_string(), text);
    }
    assert_eq!(parse_perm(" 1, 3,5 ,2,4 ").unwrap().to_string(), "(1,3,5,2,4)");
    let l = parse_link("(1,3,2,4; 1,1)").unwrap();
    assert_eq!(parse_link(&l.to_string()).unwrap(), l);
    for bad in ["", "(1,2)", "(1,1,3)", "(a,b,c)", "(1,2,3", "(1,3,2,4; 2,1)"] {
        assert!(parse_perm(bad).is_err() || parse_link(bad).is_err(), "{bad}");
    }
}

#[test]
fn documented_examples() {
    let (code, out, _) = cli(&["invariants", "(1,3,5,2,4)"]);
    assert_eq!(code, 0);
    assert!(out.contains("c2: 1") && out.contains("alexander: t - 1 + t^-1"), "{out}");
    let (code, out, _) = cli(&["--no-save", "enumerate", "--p", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("0  110") && out.contains("1  10"), "{out}");
    let (code, out, _) = cli(&["smooth", "(2,6,10,4,9,1,3,11,8,7,5)", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("m: 2") && out.contains("(4,9,1,3 | 8,7,5,2,6,10)"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["--help"]).0, 0);
    assert_eq!(cli(&["frobnicate"]).0, 1);
    assert_eq!(cli(&["invariants", "(1,1,3)"]).0, 1);
    assert_eq!(cli(&["invariants", "((("]).0, 1);
    assert_eq!(cli(&["smooth", "(1,2,3)", "7"]).0, 1);
    assert_eq!(cli(&["lk", "(1,2,3; 1,1)"]).0, 1);
    assert_eq!(cli(&["lo", "1,0,2"]).0, 1);
    assert_eq!(cli(&["--no-save", "enumerate", "--p", "4"]).0, 1);
    assert_eq!(cli(&["--no-save", "sample", "--kind", "lk_link", "--n", "3", "--samples", "10"]).0, 1);
    assert_eq!(cli(&["petalize", "--pd", "/nonexistent/file.pd"]).0, 1);
    assert_eq!(cli(&["verify", "--only", "99"]).0, 1);
    let (code, out, _) = cli(&["verify", "--only", "1,3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[PASS]  1.") && out.contains("2 of 2 checks passed"));
}

#[test]
fn petalize_verify_on_a_fixture_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("5_2.pd");
    std::fs::write(&path, fixture("5_2").unwrap()).unwrap();
    let (code, out, err) = cli(&["--json", "petalize", "--pd", path.to_str().unwrap(), "--verify"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verify"]["ok"], true);
    assert!(v["petals"].as_u64().unwrap() <= 9);
}

#[test]
fn sample_json_is_deterministic_and_logged() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.ndjson");
    let csv = dir.path().join("h.csv");
    let args = [
        "--json", "--results", log.to_str().unwrap(), "sample", "--kind", "c2_knot", "--n", "4", "--samples", "500",
        "--seed", "9", "--threads", "3", "--csv", csv.to_str().unwrap(),
    ];
    let (c1, a, _) = cli(&args);
    let (c2, b, err) = cli(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(err.contains("already logged"), "{err}");
    let loaded = load_results(&log, &RecordFilter { subcommand: Some("sample".into()), ..Default::default() }).unwrap();
    assert_eq!(loaded.records.len(), 2);
    assert_eq!(loaded.records[0].hash, loaded.records[1].hash);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v, loaded.records[0].payload);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("value,count\n"));
    let total: u64 = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 500);
    let (code, out, _) = cli(&["--results", log.to_str().unwrap(), "results", "--param", "seed=9"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
}
