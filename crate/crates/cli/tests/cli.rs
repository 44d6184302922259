use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn sectorfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sectorfact")).args(args).env_remove("SECTORFACT_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report on stdout")
}

#[test]
fn committed_fixtures_match_bundled() {
    let list = sectorfact(&["fixture"]);
    let names = String::from_utf8(list.stdout).unwrap();
    for n in names.lines() {
        let printed = sectorfact(&["fixture", n]).stdout;
        let on_disk = std::fs::read(fixture(n)).unwrap();
        assert!(printed == on_disk, "fixture {n} is stale");
    }
    assert_eq!(code(&sectorfact(&["fixture", "nope"])), 2);
}

#[test]
fn documented_examples() {
    let o = sectorfact(&["validate-category", "--in", &f("intcat6")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["valid"], true);

    let o = sectorfact(&["homotopy", "verify", "--cone", &f("unit"), "--m", "4", "--cases", "1000", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["details"]["certified"], 1000);
    assert_eq!(r["details"]["cases"], 1000);

    let o = sectorfact(&["sectors", "haag", "--net", &f("qubit4"), "--region", "2-3"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let haag = &r["details"]["regions"][0];
    assert_eq!(haag["region"], "[2,3]");
    assert_eq!(haag["holds"], true);
    assert_eq!(haag["bicommutant_dim"], haag["dual_dim"]);
}

#[test]
fn violations_exit_one() {
    let cases: Vec<Vec<String>> = vec![
        vec!["sectors".into(), "haag".into(), "--net".into(), f("qubit4-diag23"), "--region".into(), "2-3".into()],
        vec![
            "sectors".into(),
            "theorem311".into(),
            "--net".into(),
            f("qubit4"),
            "--family".into(),
            f("qubit4-unlocalized"),
        ],
        vec![
            "sectors".into(),
            "equivariance".into(),
            "--net".into(),
            f("collapse3"),
            "--family".into(),
            f("collapse-family"),
        ],
        vec![
            "geometry".into(),
            "disjoint".into(),
            "--a".into(),
            f("cospan-u1"),
            "--b".into(),
            f("cospan-utilde"),
            "--expect".into(),
            "true".into(),
        ],
        vec!["validate-category".into(), "--in".into(), f("intcat6"), "--assumptions".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = sectorfact(&a);
        assert_eq!(code(&o), 1, "{args:?}");
        assert_eq!(json(&o)["valid"], false);
    }
    let o = sectorfact(&["sectors", "theorem311", "--net", &f("qubit4"), "--family", &f("qubit4-unlocalized")]);
    assert_eq!(json(&o)["details"]["theorem"]["stopped_at"], "localization");
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"sites": 2, "local_dim": 2, "regions": [], "colour": 1}"#).unwrap();
    let bad = bad.display().to_string();
    for args in [
        vec!["sectors", "haag", "--net", bad.as_str()],
        vec!["sectors", "haag", "--net", "/nonexistent.json"],
        vec!["validate-category", "--in", bad.as_str()],
        vec!["sectors", "equivariance", "--net", &f("qubit4"), "--family", bad.as_str()],
        vec!["sectors", "haag", "--net", &f("qubit4"), "--region", "7-9"],
        vec!["sectors", "perp", "--net", &f("qubit4"), "--family", &f("qubit4")],
        vec!["sectors", "equivariance", "--net", &f("collapse3"), "--family", &f("qubit4-family")],
        vec!["homotopy", "verify", "--m", "3"],
        vec!["geometry", "project"],
        vec!["report", "render", "--in", &f("qubit4")],
        vec!["no-such-command"],
    ] {
        assert_eq!(code(&sectorfact(&args)), 2, "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_sectorfact"))
        .args(["homotopy", "section", "--cases", "2"])
        .env("SECTORFACT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn paper_refs_annotate_checks() {
    let dir = tempfile::tempdir().unwrap();
    let refs = dir.path().join("refs.json");
    std::fs::write(&refs, r#"{"haag_duality": "duality citation"}"#).unwrap();
    let o =
        sectorfact(&["sectors", "haag", "--net", &f("qubit4"), "--region", "2", "--paper-ref", refs.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks[0]["id"], "haag_duality");
    assert_eq!(checks[0]["paper_ref"], "duality citation");
    assert!(checks[1].get("paper_ref").is_none());
    std::fs::write(&refs, "[1, 2]").unwrap();
    assert_eq!(
        code(&sectorfact(&["sectors", "haag", "--net", &f("qubit4"), "--paper-ref", refs.to_str().unwrap()])),
        2
    );
}

#[test]
fn saved_reports_render_with_their_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let o = sectorfact(&["operad", "check", "--in", &f("intcat6"), "--bound", "2", "--out", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("operad check: PASS"));
    let o = sectorfact(&["sectors", "haag", "--net", &f("qubit4-diag23"), "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let o = sectorfact(&["report", "render", "--in", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("[pass] operad_axioms"));
    let o = sectorfact(&["report", "render", "--in", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stdout).unwrap().contains("[FAIL] haag_duality [2,3]: dimension mismatch: 4 vs 16"));
}

#[test]
fn reports_are_identical_across_runs_and_thread_counts() {
    let runs: &[&[&str]] = &[
        &["homotopy", "verify", "--cases", "200", "--seed", "11", "--audit"],
        &["geometry", "witness", "--cases", "20", "--seed", "5"],
        &["geometry", "project", "--cases", "20", "--samples", "5", "--seed", "5"],
        &["homotopy", "section", "--cases", "50", "--seed", "5"],
        &["sectors", "equivariance", "--net", "QUBIT4"],
    ];
    let q4 = f("qubit4");
    for args in runs {
        let args: Vec<&str> = args.iter().map(|a| if *a == "QUBIT4" { q4.as_str() } else { a }).collect();
        let outputs: Vec<Vec<u8>> = ["1", "2", "4"]
            .iter()
            .map(|t| {
                let o = Command::new(env!("CARGO_BIN_EXE_sectorfact"))
                    .args(&args)
                    .env("SECTORFACT_THREADS", t)
                    .output()
                    .unwrap();
                assert_eq!(code(&o), 0, "{args:?}");
                o.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?} differs between runs");
    }
}

/// Seeded corruptions of a valid category file with the exit code each
/// must produce.
#[derive(Debug, Clone)]
enum Fault {
    DropComposite(usize),
    DropOrthPair(usize),
    RetargetComposite(usize, usize),
    UnknownMorphism(usize),
    Truncate(usize),
}

fn fault() -> impl Strategy<Value = Fault> {
    prop_oneof![
        any::<usize>().prop_map(Fault::DropComposite),
        any::<usize>().prop_map(Fault::DropOrthPair),
        (any::<usize>(), any::<usize>()).prop_map(|(a, b)| Fault::RetargetComposite(a, b)),
        any::<usize>().prop_map(Fault::UnknownMorphism),
        any::<usize>().prop_map(Fault::Truncate),
    ]
}

fn inject(base: &Value, fault: &Fault) -> (String, i32) {
    let mut v = base.clone();
    let compose = v["compose"].as_array_mut().unwrap();
    let n = compose.len();
    match *fault {
        Fault::DropComposite(i) => {
            compose.remove(i % n);
            (v.to_string(), 1)
        }
        Fault::DropOrthPair(i) => {
            let orth = v["orth"].as_array_mut().unwrap();
            let k = orth.len();
            orth.remove(i % k);
            (v.to_string(), 1)
        }
        Fault::RetargetComposite(i, j) => {
            let ids: Vec<Value> = base["morphisms"].as_array().unwrap().iter().map(|m| m["id"].clone()).collect();
            let old = compose[i % n]["result"].clone();
            let others: Vec<&Value> = ids.iter().filter(|m| **m != old).collect();
            compose[i % n]["result"] = others[j % others.len()].clone();
            (v.to_string(), 1)
        }
        Fault::UnknownMorphism(i) => {
            compose[i % n]["g"] = Value::from("no-such-arrow");
            (v.to_string(), 2)
        }
        Fault::Truncate(i) => {
            let s = v.to_string();
            (s[..i % (s.len() - 1)].to_string(), 2)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exit_codes_under_fault_injection(fault in fault()) {
        let base: Value = serde_json::from_str(&std::fs::read_to_string(fixture("intcat6")).unwrap()).unwrap();
        let (text, expected) = inject(&base, &fault);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cat.json");
        std::fs::write(&p, text).unwrap();
        let o = sectorfact(&["validate-category", "--in", p.to_str().unwrap()]);
        prop_assert_eq!(code(&o), expected, "{:?}", fault);
        if expected == 1 {
            let r = json(&o);
            let violations = r["details"]["category"]["violations"].as_array().unwrap();
            prop_assert!(!violations.is_empty() && !violations[0]["witness"].as_array().unwrap().is_empty());
        }
    }
}
