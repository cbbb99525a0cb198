use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn pathcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcalc"))
        .args(args)
        .env_remove("PATHCALC_BASIS_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1, "one-line error: {text}");
    serde_json::from_str(text.trim_end()).expect("stderr is JSON")
}

fn write(dir: &Path, name: &str, v: Value) -> String {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn dims_tables() {
    let out = pathcalc(&["dims", "--vertices", "a,b,c", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["lambda"], json!([3, 9, 27]));
    assert_eq!(v["regular"], json!([3, 6, 12]));

    let v = stdout_json(&pathcalc(&["dims", "--vertices", "a", "--max-degree", "2"]));
    assert_eq!(v["lambda"], json!([1, 1, 1]));
    assert_eq!(v["regular"], json!([1, 0, 0]));

    let v = stdout_json(&pathcalc(&["dims", "--vertices", "a,b", "--max-degree", "3"]));
    assert_eq!(v["lambda"], json!([2, 4, 8, 16]));
    assert_eq!(v["regular"], json!([2, 2, 2, 2]));
}

#[test]
fn dims_over_cap() {
    let out = pathcalc(&["--basis-cap", "100", "dims", "--vertices", "a,b,c", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["code"], 4);

    let out = Command::new(env!("CARGO_BIN_EXE_pathcalc"))
        .args(["dims", "--vertices", "a,b,c", "--max-degree", "4"])
        .env("PATHCALC_BASIS_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn apply_examples() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write(
        dir.path(),
        "ab.json",
        json!({"vertices": ["a", "b"], "terms": [{"path": ["a", "b"], "coeff": "1"}]}),
    );
    let boundary = write(
        dir.path(),
        "boundary.json",
        json!({"kind": "boundary", "weighting": {"a": "1", "b": "2"}}),
    );
    let out = pathcalc(&["apply", "--op", &boundary, "--chain", &ab]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["terms"],
        json!([{"path": ["a"], "coeff": "-2"}, {"path": ["b"], "coeff": "1"}])
    );

    let s0 = write(dir.path(), "s0.json", json!({"kind": "degeneracy", "index": 0}));
    let out = pathcalc(&["apply", "--op", &s0, "--chain", &ab]);
    assert_eq!(
        stdout_json(&out)["terms"],
        json!([{"path": ["a", "a", "b"], "coeff": "1"}])
    );

    let aba = write(
        dir.path(),
        "aba.json",
        json!({"vertices": ["a", "b", "c"], "terms": [{"path": ["a", "b", "a"], "coeff": "1"}]}),
    );
    let face = write(
        dir.path(),
        "face.json",
        json!({"kind": "regular_face", "index": 1, "weighting": {"a": "1", "b": "2", "c": "3"}}),
    );
    let out = pathcalc(&["apply", "--op", &face, "--chain", &aba]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["terms"], json!([]));
}

#[test]
fn apply_errors() {
    let dir = tempfile::tempdir().unwrap();
    let aab = write(
        dir.path(),
        "aab.json",
        json!({"vertices": ["a", "b"], "terms": [{"path": ["a", "a", "b"], "coeff": "1"}]}),
    );
    let face = write(
        dir.path(),
        "face.json",
        json!({"kind": "regular_face", "index": 0, "weighting": {"a": "1", "b": "1"}}),
    );
    let out = pathcalc(&["apply", "--op", &face, "--chain", &aab]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "domain");

    let out = pathcalc(&["apply", "--op", &face, "--chain", &aab, "--vertices", "a,b,c"]);
    assert_eq!(out.status.code(), Some(2));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{not json").unwrap();
    let out = pathcalc(&["apply", "--op", broken.to_str().unwrap(), "--chain", &aab]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "parse");
}

#[test]
fn matrix_exports() {
    let dir = tempfile::tempdir().unwrap();
    let chi_a = write(
        dir.path(),
        "chi.json",
        json!({"kind": "boundary", "weighting": {"a": "1", "b": "0"}}),
    );
    let out = pathcalc(&["matrix", "--op", &chi_a, "--degree", "1", "--vertices", "a,b"]);
    assert_eq!(out.status.code(), Some(0));
    let m = stdout_json(&out);
    assert_eq!((m["rows"].clone(), m["cols"].clone()), (json!(2), json!(4)));
    // aa ↦ a − a cancels, leaving ab ↦ b and ba ↦ −b
    assert_eq!(m["entries"], json!([[1, 1, "1"], [1, 2, "-1"]]));
    assert_eq!(m["row_basis"], json!(["a", "b"]));

    let zero = write(
        dir.path(),
        "zero.json",
        json!({"kind": "boundary", "weighting": {"a": "0", "b": "0"}}),
    );
    let out = pathcalc(&["matrix", "--op", &zero, "--degree", "2", "--vertices", "a,b"]);
    assert_eq!(stdout_json(&out)["entries"], json!([]));

    let f = json!({"a": "2", "b": "-1/3"});
    let d = write(dir.path(), "d.json", json!({"kind": "coboundary", "weighting": f}));
    let p = write(dir.path(), "p.json", json!({"kind": "boundary", "weighting": f}));
    let csv = |op: &str, n: &str| {
        pathcalc(&[
            "matrix",
            "--op",
            op,
            "--degree",
            n,
            "--vertices",
            "a,b",
            "--format",
            "csv",
        ])
        .stdout
    };
    let parse = |bytes: Vec<u8>| -> Vec<(usize, usize, String)> {
        let text = String::from_utf8(bytes).unwrap();
        let mut v: Vec<_> = text
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].to_owned())
            })
            .collect();
        v.sort();
        v
    };
    let dm = parse(csv(&d, "0"));
    let mut pt: Vec<_> = parse(csv(&p, "1")).into_iter().map(|(r, c, s)| (c, r, s)).collect();
    pt.sort();
    assert!(!dm.is_empty());
    assert_eq!(dm, pt);
}

#[test]
fn matrix_space_selection() {
    let dir = tempfile::tempdir().unwrap();
    let face = write(
        dir.path(),
        "face.json",
        json!({"vertices": ["a", "b", "c"], "operator": {"kind": "weighted_face", "index": 1, "weighting": {"a": "1", "b": "2", "c": "3"}}}),
    );
    let full = stdout_json(&pathcalc(&["matrix", "--op", &face, "--degree", "2"]));
    assert_eq!(full["cols"], 27);
    let reg = pathcalc(&["matrix", "--op", &face, "--degree", "2", "--space", "regular"]);
    assert_eq!(reg.status.code(), Some(0));
    let reg = stdout_json(&reg);
    assert_eq!((reg["rows"].clone(), reg["cols"].clone()), (json!(6), json!(12)));
    assert_eq!(reg["space"], "regular");

    let rface = write(
        dir.path(),
        "rface.json",
        json!({"kind": "regular_face", "index": 1, "weighting": {"a": "1", "b": "2"}}),
    );
    let out = pathcalc(&[
        "matrix",
        "--op",
        &rface,
        "--degree",
        "2",
        "--space",
        "full",
        "--vertices",
        "a,b",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = pathcalc(&["matrix", "--op", &face, "--degree", "2", "--vertices", "a,b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let op = write(
        dir.path(),
        "op.json",
        json!({"kind": "coboundary", "weighting": {"a": "1/2", "b": "-3", "c": "7"}}),
    );
    let run = |threads: &str| {
        pathcalc(&[
            "--threads",
            threads,
            "matrix",
            "--op",
            &op,
            "--degree",
            "3",
            "--vertices",
            "a,b,c",
        ])
        .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
}

#[test]
fn verify_suites() {
    let out = pathcalc(&[
        "verify",
        "--suite",
        "lemmas21",
        "--vertices",
        "a,b",
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["config"]["suite"], "lemmas21");

    let out = pathcalc(&[
        "verify",
        "--suite",
        "main2",
        "--vertices",
        "a,b",
        "--max-degree",
        "2",
        "--trials",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let diag = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "main2.ii.diagonal")
        .unwrap();
    // V ∖ {a, b} is empty, so the inner i = 1 scalar vanishes
    assert_eq!(diag["measured"]["scalars"]["ab"]["i=1"], "0");

    let out = pathcalc(&["verify", "--suite", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["code"], 2);
}

#[test]
fn verify_failure_exit_code() {
    let out = pathcalc(&[
        "verify",
        "--suite",
        "structural",
        "--vertices",
        "a,b",
        "--max-degree",
        "2",
        "--trials",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["result"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["structural.newton_leibniz.coboundary"]);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "usual",
        "--vertices",
        "a,b",
        "--max-degree",
        "3",
        "--seed",
        "7",
    ];
    let a = pathcalc(&args);
    let b = pathcalc(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn counterexample_search() {
    let out = pathcalc(&[
        "counterexample",
        "--identity",
        "reg-face-swap-adjacent",
        "--vertices",
        "a,b",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let w = stdout_json(&out);
    assert_eq!(w["path"], "aba");
    assert_eq!((w["lhs"].clone(), w["rhs"].clone()), (json!("0"), json!("-a")));

    let out = pathcalc(&[
        "counterexample",
        "--identity",
        "reg-coface-equal",
        "--vertices",
        "a,b,c",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["found"], true);

    let out = pathcalc(&[
        "counterexample",
        "--identity",
        "reg-face-swap-adjacent",
        "--vertices",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["found"], false);

    let out = pathcalc(&["counterexample", "--identity", "reg-nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let out = pathcalc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = pathcalc(&["dims"]);
    assert_eq!(out.status.code(), Some(2));

    let out = pathcalc(&["dims", "--vertices", "a,a"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(pathcalc(&["--help"]).status.code(), Some(0));
}
