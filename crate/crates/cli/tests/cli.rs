use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

fn submin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submin"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_verdicts() {
    let tm = json_of(&submin(&["analyze", path_str(&corpus("thue_morse.sub"))]));
    assert_eq!(tm["verdict"]["verdict"], "MINIMAL");
    assert_eq!(tm["verdict"]["evidence"][0]["kind"], "E1");
    assert_eq!(tm["timing"], Value::Null);

    let single = json_of(&submin(&[
        "analyze",
        path_str(&corpus("single_point.sub")),
    ]));
    assert_eq!(single["verdict"]["single_periodic_orbit"], true);

    let swap = json_of(&submin(&["minimal", path_str(&corpus("swap.sub"))]));
    assert_eq!(swap["verdict"]["verdict"], "NOT_MINIMAL");
    assert_eq!(
        swap["verdict"]["evidence"][0]["data"]["orbits"],
        serde_json::json!(["a", "b"])
    );
}

#[test]
fn analyze_is_byte_identical_across_runs() {
    let path = corpus("chacon.sub");
    let a = submin(&["analyze", path_str(&path)]);
    let b = submin(&["analyze", path_str(&path)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = json_of(&submin(&[
        "analyze",
        "--timing",
        path_str(&corpus("fibonacci.sub")),
    ]));
    assert!(out["timing"].is_object());
}

#[test]
fn sectional_subcommands() {
    let file = corpus("single_point.sub");
    let f = path_str(&file);
    let c = json_of(&submin(&["classify", f]));
    assert_eq!(c["A_l"], serde_json::json!(["0"]));
    assert_eq!(c["A_s"], serde_json::json!(["1"]));
    let t = json_of(&submin(&["tame", f]));
    assert_eq!(t["tame"], false);
    assert_eq!(t["isolation"]["0"]["witness_pad"], "1");
    let l = json_of(&submin(&["lprimitive", f]));
    assert_eq!(l["l_primitive"]["l_primitive"], true);
    let d = json_of(&submin(&["dl-check", "--k", "1", "--horizon", "8", f]));
    assert_eq!(d["damanik_lenz"]["cond3_bounded"], false);
    assert_eq!(d["damanik_lenz"]["cond3_counterexample"], "0");
    let fx = json_of(&submin(&["fixpoint", path_str(&corpus("chacon.sub"))]));
    assert_eq!(fx["seed"]["middle"], "");
}

#[test]
fn expand_language_and_complexity() {
    let tm = corpus("thue_morse.sub");
    let e = json_of(&submin(&["expand", path_str(&tm), "0", "2"]));
    assert_eq!(e["word"], "0110");
    let lang = json_of(&submin(&[
        "language",
        "--k",
        "2",
        path_str(&corpus("single_point.sub")),
    ]));
    assert_eq!(lang["lengths"][1]["words"], serde_json::json!(["01", "11"]));
    let p = json_of(&submin(&["complexity", "--k", "4", path_str(&tm)]));
    assert_eq!(p["counts"], serde_json::json!([2, 4, 6, 10]));
    assert_eq!(p["stabilized_at"], Value::Null);
}

#[test]
fn make_periodic_round_trip() {
    let one = json_of(&submin(&["make-periodic", "1"]));
    assert_eq!(one["rules"], "1 -> 11\n");
    let ab = json_of(&submin(&["make-periodic", "ab"]));
    assert_eq!(ab["verdict"], "MINIMAL");
    assert_eq!(ab["single_periodic_orbit"], true);
}

#[test]
fn batch_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus("thue_morse.sub"), dir.path().join("tm.sub")).unwrap();
    fs::write(dir.path().join("broken.sub"), "a ->\n").unwrap();
    let out = submin(&["batch", "--csv", path_str(dir.path())]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "name,|A|,|A_l|,tame,l_primitive,r,verdict,evidence"
    );
    assert!(lines[1].starts_with("broken.sub,") && lines[1].contains("ERROR"));
    assert_eq!(lines[2], "tm.sub,2,2,true,true,1,MINIMAL,E1");

    let j = json_of(&submin(&["batch", "--sequential", path_str(dir.path())]));
    assert_eq!(j["summary"].as_array().unwrap().len(), 2);
    assert_eq!(j["reports"][0], Value::Null);
    assert_eq!(j["reports"][1]["verdict"]["verdict"], "MINIMAL");
}

#[test]
fn empty_batch_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = submin(&["batch", "--csv", path_str(dir.path())]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sub");
    fs::write(&bad, "a -> ab\nb ->\n").unwrap();
    assert_eq!(submin(&["analyze", path_str(&bad)]).status.code(), Some(2));
    let flat = dir.path().join("flat.sub");
    fs::write(&flat, "a -> b\nb -> a\n").unwrap();
    assert_eq!(
        submin(&["classify", path_str(&flat)]).status.code(),
        Some(3)
    );
    let missing = dir.path().join("missing.sub");
    let out = submin(&["analyze", path_str(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.sub"));
    // non-minimal verdicts still exit 0
    assert_eq!(
        submin(&["minimal", path_str(&corpus("baa.sub"))])
            .status
            .code(),
        Some(0)
    );
}
