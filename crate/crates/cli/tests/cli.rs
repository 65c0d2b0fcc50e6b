use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn gch() -> Command {
    let mut c = Command::cargo_bin("gch").unwrap();
    c.env_remove("AFFINE_GCH_CACHE").arg("--quiet");
    c
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("valid JSON on stdout")
}

type Coeffs = Vec<(Vec<i64>, Vec<(i64, i64)>)>;

fn coeffs(v: &Value) -> Coeffs {
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let w = e["weight"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            let p = e["poly"]["terms"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| (t[0].as_i64().unwrap(), t[1].as_i64().unwrap()))
                .collect();
            (w, p)
        })
        .collect()
}

#[test]
fn branch_sl2_level_one() {
    let out = gch().args(["branch", "--type", "A", "--rank", "1", "--level", "1", "--weight", "4"]).output().unwrap();
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["type"], "A");
    assert_eq!(v["basis"]["family"], "weyl");
    assert_eq!(v["basis"]["level"], 2);
    assert_eq!(coeffs(&v), vec![(vec![0], vec![(4, 1)]), (vec![2], vec![(2, 1), (3, 1)]), (vec![4], vec![(0, 1)])]);
}

#[test]
fn orbit_shift() {
    gch()
        .args(["orbit", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "0", "--mu", "4"])
        .assert()
        .success()
        .stdout("4\n");
    gch()
        .args(["orbit", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "0", "--mu", "1"])
        .assert()
        .success()
        .stdout("\"none\"\n");
    gch()
        .args(["--format", "csv", "orbit", "--type", "A", "--rank", "1", "--level", "2", "--lambda", "0", "--mu", "-4"])
        .assert()
        .success()
        .stdout(predicate::str::is_match("^[0-9]+\n$").unwrap());
}

#[test]
fn weyl_character_latex() {
    gch()
        .args(["--format", "latex", "char", "--family", "weyl", "--type", "A", "--rank", "1", "--weight", "2"])
        .assert()
        .success()
        .stdout("(1) \\mathrm{ch}\\, V_{2\\varpi} + (q) \\mathrm{ch}\\, V_{0}\n");
}

#[test]
fn thin_character_csv() {
    let out = gch()
        .args(["--format", "csv", "char", "--family", "thin", "--type", "A", "--rank", "1", "--weight", "-2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,q,coeff"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows, ["-2,0,1", "0,0,1", "2,0,1", "0,1,1"]);
}

#[test]
fn expand_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = gch()
        .args(["char", "--family", "weyl", "--type", "A", "--rank", "1", "--level", "1", "--weight", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    std::fs::write(&path, &out.stdout).unwrap();
    let direct =
        gch().args(["branch", "--type", "A", "--rank", "1", "--level", "1", "--weight", "4"]).output().unwrap();
    let via_file =
        gch().args(["expand", "--basis", "weyl", "--basis-level", "2", "--input"]).arg(&path).output().unwrap();
    assert!(via_file.status.success());
    assert_eq!(coeffs(&json(&direct.stdout)), coeffs(&json(&via_file.stdout)));
}

#[test]
fn kostka_reports_lacing() {
    let out = gch()
        .args(["kostka", "--type", "A", "--rank", "1", "--level", "1", "--factor", "1:1", "--factor", "1:1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["simply_laced"], true);
    assert_eq!(coeffs(&v), vec![(vec![0], vec![(0, 1)]), (vec![2], vec![(0, 1)])]);

    let out = Command::cargo_bin("gch")
        .unwrap()
        .env_remove("AFFINE_GCH_CACHE")
        .args(["kostka", "--type", "C", "--rank", "2", "--level", "1", "--factor", "1:1,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out.stdout)["simply_laced"], false);
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    gch().args(["char", "--family", "weyl", "--type", "Z", "--rank", "1", "--weight", "2"]).assert().code(2);
    gch().args(["char", "--family", "weyl", "--type", "A", "--rank", "2", "--weight", "2"]).assert().code(2);
    gch().args(["char", "--family", "weyl", "--type", "A", "--rank", "1", "--weight", "x"]).assert().code(2);
    gch().args(["char", "--family", "thick", "--type", "A", "--rank", "1", "--weight", "0"]).assert().code(2);
    gch().args(["expand", "--basis", "weyl", "--basis-level", "2"]).assert().code(2);
    gch().args(["frobnicate"]).assert().code(2);
}

#[test]
fn precondition_violations_exit_3() {
    gch()
        .args(["branch", "--type", "A", "--rank", "1", "--level", "1", "--weight", "-2"])
        .assert()
        .code(3)
        .stderr(predicate::str::contains("error"));
}

#[test]
fn verify_exit_codes() {
    gch()
        .args(["--format", "csv", "verify", "--suite", "sl2-tables"])
        .assert()
        .success()
        .stdout(predicate::str::contains("P1,pass"));
    gch().args(["verify", "--suite", "kostka"]).assert().code(1);
    gch().args(["verify", "--suite", "nonesuch"]).assert().code(2);
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args =
        ["char", "--family", "thick", "--type", "A", "--rank", "2", "--level", "1", "--weight", "1,1", "--qmax", "3"];
    let cold = gch().arg("--cache-dir").arg(dir.path()).args(args).output().unwrap();
    assert!(cold.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = gch().env("AFFINE_GCH_CACHE", dir.path()).args(args).output().unwrap();
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["char", "--family", "weyl", "--type", "A", "--rank", "1", "--weight", "3"];
    let cold = gch().arg("--cache-dir").arg(dir.path()).args(args).output().unwrap();
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "not json").unwrap();
    let again = gch().arg("--cache-dir").arg(dir.path()).args(args).output().unwrap();
    assert!(again.status.success());
    assert!(String::from_utf8_lossy(&again.stderr).contains("warning"));
    assert_eq!(cold.stdout, again.stdout);
}
