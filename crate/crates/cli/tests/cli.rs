use std::path::Path;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env_remove("HECKE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn core_and_weight() {
    let o = hecke(&["core", "--e", "2", "--partition", "3,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "core: 1  weight: 2\n");
    let o = hecke(&["core", "--e", "3", "--partition", "2^2,1"]);
    assert_eq!(stdout(&o), "core: 2  weight: 1\n");
}

#[test]
fn mullineux_in_bracket_notation() {
    let o = hecke(&["mullineux", "--e", "4", "--partition", "<3_5>", "--principal-5e"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "<1_2,2_2,3>\n");
    // the map is the identity for e = 2
    let o = hecke(&["mullineux", "--e", "2", "--partition", "4,1"]);
    assert_eq!(stdout(&o), "4,1\n");
    let o = hecke(&["mullineux", "--e", "3", "--partition", "3"]);
    assert_eq!(stdout(&o), "2,1\n");
}

#[test]
fn mullineux_fixture_tables_check() {
    for t in ["mullineux_1.csv", "mullineux_2.csv"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(t);
        let o = hecke(&["mullineux", "--table", path.to_str().unwrap(), "--check"]);
        assert!(o.status.success(), "{t}: {}", stdout(&o));
        assert!(stdout(&o).ends_with(", 0 mismatches\n"));
    }
}

#[test]
fn verify_verdicts_and_exit_codes() {
    for e in ["2", "3", "5", "6"] {
        let o = hecke(&["verify", "--e", e]);
        assert_eq!(o.status.code(), Some(0), "e = {e}");
        assert!(stdout(&o).contains("verdict: identity\n"), "e = {e}");
    }
    let o = hecke(&["verify", "--e", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: 2 unknown\n"));
}

#[test]
fn verify_json_schema() {
    let o = hecke(&["verify", "--e", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["e", "block", "entries", "summary"]);
    assert_eq!(v["e"], 4);
    let unknown: Vec<(String, String, String)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["status"] == "Unknown")
        .map(|x| {
            (
                x["lambda"].as_str().unwrap().to_string(),
                x["mu"].as_str().unwrap().to_string(),
                x["d_poly"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(unknown.len(), 2);
    assert!(unknown.contains(&("<1_{2^2},3>".into(), "<1_2,2_2,3>".into(), "v^2".into())));
    assert!(unknown.contains(&("<1,3_{2^2}>".into(), "<3_5>".into(), "3v^2".into())));
    for x in v["entries"].as_array().unwrap() {
        let keys: Vec<&str> = x.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["lambda", "mu", "status", "justification", "d_poly"]);
    }
    assert_eq!(v["summary"]["unknown"], 2);
}

#[test]
fn verify_all_lists_every_entry() {
    let o = hecke(&["verify", "--e", "2", "--format", "csv", "--all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // banner, header, 7 x 7 entries
    assert_eq!(text.lines().count(), 2 + 49);
    assert_eq!(text.lines().filter(|l| l.contains(",DiagonalOne,")).count(), 7);
}

#[test]
fn golden_files() {
    let o = hecke(&["verify", "--e", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), golden("verify_e4.csv"));
    let o = hecke(&["verify", "--e", "3"]);
    assert_eq!(stdout(&o), golden("verify_e3.md"));
    let o = hecke(&["dmatrix", "--e", "3", "--core", "-", "--weight", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), golden("dmatrix_e3_w2.csv"));
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("llt.cache");
    let c = cache.to_str().unwrap();
    let cold = hecke(&["verify", "--e", "4", "--format", "csv", "--cache", c]);
    assert!(cache.exists());
    let warm = hecke(&["verify", "--e", "4", "--format", "csv", "--cache", c]);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(stdout(&cold), golden("verify_e4.csv"));

    let o = hecke(&["cache", "check", c]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("records, valid\n"));

    let out = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["cache", "path"])
        .env("HECKE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim(), cache.to_str().unwrap());
}

#[test]
fn corrupt_cache_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("bad.cache");
    std::fs::write(&cache, "LLTCACHE 1\n2 3 2,1 | 2,1 1:0\n").unwrap();
    let o = hecke(&["cache", "check", cache.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hecke(&["core", "--e", "2"]).status.code(), Some(2));
    assert_eq!(hecke(&["core", "--e", "2", "--partition", "2,3"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "--e", "1"]).status.code(), Some(2));
    assert_eq!(hecke(&["mullineux", "--e", "4", "--partition", "<3_5>"]).status.code(), Some(2));
    assert_eq!(hecke(&["mullineux", "--e", "2", "--partition", "1,1"]).status.code(), Some(2));
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ryom_hansen_sweep() {
    let o = hecke(&["js", "--check-ryom-hansen", "--max-n", "8", "--es", "2,3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("e=2 n<=8: ") && text.contains("e=3 n<=8: "));
    assert_eq!(text.matches(" 0 mismatches").count(), 2);
}

#[test]
fn js_single_pair() {
    let o = hecke(&["js", "--e", "2", "--lambda", "1^3", "--mu", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "J(p=0) = 1\nd(v) = v  d'(1) = 1\n");
}

#[test]
fn branch_chain_and_pair() {
    let o = hecke(&["branch", "--e", "2", "--partition", "3,1", "--pair", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("signature: "));
    let o = hecke(&["branch", "--e", "2", "--partition", "3,1", "--chain", "0,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn output_is_deterministic() {
    let a = hecke(&["llt", "--e", "3", "--mu", "4,2"]);
    let b = hecke(&["llt", "--e", "3", "--mu", "4,2", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("G(4,2)  e=3"));
}

#[test]
fn regular_lists_labels() {
    let o = hecke(&["regular", "--e", "2", "--principal-5e"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().any(|l| l.starts_with("<1_{3,2}>\t")));
}
