use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobridge")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&ok(&a)).unwrap()
}

fn num(v: &serde_json::Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn slope_and_words() {
    assert_eq!(ok(&["slope", "C[2,3]"]), "3/7 (knot)\n");
    let v = json(&["slope", "C[2,3]"]);
    assert_eq!((v["alpha"].as_i64(), v["beta"].as_i64()), (Some(7), Some(3)));
    assert_eq!(v["kind"], "knot");
    assert_eq!(ok(&["canon", "7/17"]).trim(), "C[2,2,3]");
    assert_eq!(ok(&["even", "C[2,3]"]).trim(), "C[-2,4]");
}

#[test]
fn polynomials() {
    assert_eq!(ok(&["reppoly", "C[2,3]"]).lines().next().unwrap().trim_end(), "u^7 - u^5 + 2*u^3 - u");
    let v = json(&["reppoly", "C[2,1,2]"]);
    let mut pair = [v["rep_poly"].as_str().unwrap(), v["rep_poly_iu"].as_str().unwrap()];
    pair.sort();
    assert_eq!(pair, ["u^8 + 2*u^6 + 2*u^4", "u^8 - 2*u^6 + 2*u^4"]);
    let r = ok(&["riley", "S(7,3)"]);
    assert!(r.contains("R(y) = y^3 - y^2 + 2*y - 1") && r.contains("P(u) = u R(u^2)"), "{r}");
    let s = ok(&["split", "C[2,3]"]);
    assert!(s.contains("g     = u^3 + u^2 - 1"), "{s}");
    let u = ok(&["uiseq", "C[2,2,5]"]);
    assert!(u.starts_with("u_1 = u\nu_2 = -u^2\n"), "{u}");
}

#[test]
fn table_values() {
    let v = json(&["volume", "C[2,3]", "--root", "0.75487766"]);
    assert_eq!(v["vol_c"]["re"], "0");
    assert!((num(&v["vol_c"]["im"]) - 1.11345455).abs() < 1e-6, "{v}");
    let v = json(&["cusp", "C[2,3]", "--root", "0.87743883+0.74486176i"]);
    assert!((num(&v["cusp_shape"]["re"]) + 2.49024466).abs() < 1e-6, "{v}");
    assert!((num(&v["cusp_shape"]["im"]) - 2.97944706).abs() < 1e-6, "{v}");
    let v = json(&["roots", "C[2,3]"]);
    assert_eq!(v["roots"].as_array().unwrap().len(), 7);
}

#[test]
fn epimorphisms() {
    assert_eq!(ok(&["epi", "C[2,2,5]", "C[3]"]).trim(), "yes (witness: P)");
    assert_eq!(ok(&["epi", "C[4,-4]", "C[3]"]).trim(), "no");
    assert!(ok(&["ors", "--a", "3", "--c", "1"]).contains("divides"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["slope", "C[2,x]"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "S(0,1)"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["slope", "C[3]", "--format", "xml"]).status.code(), Some(2));
    let o = run(&["volume", "C[2,1,2]", "--root", "#0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("link"));
}

#[test]
fn json_is_stable_and_round_trips() {
    for args in [
        &["reppoly", "C[3,2,3]", "--format", "json"][..],
        &["volume", "C[2,3]", "--format", "json"],
        &["split", "S(13,5)", "--format", "json"],
    ] {
        let a = ok(args);
        assert_eq!(a, ok(args), "{args:?} differs between runs");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let shown = ok(&["riley", "C[2,2]", "--format", "json"]);
    let o = run(&["riley", "C[2,2]", "--format", "json", "--out", p.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&p).unwrap(), shown);
}

fn census(path: &Path, max: &str, jobs: &str) -> serde_json::Value {
    json(&["census", "--max-alpha", max, "--jobs", jobs, "--out", path.to_str().unwrap()])
}

#[test]
fn census_jobs_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    let s = census(&a, "13", "1");
    assert_eq!(s["records"], s["new_records"]);
    census(&b, "13", "4");
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap(), "job count changes the file");
    let again = census(&a, "13", "2");
    assert_eq!(again["new_records"], 0);
    assert_eq!(bytes, std::fs::read(&a).unwrap());
    for line in String::from_utf8(bytes).unwrap().lines() {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["schema_version"], 1);
    }
}
