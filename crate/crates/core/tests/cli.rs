use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_netforge"));
    c.env_remove("NETFORGE_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn read_golden(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(golden(name)).unwrap()).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v["wall_time_ms"] = Value::from(0);
    v
}

#[test]
fn construct_matches_golden() {
    let out = run(&["construct", "--family", "classical", "--p", "7"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out), read_golden("construct_classical_7.json"));
    let out = run(&["construct", "--family", "char3", "--r", "2"]);
    assert_eq!(json_of(&out), read_golden("construct_char3_9.json"));
}

#[test]
fn reports_match_golden() {
    let net = golden("construct_classical_7.json");
    let net = net.to_str().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["verify", net], "verify_classical_7.json"),
        (&["analyze", net], "analyze_classical_7.json"),
        (&["bound", "--n", "3"], "bound_3.json"),
        (&["gcd-cert", "--n", "3", "--q", "8"], "gcd_cert_3_8.json"),
    ];
    for (args, file) in cases {
        let out = run(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(json_of(&out), read_golden(file), "{args:?}");
    }
    let out = run(&["refute", net]);
    assert_eq!(without_timing(json_of(&out)), read_golden("refute_classical_7.json"));
    let out = run(&["search", "--p", "2", "--r", "2"]);
    assert_eq!(without_timing(json_of(&out)), read_golden("search_4.json"));
}

#[test]
fn documented_examples() {
    let a = json_of(&run(&["analyze", golden("construct_classical_7.json").to_str().unwrap()]));
    assert!(a["kappa"] == serde_json::json!([3]) || a["kappa"] == serde_json::json!([5]));
    assert_eq!(a["satisfies_eq9"], true);

    let out = run(&["gcd-cert", "--n", "3", "--q", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["verdict"], "refuted");

    let b = json_of(&run(&["bound", "--n", "3"]));
    assert_eq!(b["N"], 6);
    assert_eq!(b["bound"], "9");
    assert_eq!(b["prime_divisors"], serde_json::json!(["2", "3", "7"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "classical"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--p", "7", "--order", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["gcd-cert", "--n", "3", "--q", "8", "--strict"]).status.code(), Some(1));
    assert_eq!(run(&["gcd-cert", "--n", "3", "--q", "7", "--strict"]).status.code(), Some(0));
    let net = golden("construct_classical_7.json");
    assert_eq!(run(&["refute", net.to_str().unwrap(), "--strict"]).status.code(), Some(1));
    assert_eq!(run(&["--jobs", "0", "bound", "--n", "2"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let mut doc = read_golden("construct_classical_7.json");
    doc["components"][1][0] = doc["components"][0][0].clone();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["pass"], false);
}

#[test]
fn errors_as_json() {
    let out = run(&["--json-errors", "verify", "/definitely/missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["schema"], "netforge/1");
    assert_eq!(err["error"]["kind"], "io");
    let out = run(&["--json-errors", "construct", "--family", "classical", "--p", "5"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
    let out = run(&["--json-errors", "nonsense"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn roundtrip_every_family() {
    let dir = tempfile::tempdir().unwrap();
    let families: [&[&str]; 6] = [
        &["--family", "classical", "--p", "13"],
        &["--family", "classical", "--p", "2", "--r", "2"],
        &["--family", "char3", "--r", "3"],
        &["--family", "subplane", "--p", "3", "--r", "2", "--h", "1", "--k", "4"],
        &["--family", "lunardon", "--base-r", "3", "--s", "3"],
        &["--family", "lunardon-ext", "--base-r", "3", "--s", "3"],
    ];
    for (i, fam) in families.iter().enumerate() {
        let path = dir.path().join(format!("net{i}.json"));
        let mut args = vec!["construct"];
        args.extend_from_slice(fam);
        args.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let out = run(&args);
        assert!(out.status.success(), "{fam:?}: {}", String::from_utf8_lossy(&out.stderr));
        let summary = json_of(&out);
        let text = std::fs::read_to_string(&path).unwrap();
        let file = netforge::io::NetFile::parse(&text).unwrap();
        assert_eq!(summary["sha256"], file.digest());
        let again = netforge::io::NetFile::from_constructed(&file.into_constructed().unwrap());
        assert_eq!(again, file, "{fam:?}");
        let v = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{fam:?}");
    }
}

#[test]
fn extend_emits_solution_files() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("sub.json");
    let out = run(&["construct", "--family", "subplane", "--p", "3", "--r", "2", "--h", "1", "--k", "3", "--out", net.to_str().unwrap()]);
    assert!(out.status.success());
    let emit = dir.path().join("sols");
    let out = run(&["--jobs", "1", "extend", net.to_str().unwrap(), "--emit", emit.to_str().unwrap()]);
    assert!(out.status.success());
    let cert = json_of(&out);
    let count = cert["solution_count"].as_u64().unwrap() as usize;
    assert!(count >= 1);
    assert_eq!(cert["exhaustive"], true);
    let files: Vec<_> = std::fs::read_dir(&emit).unwrap().collect();
    assert_eq!(files.len(), count);
    let first = emit.join("solution-0000.json");
    assert_eq!(run(&["verify", first.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn table_format_is_aligned() {
    let out = run(&["--format", "table", "gcd-cert", "--n", "3", "--q", "13"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let cols: Vec<usize> = text
        .lines()
        .map(|l| l.find(|c: char| c.is_whitespace()).unwrap() + l[l.find(' ').unwrap()..].find(|c: char| !c.is_whitespace()).unwrap())
        .collect();
    assert!(cols.windows(2).all(|w| w[0] == w[1]), "{text}");
    assert!(text.contains("inconclusive"));
}

#[test]
fn caps_are_reported() {
    let out = run(&["search", "--p", "13", "--max-nodes", "3"]);
    let cert = json_of(&out);
    assert_eq!(cert["exhaustive"], false);
    assert_eq!(cert["truncated"], "node_cap");
    assert_eq!(run(&["search", "--p", "2", "--max-nodes", "0"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--p", "17"]).status.code(), Some(2));
    assert!(run(&["search", "--p", "17", "--q-cap", "17"]).status.success());
}
