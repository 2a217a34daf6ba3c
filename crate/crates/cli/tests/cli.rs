use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mckay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

/// Drop the parts of a report allowed to differ between runs.
fn without_volatile(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("seed");
                m.remove("timings_ms");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

#[test]
fn verify_local_e8() {
    let out = mckay(&["verify", "local", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    let checks = v["result"]["checks"].as_array().unwrap();
    for name in ["multiplicativity", "additive-rank", "isometry", "equivariance"] {
        let c = checks.iter().find(|c| c["name"] == name).unwrap();
        assert_eq!(c["pass"], true, "{name}");
    }
    assert_eq!(v["result"]["group"]["order"], 120);
    assert_eq!(v["result"]["phi"]["matrix"].as_array().unwrap().len(), 8);
}

#[test]
fn mckay_dot_for_quaternion_group() {
    let dot_path = scratch("d4.dot");
    let out = mckay(&["mckay", "--type", "D4", "--format", "dot", "--dot", dot_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(std::fs::read_to_string(&dot_path).unwrap(), text);
    let vertices: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).collect();
    assert_eq!(vertices.len(), 5);
    let edges: Vec<(String, String)> = text
        .lines()
        .filter_map(|l| l.trim().trim_end_matches(';').split_once(" -- "))
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let degree = |v: &str| edges.iter().filter(|(a, b)| a == v || b == v).count();
    let center: Vec<String> = (0..5).map(|i| format!("v{i}")).filter(|v| degree(v) == 4).collect();
    assert_eq!(center.len(), 1);
    assert!(text.contains(&format!("{} [label=\"2\"]", center[0])));
    assert!(text.contains("trivial=true"));
}

#[test]
fn invalid_type_is_a_usage_error() {
    let out = mckay(&["verify", "local", "--type", "D3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D_n requires n ≥ 4"));
    assert_eq!(mckay(&["verify", "local", "--bogus"]).status.code(), Some(2));
    assert_eq!(mckay(&["minor", "--group", "/definitely/missing.json"]).status.code(), Some(2));
}

#[test]
fn global_configs() {
    let good = scratch("good.json");
    std::fs::write(
        &good,
        r#"{"picard_rank": 2, "intersection_matrix": [[0,1],[1,0]],
            "points": [{"id": "p", "type": "A2"}, {"id": "q", "type": "D4"}, {"id": "r", "type": "E8"}]}"#,
    )
    .unwrap();
    let report_path = scratch("global-report.json");
    let out = mckay(&["verify", "global", "--config", good.to_str().unwrap(), "--out", report_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(v["result"]["dims"], serde_json::json!([18, 18]));
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 3);

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"picard_rank": 2, "intersection_matrix": [[0,1],[2,0]]}"#).unwrap();
    let out = mckay(&["verify", "global", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("intersection matrix not symmetric"));
}

#[test]
fn group_files_and_minor() {
    let path = scratch("s3.json");
    // S₃ on {0..5}: rotations r^k = k, reflections 3 + k
    let mul = |a: usize, b: usize| -> usize {
        let (sa, ka) = (a / 3, a % 3);
        let (sb, kb) = (b / 3, b % 3);
        let k = if sa == 0 { (ka + kb) % 3 } else { (ka + 3 - kb) % 3 };
        3 * (sa ^ sb) + k
    };
    let table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| mul(a, b)).collect()).collect();
    std::fs::write(&path, serde_json::json!({ "cayley": table }).to_string()).unwrap();
    let out = mckay(&["minor", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["nonzero"], true);
    assert_eq!(v["result"]["group"]["classes"], 3);

    let out = mckay(&["group", "info", "--group", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 6") && text.contains("classes: 3"));
}

#[test]
fn reports_are_deterministic() {
    let a = json_of(&mckay(&["verify", "local", "--type", "E6", "--seed", "1"]));
    let b = json_of(&mckay(&["verify", "local", "--type", "E6", "--seed", "1"]));
    let c = json_of(&mckay(&["verify", "local", "--type", "E6", "--seed", "987654321"]));
    assert_eq!(a["manifest"]["seed"], 1);
    let (a, b, c) = (without_volatile(a), without_volatile(b), without_volatile(c));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let t1 = json_of(&mckay(&["chartable", "--name", "S4", "--seed", "3"]));
    let t2 = json_of(&mckay(&["chartable", "--name", "S4", "--seed", "4"]));
    assert_eq!(t1["result"]["rows"], t2["result"]["rows"]);
}

#[test]
fn local_dumps() {
    let v = json_of(&mckay(&["local", "--type", "A2", "--dump-orbifold"]));
    let products = &v["result"]["orbifold"]["products"];
    assert_eq!(products["f_[1]"]["f_[2]"]["[pt]"], "1");
    assert!(v["result"].get("resolution").is_none());
    let v = json_of(&mckay(&["local", "--type", "A2", "--dump-resolution"]));
    assert_eq!(v["result"]["resolution"]["products"]["E_1"]["E_1"]["[pt]"], "-2");
}
