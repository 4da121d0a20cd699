use std::process::Command;

fn randsurf(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_randsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &std::process::Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exact_n1() {
    let v = json(&randsurf(&["exact", "-N", "1"]));
    assert_eq!(v["report"]["genus_histogram"], serde_json::json!({"0": 12, "1": 3}));
    assert_eq!(v["config"]["command"], "exact");
}

#[test]
fn exact_guard_exit_code() {
    let out = randsurf(&["exact", "-N", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn bad_flags_exit_code() {
    assert_eq!(randsurf(&["census", "-N", "4", "--samples", "lots"]).status.code(), Some(2));
    assert_eq!(randsurf(&["census", "-N", "4", "--words", "RRR", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(randsurf(&["census", "-N", "5", "--filter", "window:2,0", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn census_is_reproducible_across_thread_counts() {
    let args = |t: &'static str| {
        vec!["census", "-N", "8", "--samples", "3000", "--seed", "11", "--words", "LR,LLR,LR", "--threads", t]
    };
    let a = randsurf(&args("1"));
    let b = randsurf(&args("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("warning"));
    let v = json(&a);
    assert_eq!(v["config"]["words"], "LR,LLR");
    assert_eq!(v["report"]["samples_accepted"], 3000);
}

#[test]
fn census_csv_has_header() {
    let out = randsurf(&["census", "-N", "6", "--samples", "500", "--seed", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "class,z,count,frequency"));
    assert!(text.contains("# seed=2"));
    assert!(text.ends_with('\n'));
}

#[test]
fn missing_seed_is_generated_and_reported() {
    let out = randsurf(&["sample", "-N", "3"]);
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    let v = json(&out);
    let seed = v["config"]["seed"].as_u64().unwrap();
    assert!(stderr.contains(&format!("seed: {seed}")));
}

#[test]
fn sample_dump_and_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    let first = json(&randsurf(&["sample", "-N", "5", "--seed", "3", "--dump", p]));
    let second = json(&randsurf(&["sample", "--load", p]));
    assert_eq!(first["report"], second["report"]);
}

#[test]
fn sample_theta_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    std::fs::write(&path, "[[1,4],[2,5],[3,6]]").unwrap();
    let v = json(&randsurf(&["sample", "--load", path.to_str().unwrap()]));
    assert_eq!(v["report"]["census"]["counts"]["LR"], 3);
    assert_eq!(v["report"]["census"]["min_trace"], 3);
    assert_eq!(v["report"]["census"]["lht"], serde_json::json!([6]));
}

#[test]
fn load_rejects_bad_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "[[1,2],[2,3],[4,5]]").unwrap();
    assert_eq!(randsurf(&["sample", "--load", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn maxgenus_n1() {
    let v = json(&randsurf(&["maxgenus", "-N", "1"]));
    assert_eq!(v["report"]["exact"], "3");
    assert_eq!(v["report"]["s_value"], "6/5");
    let v = json(&randsurf(&["maxgenus", "-N", "1", "--words", "LR"]));
    assert_eq!(v["report"]["exact"], "1");
}

#[test]
fn sysdist_and_bounds() {
    let v = json(&randsurf(&["sysdist", "--kmax", "5"]));
    let rows = v["report"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[0]["probability"].as_f64().unwrap() - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
    let v = json(&randsurf(&["bounds", "--m2", "0.5", "--x", "1.0"]));
    let b = v["report"]["rows"][0]["bound"].as_f64().unwrap();
    assert!((b - (-0.5f64).exp()).abs() < 1e-12);
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = randsurf(&["sysdist", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
}
