use std::path::PathBuf;
use std::process::{Command, Output};

use cofill_core::geometry::example_configuration;
use serde_json::Value;

fn cofill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cofill")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn nested_basic_chain_in_three_dimensions() {
    let o = cofill(&["bounds", "nested", "--d", "3", "--phi", "phi1,basic,basic"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0.0625");
}

#[test]
fn prop9_constant() {
    let o = cofill(&["pagoda", "prop9"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["eps0_star"].as_f64().unwrap() > 0.00082);
    assert!(v["c3_bound"].as_f64().unwrap() > 0.06332);
}

#[test]
fn coboundary_of_segment_cochain() {
    let o = cofill(&["coboundary", "--input", &data("f_xy.json")]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut sets: Vec<Vec<u64>> = serde_json::from_value(v["sets"].clone()).unwrap();
    sets.sort();
    assert_eq!(sets, vec![vec![1, 2, 4], vec![1, 2, 5], vec![2, 3, 4], vec![2, 3, 5]]);
}

#[test]
fn verify_all_exit_codes() {
    let o = cofill(&["verify-all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all pass"));
    let o = cofill(&["verify-all", "--tolerance", "1e-12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_reports_json() {
    let o = cofill(&["fill", "--input", &data("f_xy.json")]);
    assert_eq!(o.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotACoboundary");
    let o = cofill(&["minimal", "--input", "/nonexistent/cochain.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn profile_budget_exhaustion() {
    let o = cofill(&["profile", "--n", "5", "--d", "2"]);
    assert!(o.status.success());
    let o = cofill(&["profile", "--n", "5", "--d", "2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("n,d,"));
}

#[test]
fn depth_of_example_configuration() {
    let (p, _) = example_configuration();
    let path = scratch("example_points.json");
    std::fs::write(&path, p.to_json().to_string()).unwrap();
    let o = cofill(&["depth", "--input", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["depth"].as_u64().unwrap() >= 4);
}

#[test]
fn quadripartite_roundtrip_through_verify() {
    let o = cofill(&["pagoda", "quadripartite", "--n", "8", "--full"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["g_norm_exact"], "8/35");
    let path = scratch("pagoda8.json");
    std::fs::write(&path, v["pagoda"].to_string()).unwrap();
    let o = cofill(&["pagoda", "verify", "--input", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn search_is_thread_count_independent() {
    let m1 = scratch("manifest1.json");
    let m4 = scratch("manifest4.json");
    let run = |threads: &str, m: &PathBuf| {
        cofill(&[
            "pagoda",
            "search",
            "--n",
            "8",
            "--budget",
            "40",
            "--seed",
            "3",
            "--threads",
            threads,
            "--manifest",
            m.to_str().unwrap(),
        ])
    };
    let (a, b) = (run("1", &m1), run("4", &m4));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let strip = |p: &PathBuf| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        v.as_object_mut().unwrap().remove("parameters");
        v
    };
    assert_eq!(strip(&m1), strip(&m4));
    assert_eq!(strip(&m1)["command"], "pagoda");
}
