use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn itkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itkit")).args(args).env_remove("ITKIT_BUDGET").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K22: &str = "graph 4\nclass 0 0 1\nclass 1 2 3\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\n";

#[test]
fn k22_gives_blocking_set() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k22.txt", K22);
    let out = itkit(&["findit", s(&inst), "--r", "3", "--eps", "1/2", "--verify"]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "bd");
    assert_eq!(v["B"], serde_json::json!([0, 1]));
}

#[test]
fn edgeless_instance_gives_transversal() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "e.txt", "graph 3\nclass 0 0\nclass 1 1\nclass 2 2\n");
    let out = itkit(&["findit", s(&inst), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"outcome":"it","transversal":{"0":0,"1":1,"2":2}}"#);
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k22.txt", K22);
    assert_eq!(code(&itkit(&["findit", s(&inst), "--r", "1"])), 1);
    assert_eq!(code(&itkit(&["findit", s(&inst), "--eps", "0.5"])), 1);
    assert_eq!(code(&itkit(&["findit", s(&inst), "--eps", "1/2", "--mu", "1/2"])), 1);
    assert_eq!(code(&itkit(&["frobnicate"])), 1);
    assert_eq!(code(&itkit(&["--help"])), 0);
}

#[test]
fn parse_error_names_the_line() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "bad.txt", "graph 2\nclass 0 0 1\nedge 0 x\n");
    let out = itkit(&["findit", s(&inst)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn claw_check_rejects_star() {
    let dir = TempDir::new().unwrap();
    // center 0 with three leaves in distinct classes
    let inst = write(&dir, "claw.txt", "graph 6\nclass 0 0 4\nclass 1 1 5\nclass 2 2\nclass 3 3\nedge 0 1\nedge 0 2\nedge 0 3\nedge 4 5\n");
    let out = itkit(&["findit", s(&inst), "--r", "3", "--check-claw-free"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
    // without a 4-claw the run goes ahead; a verified blocking set is a valid answer too
    let out = itkit(&["findit", s(&inst), "--r", "4", "--check-claw-free", "--verify"]);
    assert_ne!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_accepts_engine_output_and_names_mutations() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k22.txt", K22);
    let out = itkit(&["findit", s(&inst), "--json"]);
    let cert = write(&dir, "c.json", &stdout(&out));
    let ok = itkit(&["verify", s(&inst), s(&cert), "--oracle"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok).trim(), "ok");

    let mut v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    v["constellation"][0]["leaves"] = serde_json::json!([]);
    let bad = write(&dir, "bad.json", &v.to_string());
    let rej = itkit(&["verify", s(&inst), s(&bad)]);
    assert_eq!(code(&rej), 1);
    assert!(stdout(&rej).contains("violation constellation"), "{}", stdout(&rej));

    let it = write(&dir, "it.json", r#"{"outcome":"it","transversal":{"0":0,"1":2}}"#);
    let rej = itkit(&["verify", s(&inst), s(&it), "--json"]);
    assert_eq!(code(&rej), 1);
    let rep: serde_json::Value = serde_json::from_str(&stdout(&rej)).unwrap();
    assert_eq!(rep["violations"][0]["name"], "independence");
}

#[test]
fn hall_violation_gives_cover() {
    let dir = TempDir::new().unwrap();
    // a0 and a1 both only reach b0
    let h = write(&dir, "h.txt", "hypergraph 2\naside 0 1\nbside 0 1\nedge 0 0\nedge 1 0\n");
    let out = itkit(&["match", s(&h), "--verify", "--oracle", "--json"]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "cover");
    assert_eq!(v["T"], serde_json::json!([0]));

    let m = write(&dir, "m.txt", "hypergraph 2\naside 0 1\nbside 0 1\nedge 0 0\nedge 1 0\nedge 1 1\n");
    assert_eq!(code(&itkit(&["match", s(&m), "--oracle"])), 0);
}

#[test]
fn gen_is_deterministic_and_corollary_instances_succeed() {
    let dir = TempDir::new().unwrap();
    for seed in ["1", "2", "3"] {
        let a = itkit(&["gen", "random-partitioned", "--seed", seed, "--delta", "3", "--m", "8"]);
        let b = itkit(&["gen", "random-partitioned", "--seed", seed, "--delta", "3", "--m", "8"]);
        assert_eq!(a.stdout, b.stdout);
        let p = write(&dir, &format!("g{seed}.txt"), &stdout(&a));
        assert_eq!(code(&itkit(&["findit", s(&p), "--verify", "--trace"])), 0);
    }
    let p = dir.path().join("h.txt");
    assert_eq!(code(&itkit(&["gen", "hypergraph-random", "--r", "3", "-o", s(&p)])), 0);
    assert!(fs::read_to_string(&p).unwrap().starts_with("hypergraph 3"));
}

#[test]
fn complete_bipartite_pair_has_no_transversal() {
    let dir = TempDir::new().unwrap();
    for delta in ["1", "2", "3"] {
        let g = itkit(&["gen", "complete-bipartite-pair", "--delta", delta, "--format", "json"]);
        let p = write(&dir, &format!("k{delta}.json"), &stdout(&g));
        assert_eq!(code(&itkit(&["findit", s(&p), "--oracle", "--verify"])), 2);
    }
}

#[test]
fn jobs_keep_input_order_and_worst_exit() {
    let dir = TempDir::new().unwrap();
    let k22 = write(&dir, "k22.txt", K22);
    let e = write(&dir, "e.txt", "graph 2\nclass 0 0\nclass 1 1\n");
    let out = itkit(&["findit", s(&e), s(&k22), s(&e), "--json", "--jobs", "3"]);
    assert_eq!(code(&out), 2);
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let outcomes: Vec<&str> = lines.iter().map(|l| l["certificate"]["outcome"].as_str().unwrap()).collect();
    assert_eq!(outcomes, ["it", "bd", "it"]);
}

#[test]
fn budget_env_is_honoured() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k22.txt", K22);
    let out = Command::new(env!("CARGO_BIN_EXE_itkit"))
        .args(["findit", s(&inst), "--oracle"])
        .env("ITKIT_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn apps_commands_run() {
    let dir = TempDir::new().unwrap();
    let g = itkit(&["gen", "clique-planted", "--delta", "4", "--seed", "5"]);
    let p = write(&dir, "c.txt", &stdout(&g));
    let out = itkit(&["cliquehit", s(&p), "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["hitting"].as_array().unwrap().is_empty());

    let inst = write(&dir, "k22.txt", K22);
    let out = itkit(&["strongcolour", s(&inst)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("colours 7"));
}
