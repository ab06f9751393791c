use std::io::Write;
use std::process::{Command, Output, Stdio};

fn forcing(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_forcing"))
        .args(args)
        .env_remove("FORCING_MATCHING_CAP")
        .env_remove("FORCING_CYCLE_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn generated_graph_round_trips_through_analyze() {
    let gen = forcing(&["generate", "hk", "--n", "5", "--k", "2"], "");
    assert_eq!(gen.status.code(), Some(0));
    let text = stdout(&gen);
    assert!(text.starts_with("# m0: 0-5 1-6 2-7 3-8 4-9\n"), "{text}");

    let report = forcing(&["analyze"], &text);
    assert_eq!(report.status.code(), Some(0));
    let v = json(&report);
    assert_eq!(v["profile"]["min_forcing"], 2);
    assert_eq!(v["profile"]["max_forcing"], 4);

    let edges = forcing(&["generate", "hk", "--n", "5", "--k", "2", "--output", "edge-list"], "");
    let again = forcing(&["analyze", "--format", "edge-list"], &stdout(&edges));
    assert_eq!(json(&again)["graph"], v["graph"]);
}

#[test]
fn analyze_sections_and_csv() {
    let k33 = stdout(&forcing(&["generate", "multipartite", "--sizes", "3,3"], ""));
    let v = json(&forcing(&["analyze", "--extend", "--switch"], &k33));
    assert!(v.get("profile").is_none());
    assert_eq!(v["extendability"]["brick"], false);
    assert_eq!(v["switch"]["node_count"], 6);
    assert_eq!(v["switch"]["continuity"]["reach_max"], true);

    let csv = stdout(&forcing(&["analyze", "--csv"], &k33));
    assert_eq!(csv.lines().next(), Some("index,matching,forcing"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn exit_codes() {
    assert_eq!(forcing(&["analyze"], "D?\n").status.code(), Some(1));
    assert_eq!(forcing(&["analyze"], "not a graph at all\n").status.code(), Some(1));
    // K_5 has odd order.
    assert_eq!(forcing(&["analyze"], "D~{\n").status.code(), Some(2));
    let k44 = stdout(&forcing(&["generate", "multipartite", "--sizes", "4,4"], ""));
    assert_eq!(forcing(&["analyze", "--matching-cap", "3"], &k44).status.code(), Some(3));
    assert_eq!(forcing(&["generate", "hk", "--n", "4", "--k", "2"], "").status.code(), Some(1));
    assert_eq!(forcing(&["generate", "hk", "--n", "x"], "").status.code(), Some(1));
    assert_eq!(forcing(&["verify", "--corpus", "/nonexistent.g6"], "").status.code(), Some(1));
    assert_eq!(forcing(&["verify", "--theorems", "nope"], "").status.code(), Some(1));
}

#[test]
fn verify_output_is_independent_of_worker_count() {
    let one = forcing(&["verify", "--corpus", "exhaustive-5", "--workers", "1"], "");
    let eight = forcing(&["verify", "--corpus", "exhaustive-5", "--workers", "8"], "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
    let v = json(&one);
    assert_eq!(v["graphs_total"], 1024);
    assert!(v["blocks"][0].get("cpu_ms").is_none());
}

#[test]
fn verify_a_graph6_file_with_one_block() {
    let dir = std::env::temp_dir().join(format!("forcing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.g6");
    let mut text = String::new();
    for n in 2..=4 {
        let sizes = format!("{n},{n}");
        text += &stdout(&forcing(&["generate", "multipartite", "--sizes", &sizes], ""));
    }
    std::fs::write(&path, text).unwrap();
    let out = forcing(&["verify", "--corpus", path.to_str().unwrap(), "--theorems", "thm33"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["graphs_total"], 3);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["blocks"][0]["id"], "thm33");
    std::fs::remove_dir_all(&dir).unwrap();
}
