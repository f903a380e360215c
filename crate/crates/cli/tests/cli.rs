use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn steincalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steincalc")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = steincalc(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn plumb_invariants_and_moves() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    fs::write(
        &graph,
        r#"{"vertices":[{"id":0,"weight":-2,"genus":0},{"id":1,"weight":-2,"genus":0}],"edges":[[0,1]]}"#,
    )
    .unwrap();
    let v = json_out(&["plumb", "invariants", graph.to_str().unwrap()]);
    assert_eq!(v["boundary_h1"], "Z/3");
    assert_eq!(v["signature"], -2);
    assert_eq!(v["grauert"], true);

    let script = dir.path().join("s.json");
    fs::write(&script, r#"[{"op":"blow_up_on_edge","args":[0,1]},{"op":"blow_down","args":[2]}]"#).unwrap();
    let v = json_out(&["plumb", "moves", graph.to_str().unwrap(), script.to_str().unwrap()]);
    assert_eq!(v["boundary_h1_preserved"], true);
    assert_eq!(v["after"]["boundary_h1"], "Z/3");
}

#[test]
fn seifert_commands() {
    let v = json_out(&["seifert", "open-book", "--genus", "6", "--powers", "2"]);
    assert_eq!(v["seifert"]["euler_number"], "-1/2");
    assert_eq!(v["h1"], "Z^12");
    assert_eq!(v["singularity_link"], true);

    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("star.json");
    fs::write(
        &graph,
        r#"{"vertices":[{"id":0,"weight":-1,"genus":1},{"id":1,"weight":-2,"genus":0}],"edges":[[0,1]]}"#,
    )
    .unwrap();
    let v = json_out(&["seifert", "from-star", graph.to_str().unwrap()]);
    assert_eq!(v["seifert"]["euler_number"], "-1/2");
}

#[test]
fn mcg_action_and_lf_chi() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.txt");
    fs::write(&word, "(c1 c2 c3 c4 c5^2 c4 c3 c2 c1)^2\n").unwrap();
    let v = json_out(&["mcg", "action", "--word", word.to_str().unwrap(), "--surface", "2,0"]);
    assert_eq!(v["letter_count"], 20);
    assert_eq!(v["action"], serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));

    let curves = dir.path().join("c.json");
    fs::write(&curves, r#"{"a": [1, 0], "b": [0, 1]}"#).unwrap();
    let word2 = dir.path().join("w2.txt");
    fs::write(&word2, "a").unwrap();
    let v = json_out(&["mcg", "action", "--word", word2.to_str().unwrap(), "--surface", "1,0", "--curves", curves.to_str().unwrap()]);
    assert_eq!(v["action"], serde_json::json!([[1, 1], [0, 1]]));

    let v = json_out(&["lf", "chi", "--catalog", "hyperelliptic", "--param", "2"]);
    assert_eq!(v["euler_characteristic"], 16);
    let v = json_out(&["lf", "chi", "--catalog", "korkmaz", "--param", "1"]);
    assert_eq!(v["euler_characteristic"], 8);
}

#[test]
fn knots_alexander() {
    let dir = tempfile::tempdir().unwrap();
    let v_file = dir.path().join("trefoil.json");
    fs::write(&v_file, "[[-1, 1], [0, -1]]").unwrap();
    let v = json_out(&["knots", "alexander", v_file.to_str().unwrap()]);
    assert_eq!(v["alexander"]["display"], "t - 1 + t^-1");
    assert_eq!(v["fibered_certificate"]["passes"], true);
}

#[test]
fn reports_exit_codes() {
    assert!(steincalc(&["report", "figure1", "--h", "1", "--p", "2,3,5"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.md");
    let status = steincalc(&["report", "thm53", "--m", "1", "--n", "3", "--k", "2", "--format", "md", "--out", out.to_str().unwrap()]).status;
    assert!(status.success());
    assert!(fs::read_to_string(&out).unwrap().contains("Verdict: **PASS**"));

    let v = json_out(&["report", "cor55", "--h", "8"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["subreports"].as_array().unwrap().len(), 1);

    // a family with a repeated knot produces a failing verdict, exit 1
    let fam = dir.path().join("fam.json");
    let t = r#"{"name":"T#T","matrix":[[-1,1,0,0],[0,-1,0,0],[0,0,-1,1],[0,0,0,-1]]}"#;
    fs::write(&fam, format!("[{t},{t}]")).unwrap();
    let out = steincalc(&["report", "thm44", "--g", "2", "--k", "2", "--r", "1", "--family", fam.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(steincalc(&["report", "cor55", "--h", "6"]).status.code(), Some(2));
    assert_eq!(steincalc(&["report", "thm53", "--m", "1", "--n", "0", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn report_json_is_deterministic() {
    let a = steincalc(&["report", "thm44", "--g", "2", "--k", "2", "--r", "1"]).stdout;
    let b = steincalc(&["report", "thm44", "--g", "2", "--k", "2", "--r", "1"]).stdout;
    assert_eq!(a, b);
}
