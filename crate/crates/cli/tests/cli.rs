use std::process::Command;

use atlas_cli::{run, EXIT_OK, EXIT_REJECTED, EXIT_USAGE};

fn atlas(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("atlas").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn gen_petersen_graph6() {
    let (code, out, _) = atlas(&["gen", "gp", "5", "2", "--format", "graph6"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "IheA@GUAo\n");
}

#[test]
fn gen_formats() {
    let (_, dot, _) = atlas(&["gen", "cycle", "4", "--format", "dot"], "");
    assert!(dot.starts_with("graph"), "{dot}");
    let (_, js, _) = atlas(&["gen", "cycle", "4", "--format", "json"], "");
    let v = json(&js);
    assert_eq!(v["order"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_x1() {
    let (code, out, _) = atlas(&["verify", "x1", "7"], "");
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["verification"]["two_arc_transitive"], true);
    assert_eq!(v["verification"]["bicirculant"], "yes");
}

#[test]
fn verify_rejection_exits_one() {
    let (code, out, _) = atlas(&["verify", "multipartite", "3", "2"], "");
    assert_eq!(code, EXIT_REJECTED);
    assert_eq!(json(&out)["verification"]["two_arc_transitive"], false);
}

#[test]
fn gen_then_classify_round_trips() {
    for spec in [&["gp", "10", "3"][..], &["kq2d", "7", "3"], &["sporadic:x2_3"], &["pg", "3", "3"], &["atq", "5", "4"]] {
        let mut args = vec!["gen"];
        args.extend_from_slice(spec);
        let (_, g6, _) = atlas(&args, "");
        let (code, out, _) = atlas(&["classify"], &g6);
        assert_eq!(code, EXIT_OK, "{spec:?}");
        let v = json(&out);
        assert_eq!(v["verdict"], "census_match");
        assert_eq!(v["entry"]["canonical_key"], v["input"]["canonical_key"]);
    }
    let (_, out, _) = atlas(&["classify", "gp", "10", "3"], "");
    assert_eq!(json(&out)["entry"]["label"], "Desargues");
}

#[test]
fn classify_rejections() {
    let (_, g6, _) = atlas(&["gen", "hamming", "2", "4"], "");
    let (code, out, _) = atlas(&["classify", "--g6", g6.trim()], "");
    assert_eq!(code, EXIT_REJECTED);
    let v = json(&out);
    assert_eq!(v["verdict"], "rejected");
    assert_eq!(v["reason"], "not_2_arc_transitive");
}

#[test]
fn iso_h11_and_paley() {
    let (_, a, _) = atlas(&["gen", "h11"], "");
    let (_, b, _) = atlas(&["gen", "paley2p", "11", "5"], "");
    let (code, out, _) = atlas(&["iso", "--g6", a.trim(), "--g6", b.trim(), "--format", "json"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["mapping"].as_array().unwrap().len(), 22);
    let (_, c, _) = atlas(&["gen", "pg", "3", "2"], "");
    let (code, out, _) = atlas(&["iso", "--g6", a.trim(), "--g6", c.trim()], "");
    assert_eq!(code, EXIT_REJECTED);
    assert_eq!(out, "non-isomorphic\n");
}

#[test]
fn census_small() {
    let (code, out, _) = atlas(&["census", "--max-vertices", "6"], "");
    assert_eq!(code, EXIT_OK);
    let labels: Vec<String> = json(&out).as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap().to_string()).collect();
    assert_eq!(labels, ["C_4", "K_4", "C_6", "K_{3,3}", "K_6"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(atlas(&[], "").0, EXIT_USAGE);
    assert_eq!(atlas(&["gen", "gp", "5"], "").0, EXIT_USAGE);
    assert_eq!(atlas(&["gen", "nope"], "").0, EXIT_USAGE);
    assert_eq!(atlas(&["verify", "gp", "5", "2", "--budget", "0"], "").0, EXIT_USAGE);
    assert_eq!(atlas(&["iso", "--g6", "C~"], "").0, EXIT_USAGE);
    let (code, _, err) = atlas(&["classify", "--g6", "I????"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("byte 5"), "{err}");
    assert_eq!(atlas(&["classify"], "").0, EXIT_USAGE);
}

#[test]
fn output_is_deterministic_and_writes_files() {
    let first = atlas(&["verify", "sporadic:atd56"], "");
    assert_eq!(first, atlas(&["verify", "sporadic:atd56"], ""));
    let path = std::env::temp_dir().join(format!("atlas-cli-test-{}.g6", std::process::id()));
    let (code, out, _) = atlas(&["gen", "gp", "5", "2", "--out", path.to_str().unwrap()], "");
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "IheA@GUAo\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn budget_env_override() {
    let bin = env!("CARGO_BIN_EXE_atlas");
    // K_{1,3} needs all 6 automorphisms to answer "no"; budget 3 leaves it undecided
    let k13 = "Cs";
    let out = Command::new(bin).args(["verify", "--g6", k13]).env("ATLAS_BUDGET", "3").output().unwrap();
    let v = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["verification"]["bicirculant"], "unknown");
    let out = Command::new(bin).args(["verify", "--g6", k13, "--budget", "10"]).env("ATLAS_BUDGET", "3").output().unwrap();
    let v = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["verification"]["bicirculant"], "no");
    let out = Command::new(bin).args(["verify", "--g6", k13]).env("ATLAS_BUDGET", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
