use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_predomain"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn stratify_adds_the_missing_pair_and_is_stable() {
    let (code, out) = run(&["stratify", &fixture("P4.pdm")]);
    assert_eq!(code, 0);
    assert!(out.contains("rel a b\n"));
    let path = tmp("p4s.pdm");
    let (code, _) = run(&["stratify", &fixture("P4.pdm"), "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
    let (code, check) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(check.contains("info  stratified: true"));
    assert_eq!(run(&["stratify", path.to_str().unwrap()]).1, out);
}

#[test]
fn complete_and_topology_on_chain3() {
    let (code, out) = run(&["complete", &fixture("chain3.pdm")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ideals 2\n"));
    assert!(out.contains("info  waybelow equals inclusion: true"));

    let (code, out) = run(&["topology", &fixture("chain3.pdm")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("opens 3\n{}\n{1,2}\n{0,1,2}\n"));
    assert!(out.ends_with("result: pass\n"));

    let (code, dot) = run(&["topology", "--dot", &fixture("chain3.pdm")]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph predomain {"));
    assert!(dot.contains("e2 [label=\"2\", shape=circle];"));
    assert!(dot.contains("i0 -> i1 [style=dashed];"));
}

#[test]
fn dual_sweeps_on_both_kinds() {
    let (code, out) = run(&["dual", &fixture("TN3.pcz")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("homomorphisms over the grid {0,1,2,inf}: 2\n"));
    assert!(out.contains("info  duals separate the natural preorder: false"));
    let (code, out) = run(&["dual", &fixture("modelX2.mdl")]);
    assert_eq!(code, 0);
    assert!(out.contains("pass  point masses separate"));
}

#[test]
fn separate_by_name_and_by_values() {
    let (code, out) = run(&["separate", &fixture("TN3.pcz"), "--f", "top", "--h", "0,0,0,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("V = {g : g(1) > 1}"));
    assert!(out.contains("pass  V and W are disjoint on lsc grid functions"));
    // f <= h has nothing to separate.
    let (code, _) = run(&["separate", &fixture("TN3.pcz"), "--f", "0,0,0,0", "--h", "top"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["separate", &fixture("TN3.pcz"), "--f", "nope", "--h", "top"]);
    assert_eq!(code, 2);
}

#[test]
fn deltas_on_the_model() {
    let (code, out) = run(&[
        "deltas",
        &fixture("modelX2.mdl"),
        "--a",
        "1,0",
        "--b",
        "0,1",
        "--eps",
        "1/2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("delta_add = 1/2"));
    assert!(out.contains("delta_split = 1/2"));
    let (code, _) = run(&[
        "deltas",
        &fixture("modelX2.mdl"),
        "--a",
        "1,0",
        "--b",
        "0,1",
        "--eps",
        "0",
    ]);
    assert_ne!(code, 0);
}

#[test]
fn checks_on_every_kind() {
    for f in ["chain3.pdm", "TN3.pcz", "modelX2.mdl"] {
        let (code, out) = run(&["check", &fixture(f)]);
        assert_eq!(code, 0, "{f}");
        assert!(out.ends_with("result: pass\n"), "{f}");
    }
}
