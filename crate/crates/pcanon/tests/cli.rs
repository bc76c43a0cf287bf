use pcanon::runner::{self, from_json, Algorithm, Format, RunConfig, RunError};
use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pcanon"))
}

fn rendered(c: &RunConfig) -> String {
    runner::run(c).unwrap().rendered.unwrap()
}

#[test]
fn a2_mod_2_is_identity() {
    let out = runner::run(&RunConfig::preset("A2", 2, Algorithm::Simple)).unwrap();
    assert_eq!(out.records.len(), 6);
    for r in &out.records {
        assert_eq!(r.w, r.x);
        assert_eq!(r.m, vec![(0, 1)]);
    }
}

#[test]
fn parabolic_requires_main() {
    let mut c = RunConfig::preset("A2", 2, Algorithm::Simple);
    c.parabolic = vec![0];
    assert!(matches!(runner::run(&c), Err(RunError::Config(_))));
    let st = bin().args(["--cartan", "A2", "-p", "2", "--parabolic", "0", "--algorithm", "simple"]).output().unwrap();
    assert!(!st.status.success());
    assert!(String::from_utf8_lossy(&st.stderr).contains("parabolic"));
}

#[test]
fn json_round_trip() {
    let mut c = RunConfig::preset("B2", 2, Algorithm::Main);
    c.format = Format::Json;
    c.with_h = true;
    let text = rendered(&c);
    let parsed = from_json(&text).unwrap();
    assert_eq!(parsed.p, 2);
    assert_eq!(parsed.records, runner::run(&c).unwrap().records);
    assert_eq!(runner::to_json(&parsed).unwrap(), text);
}

#[test]
fn h_of_identity_under_generator() {
    let mut c = RunConfig::preset("A1", 0, Algorithm::Main);
    c.with_h = true;
    let out = runner::run(&c).unwrap();
    let r = out.records.iter().find(|r| r.w == "0" && r.x == "id").unwrap();
    assert_eq!(r.h, Some(vec![(1, 1)]));
    assert!(r.m.is_empty());
}

fn resume_matches(algorithm: Algorithm, dir: &Path) {
    let mut c = RunConfig::preset("A3", 2, algorithm);
    let fresh = rendered(&c);
    c.checkpoint = Some(dir.to_path_buf());
    c.stop_after = Some(5);
    let mut rounds = 0;
    let last = loop {
        rounds += 1;
        let out = runner::run(&c).unwrap();
        if out.complete {
            break out.rendered.unwrap();
        }
        assert!(rounds < 30);
    };
    assert!(rounds > 2);
    assert_eq!(last, fresh);
    c.stop_after = None;
    let again = runner::run(&c).unwrap();
    assert_eq!(again.computed, 0);
    assert_eq!(again.rendered.unwrap(), fresh);
}

#[test]
fn resume_main() {
    let dir = tempfile::tempdir().unwrap();
    resume_matches(Algorithm::Main, dir.path());
}

#[test]
fn resume_simple() {
    let dir = tempfile::tempdir().unwrap();
    resume_matches(Algorithm::Simple, dir.path());
}

#[test]
fn empty_directory_starts_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = RunConfig::preset("A2", 3, Algorithm::Both);
    c.checkpoint = Some(dir.path().to_path_buf());
    let out = runner::run(&c).unwrap();
    assert!(out.complete);
    assert!(dir.path().join("main/manifest.json").exists());
    assert!(dir.path().join("simple/manifest.json").exists());
}

fn partial(dir: &Path) -> RunConfig {
    let mut c = RunConfig::preset("A3", 2, Algorithm::Main);
    c.checkpoint = Some(dir.to_path_buf());
    c.stop_after = Some(4);
    assert!(!runner::run(&c).unwrap().complete);
    c
}

#[test]
fn corrupt_file_detected() {
    let dir = tempfile::tempdir().unwrap();
    let c = partial(dir.path());
    let file = dir.path().join("main/0.txt");
    let mut text = fs::read_to_string(&file).unwrap();
    text.push('\n');
    fs::write(&file, text).unwrap();
    assert!(matches!(runner::run(&c), Err(RunError::CorruptCheckpoint(_))));
}

#[test]
fn version_mismatch_detected() {
    let dir = tempfile::tempdir().unwrap();
    let c = partial(dir.path());
    let file = dir.path().join("main/manifest.json");
    let text = fs::read_to_string(&file).unwrap().replace("pcanon-checkpoint-1", "pcanon-checkpoint-0");
    fs::write(&file, text).unwrap();
    assert!(matches!(runner::run(&c), Err(RunError::VersionMismatch(_))));
}

#[test]
fn thread_count_does_not_change_output() {
    let mut c = RunConfig::preset("A3", 2, Algorithm::Both);
    let one = rendered(&c);
    c.threads = 4;
    assert_eq!(rendered(&c), one);
}

#[test]
fn binary_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.tsv");
    let args = ["--cartan", "B2", "-p", "2", "--algorithm", "both", "--with-h"];
    let st = bin().args(args).arg("-o").arg(&path).status().unwrap();
    assert!(st.success());
    let stdout = bin().args(args).output().unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap(), String::from_utf8(stdout.stdout).unwrap());
}

#[test]
fn braid_export_then_import() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = RunConfig::preset("B2", 2, Algorithm::Main);
    c.braid_export = Some(dir.path().to_path_buf());
    let want = rendered(&c);
    assert!(dir.path().join("braid_0_1.txt").exists());
    assert!(dir.path().join("braid_1_0.txt").exists());
    let mut d = RunConfig::preset("B2", 2, Algorithm::Main);
    d.derive_braids = false;
    assert!(runner::run(&d).is_err());
    d.braid_imports = vec![dir.path().join("braid_0_1.txt"), dir.path().join("braid_1_0.txt")];
    assert_eq!(rendered(&d), want);
}

#[test]
fn cartan_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.txt");
    fs::write(&path, "2 -2\n-1 2\n").unwrap();
    let from_file = bin().args(["-p", "2", "--cartan-file"]).arg(&path).output().unwrap();
    assert!(from_file.status.success());
    let preset = bin().args(["-p", "2", "--cartan", "B2"]).output().unwrap();
    let (a, b) = (String::from_utf8(from_file.stdout).unwrap(), String::from_utf8(preset.stdout).unwrap());
    assert_eq!(a.lines().count(), b.lines().count());
}
