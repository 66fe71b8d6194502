use sha2::{Digest, Sha256};

use selfsim_mult::cli::run;

fn go(args: &[&str]) -> selfsim_mult::cli::CliOutput {
    run(std::iter::once("selfsim-mult").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/");
    std::fs::read_to_string(format!("{path}{name}")).unwrap()
}

#[test]
fn tenth_grid_matches_golden_csv() {
    let out = go(&["scan", "--step", "1/10"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, golden("scan_step_10.csv"));
    assert_eq!(out.stdout.lines().count(), 82);
}

#[test]
fn fine_grid_matches_golden_hash() {
    let out = go(&["scan", "--step", "1/200"]);
    assert_eq!(out.code, 0);
    let digest = format!("{:x}", Sha256::digest(out.stdout.as_bytes()));
    assert_eq!(digest, golden("scan_step_200.sha256").trim());
}

#[test]
fn scan_writes_files_and_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.cfg");
    std::fs::write(&cfg, "grid_step = 1/40\noutput_format = svg\n").unwrap();
    let svg = dir.path().join("map.svg");
    let out = go(&["scan", "--config", cfg.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<rect").count(), 39 * 39 + 1);

    let csv = dir.path().join("map.csv");
    let again = go(&[
        "scan",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(again.code, 0);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("lambda,c,label\n"));
}

#[test]
fn scan_rejects_bad_config_and_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "grid_step = -1/10\n").unwrap();
    assert_eq!(go(&["scan", "--config", cfg.to_str().unwrap()]).code, 2);
    let unwritable = dir.path().join("missing").join("out.csv");
    let out = go(&["scan", "--step", "1/10", "--out", unwritable.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("i/o"));
}

#[test]
fn high_lambda_strip_is_invalid() {
    let out = go(&["scan", "--step", "1/200", "--lambda-range", "0.9,0.95"]);
    assert_eq!(out.code, 0);
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",invalid")));
}

#[test]
fn decompose_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = go(&[
        "decompose", "--lambda", "1/3", "--c", "4/9", "--u", "1/2", "--depth", "10", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("replay: ok"));
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(record["u"], "1/2");
    assert!(record["word_x"].as_str().unwrap().chars().all(|ch| "123".contains(ch)));
}

#[test]
fn certify_then_replay_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blue.json");
    let out = go(&["certify", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let replay = go(&["replay", path.to_str().unwrap()]);
    assert_eq!(replay.code, 0, "{}", replay.stderr);
    assert!(replay.stdout.starts_with("accepted"));

    let tampered = std::fs::read_to_string(&path).unwrap().replacen("\"holds\"", "\"infeasible\", \"constraint\": 3", 1);
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(go(&["replay", path.to_str().unwrap()]).code, 1);
}

#[test]
fn worked_examples_pass() {
    for which in ["ex1", "ex2", "prop", "blue-lemma"] {
        let out = go(&["examples", which]);
        assert_eq!(out.code, 0, "{which}: {}{}", out.stdout, out.stderr);
        assert!(!out.stdout.contains("FAIL"));
    }
    assert!(go(&["examples", "ex1"]).stdout.contains("6/6 checks pass"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = go(&["scan", "--step", "1/30", "--format", "svg"]);
    let b = go(&["scan", "--step", "1/30", "--format", "svg"]);
    assert_eq!(a, b);
    let c = go(&["certify", "--depth", "12"]);
    let d = go(&["certify", "--depth", "12"]);
    assert_eq!(c, d);
}
