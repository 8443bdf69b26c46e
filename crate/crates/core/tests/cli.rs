use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn twoit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoit")).args(args).env_remove("TWOIT_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

const BALANCE: [&str; 19] = [
    "test-two-prop", "--x1", "131", "--n1", "181", "--x2", "119", "--n2", "181", "--ha", "-0.1", "0.1", "--hp",
    "0.1", "0.3", "--prior", "uniform", "--seed", "7",
];

#[test]
fn balance_example_reports_mass_ha() {
    let v = json(&twoit(&BALANCE));
    let m = v["posterior"]["mass_ha"].as_f64().unwrap();
    assert!((m - 0.764).abs() < 0.01, "{m}");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["draws"], 100_000);
    assert!(v["verdict"]["outcome"].is_string());
}

#[test]
fn pi_below_half_is_rejected() {
    let mut args = BALANCE.to_vec();
    args.extend(["--pi", "0.4"]);
    let out = twoit(&args);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("pi must exceed 0.5"));
}

#[test]
fn malformed_counts_exit_two() {
    let out = twoit(&["test-prop", "--x", "50", "--n", "40", "--ha", "0.1", "0.2", "--hp", "0.3", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = twoit(&["test-prop", "--x", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let a = twoit(&BALANCE);
    let b = twoit(&BALANCE);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let args: Vec<&str> = BALANCE[..BALANCE.len() - 2].to_vec();
    let out = Command::new(env!("CARGO_BIN_EXE_twoit")).args(&args).env("TWOIT_SEED", "7").output().unwrap();
    assert_eq!(out.stdout, twoit(&BALANCE).stdout);
}

#[test]
fn golden_exact_report() {
    let out = twoit(&["test-prop", "--x", "7", "--n", "40", "--ha", "0.1", "0.2", "--hp", "0.2", "0.3"]);
    assert!(out.status.success());
    let want = std::fs::read_to_string(golden("test_prop.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want);
}

#[test]
fn golden_field_order() {
    let out = twoit(&BALANCE);
    let want: Value = serde_json::from_str(&std::fs::read_to_string(golden("test_two_prop.json")).unwrap()).unwrap();
    let got = json(&out);
    fn keys(v: &Value) -> Vec<String> {
        match v {
            Value::Object(m) => m.iter().flat_map(|(k, v)| std::iter::once(k.clone()).chain(keys(v))).collect(),
            _ => vec![],
        }
    }
    assert_eq!(keys(&got), keys(&want));
    assert_eq!(got, want);
}

#[test]
fn csv_output_has_header_and_one_row() {
    let mut args = BALANCE.to_vec();
    args.extend(["--format", "csv"]);
    let out = twoit(&args);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("command,point,cri_lower"));
}

#[test]
fn summary_ratio_matches_second_study() {
    let v = json(&twoit(&[
        "test-summary-ratio", "--estimate", "1.76", "--ci", "1.00", "3.08", "--hp", "1.1", "2.95", "--ha", "0.9", "1.1",
    ]));
    let p = v["posterior"]["point"].as_f64().unwrap();
    assert!((p - 1.80).abs() < 0.15);
    assert!(v["prior_masses"]["ha"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_oc_is_worker_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(
        &cfg,
        "situation = \"mean\"\ntruth_a = 0.0\ntruth_p = 1.0\nha = [-0.5, 0.5]\nhp = [0.5, 1.5]\nrule = \"cri\"\n\
         n_grid = [30, 100]\nn_sims = 300\nseed = 4\n",
    )
    .unwrap();
    let mut csvs = Vec::new();
    for w in ["1", "8"] {
        let out_dir = dir.path().join(w);
        let out = twoit(&[
            "simulate-oc", "--config", cfg.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap(), "--workers", w,
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        csvs.push(std::fs::read_to_string(out_dir.join("oc.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert!(csvs[0].starts_with("situation,scenario_id,n,truth,p_accept_hp"));
}

#[test]
fn replicate_or_consistency_flags_label_swap() {
    let out = twoit(&["replicate", "or-consistency"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("labels swapped")));
}

#[test]
fn replicate_tables_writes_bias_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = twoit(&["replicate", "tables", "--n", "400", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bias = std::fs::read_to_string(dir.path().join("bias.csv")).unwrap();
    assert!(bias.lines().any(|l| l.starts_with("400,HA,yes,")));
    assert!(dir.path().join("tables.json").exists());
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "situation = \"mean\"\nbogus = 1\n").unwrap();
    let out = twoit(&["simulate-oc", "--config", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
