use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_u2point")).args(args).env("U2POINT_OUT_DIR", dir).output().expect("binary runs")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path).unwrap().lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

const PI: &str = "3.141592653589793";

#[test]
fn self_dual_dirichlet_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["spectrum", "--theta-plus", PI, "--theta-minus", PI, "--e-max", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("spectrum.csv"));
    assert_eq!(rows.len(), 4);
    for (i, r) in rows.iter().enumerate() {
        let n = (i + 1) as f64;
        assert_eq!(r[0], (i + 1).to_string());
        assert!((r[1].parse::<f64>().unwrap() - n * n).abs() < 1e-9);
        assert_eq!(r[2], "2");
    }
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectrum.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config"]["box"]["e_max"], 20.0);
    assert!(dir.path().join("spectrum.json").exists());
}

#[test]
fn separated_interaction_does_not_transmit() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["scatter", "--theta-plus", "1", "--theta-minus", "2.5", "--mu", "0", "--steps", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("scatter.csv"));
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r[6].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn outputs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args =
        ["spectrum", "--theta-plus", "4.2", "--theta-minus", "1.3", "--mu", "0.9", "--nu", "2", "--out-dir", "."];
    // same config, including the output directory echoed in the metadata
    for d in [&a, &b] {
        let out = Command::new(env!("CARGO_BIN_EXE_u2point")).args(args).current_dir(d.path()).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    for f in ["spectrum.csv", "spectrum.csv.meta.json", "spectrum.json", "spectrum.json.meta.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"box": {"e_max": 5.0}, "output": {"stem": "fromfile"}}"#).unwrap();
    let out = run(
        dir.path(),
        &["spectrum", "--theta-plus", PI, "--theta-minus", PI, "--e-max", "50", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("fromfile.csv"));
    assert_eq!(rows.len(), 2);
}

#[test]
fn degrees_flag_converts_angles() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["bound", "--degrees", "--theta-plus", "90", "--theta-minus", "180", "--stem", "deg"]);
    run(dir.path(), &["bound", "--theta-plus", "1.5707963267948966", "--theta-minus", PI, "--stem", "rad"]);
    assert_eq!(csv_rows(&dir.path().join("deg.csv")), csv_rows(&dir.path().join("rad.csv")));
}

#[test]
fn bound_states_from_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bound", "--L-plus", "0.5", "--L-minus", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("bound.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "plus");
    assert!((rows[0][2].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn verify_theorem1_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "theorem1", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS theorem1"));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify_theorem1.json")).unwrap()).unwrap();
    assert_eq!(rep["passed"], true);
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // a level near E = -200 is too steep for the n = 2000 grid to reach 1e-4
    let out = run(dir.path(), &["verify", "oracle", "--theta-plus", "3.0", "--theta-minus", "1"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["spectrum", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["spectrum", "--e-min", "10", "--e-max", "1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["scatter", "--k-min", "0"]).status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"box": {"width": 1}}"#).unwrap();
    assert_eq!(run(dir.path(), &["spectrum", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert!(!dir.path().join("spectrum.csv").exists());
}

#[test]
fn theta_plus_cycle_shifts_one_channel() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["anholonomy", "--theta-minus", "1", "--mu", "0", "--nu", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("anholonomy.json")).unwrap()).unwrap();
    assert_eq!(rep["shift_plus"], -1);
    assert_eq!(rep["shift_minus"], 0);
    assert_eq!(rep["permutation_plus"][0], serde_json::Value::Null);
    let header = fs::read_to_string(dir.path().join("anholonomy_levels.csv")).unwrap();
    assert!(header.starts_with("step,channel,level_index,energy\n"));
}

#[test]
fn nu_circle_reports_berry_phase() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "anholonomy",
            "--cycle",
            "nu-circle",
            "--theta-plus",
            "2",
            "--theta-minus",
            "0.5",
            "--mu",
            "1",
            "--steps",
            "100",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("anholonomy.json")).unwrap()).unwrap();
    let phase = rep["berry"]["phase"].as_f64().unwrap();
    let omega = rep["berry"]["solid_angle"].as_f64().unwrap();
    assert!((phase.abs() - omega / 2.0).abs() < 1e-2);
}

#[test]
fn sweep_passes_and_writes_gluing() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["sweep", "--resolution", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let gluing = csv_rows(&dir.path().join("sweep_gluing.csv"));
    assert_eq!(gluing.len(), 28);
    assert!(dir.path().join("sweep_mobius.json.meta.json").exists());
}
