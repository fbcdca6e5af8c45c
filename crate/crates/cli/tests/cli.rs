//! End-to-end checks of the `cacis` binary: exit codes, file formats,
//! manifest replay, and determinism.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cacis(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cacis"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("CACIS_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn stderr_json(output: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&output.stderr);
    let line = text.lines().last().expect("stderr has an error line");
    serde_json::from_str(line).expect("stderr line is JSON")
}

#[test]
fn design_reports_compressions_dof_and_holes() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["design", "7", "5"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["valid_compressions"], serde_json::json!([1, 7]));
    let configs = report["configurations"].as_array().unwrap();
    let dofs: Vec<u64> = configs.iter().map(|c| c["dof"].as_u64().unwrap()).collect();
    let holes: Vec<i64> = configs
        .iter()
        .map(|c| c["first_hole"].as_i64().unwrap())
        .collect();
    assert_eq!(dofs, vec![45, 61]);
    assert_eq!(holes, vec![12, 31]);
    assert!(dir.path().join("design_M7_N5.json").exists());
    assert!(dir.path().join("design_M7_N5.manifest.json").exists());
}

#[test]
fn design_narrows_to_requested_compression() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["design", "4", "3", "--p", "2"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let config = &report["configurations"][0];
    assert_eq!(config["dof"], 17);
    assert_eq!(config["first_hole"], 8);
}

#[test]
fn design_rejects_shared_factors() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["design", "6", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "NotCoprime");
}

#[test]
fn weights_oracle_run_counts_realizable_lags() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["weights", "4", "3", "2", "--oracle"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("weights_M4_N3_p2.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("lag,z_closed,z_brute"));
    let nonzero = lines
        .filter(|l| l.split(',').nth(1) != Some("0"))
        .count();
    assert_eq!(nonzero, 17);
}

#[test]
fn weights_zero_lag_counts_positions() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["weights", "8", "9", "8"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("weights_M8_N9_p8.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "0,16"));
}

#[test]
fn weights_table_is_symmetric() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["weights", "7", "5", "1"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("weights_M7_N5_p1.csv")).unwrap();
    let rows: Vec<(i64, u64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            (
                f.next().unwrap().parse().unwrap(),
                f.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    for &(lag, z) in &rows {
        let mirrored = rows.iter().find(|&&(l, _)| l == -lag).unwrap().1;
        assert_eq!(z, mirrored);
    }
}

#[test]
fn bias_oracle_agrees() {
    let dir = TempDir::new().unwrap();
    let out = cacis(
        dir.path(),
        &["bias", "4", "3", "2", "--grid", "4096", "--oracle"],
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("bias_M4_N3_p2_g4096.csv")).unwrap();
    assert!(csv.starts_with("omega,w_closed,w_dft\n"));
    assert_eq!(csv.lines().count(), 1 + 4096);
}

#[test]
fn bias_prototype_emits_transform_only() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["bias", "7", "5", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("p = 1"));
    let csv = fs::read_to_string(dir.path().join("bias_M7_N5_p1_g4096.csv")).unwrap();
    assert!(csv.starts_with("omega,w_dft\n"));
}

#[test]
fn bias_rejects_coarse_grid() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["bias", "9", "8", "9", "--grid", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "GridTooCoarse");
}

#[test]
fn bias_rejects_non_positive_normalization() {
    let dir = TempDir::new().unwrap();
    let out = cacis(dir.path(), &["bias", "4", "3", "2", "--s", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "InvalidNormalization");
}

fn reported_peaks(output: &Output) -> Vec<f64> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .filter(|l| l.starts_with("peak "))
        .map(|l| {
            l.split("omega/pi = ")
                .nth(1)
                .unwrap()
                .split(',')
                .next()
                .unwrap()
                .trim()
                .parse()
                .unwrap()
        })
        .collect()
}

/// Grid bin of a reported `omega/pi` value, and the bin nearest to a true
/// frequency, on the `omega_k = -pi + 2*pi*k/grid` convention.
fn bin_of(freq_over_pi: f64, grid: usize) -> i64 {
    ((freq_over_pi + 1.0) * grid as f64 / 2.0).round() as i64
}

#[test]
fn estimate_locates_single_peak() {
    let dir = TempDir::new().unwrap();
    let out = cacis(
        dir.path(),
        &[
            "estimate", "7", "5", "1", "--freqs", "0.1", "--snapshots", "10", "--seed", "1",
        ],
    );
    assert!(out.status.success());
    let peaks = reported_peaks(&out);
    assert_eq!(peaks.len(), 1);
    assert!((bin_of(peaks[0], 4096) - bin_of(0.1, 4096)).abs() <= 1);
    for suffix in ["_spectrum.csv", "_autocorr.csv", ".manifest.json"] {
        assert!(dir
            .path()
            .join(format!("estimate_M7_N5_p1_L10_s1{suffix}"))
            .exists());
    }
}

#[test]
fn estimate_locates_three_peaks() {
    let dir = TempDir::new().unwrap();
    let out = cacis(
        dir.path(),
        &[
            "estimate", "7", "5", "1", "--freqs", "0.1,0.3,0.6", "--snapshots", "10", "--seed",
            "20",
        ],
    );
    assert!(out.status.success());
    let mut peaks = reported_peaks(&out);
    assert_eq!(peaks.len(), 3);
    peaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (freq, truth) in peaks.iter().zip([0.1, 0.3, 0.6]) {
        assert!((bin_of(*freq, 4096) - bin_of(truth, 4096)).abs() <= 1);
    }
}

#[test]
fn estimate_is_reproducible_and_manifest_replays() {
    let args = [
        "estimate", "7", "5", "7", "--freqs", "0.1,0.6", "--snapshots", "2", "--seed", "9",
        "--grid", "2048",
    ];
    let dir_a = TempDir::new().unwrap();
    let dir_b = TempDir::new().unwrap();
    assert!(cacis(dir_a.path(), &args).status.success());
    assert!(cacis(dir_b.path(), &args).status.success());

    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir_a.path().join("estimate_M7_N5_p7_L2_s9.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "estimate");
    assert_eq!(manifest["seed"], 9);
    assert_eq!(manifest["parameters"]["grid"], 2048);

    // replay from the manifest's recorded parameters into a third directory
    let params = &manifest["parameters"];
    let freqs: Vec<String> = params["freqs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_f64().unwrap().to_string())
        .collect();
    let replay_args = vec![
        "estimate".to_string(),
        params["m"].to_string(),
        params["n"].to_string(),
        params["p"].to_string(),
        "--freqs".to_string(),
        freqs.join(","),
        "--snapshots".to_string(),
        params["snapshots"].to_string(),
        "--seed".to_string(),
        params["seed"].to_string(),
        "--grid".to_string(),
        params["grid"].to_string(),
    ];
    let dir_c = TempDir::new().unwrap();
    let replay_refs: Vec<&str> = replay_args.iter().map(String::as_str).collect();
    assert!(cacis(dir_c.path(), &replay_refs).status.success());

    for output in manifest["outputs"].as_array().unwrap() {
        let name = output.as_str().unwrap();
        let a = fs::read(dir_a.path().join(name)).unwrap();
        let b = fs::read(dir_b.path().join(name)).unwrap();
        let c = fs::read(dir_c.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs across identical runs");
        assert_eq!(a, c, "{name} differs after manifest replay");
    }
}

#[test]
fn estimate_ingests_external_signal() {
    let dir = TempDir::new().unwrap();
    // two snapshots of a pure tone at 0.25*pi, Nyquist rate, stride 12
    let mut csv = String::from("re,im\n");
    for t in 0..24 {
        let phase = 0.25 * PI * t as f64;
        csv.push_str(&format!("{},{}\n", phase.cos(), phase.sin()));
    }
    let input = dir.path().join("tone.csv");
    fs::write(&input, csv).unwrap();

    let out = cacis(
        dir.path(),
        &[
            "estimate",
            "4",
            "3",
            "2",
            "--snapshots",
            "2",
            "--grid",
            "1024",
            "--input",
            input.to_str().unwrap(),
        ],
    );
    assert!(out.status.success());
    let peaks = reported_peaks(&out);
    assert!((bin_of(peaks[0], 1024) - bin_of(0.25, 1024)).abs() <= 1);

    // a truncated file cannot fill the requested snapshots
    let short = dir.path().join("short.csv");
    fs::write(&short, "1.0,0.0\n0.0,1.0\n").unwrap();
    let out = cacis(
        dir.path(),
        &[
            "estimate",
            "4",
            "3",
            "2",
            "--snapshots",
            "2",
            "--input",
            short.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "InsufficientSignal");
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cacis"))
        .args(["weights", "4", "3", "2"])
        .env("CACIS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("weights_M4_N3_p2.csv").exists());
    assert!(dir.path().join("weights_M4_N3_p2.manifest.json").exists());
}

#[test]
fn malformed_frequency_list_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let out = cacis(
        dir.path(),
        &["estimate", "7", "5", "1", "--freqs", "1.5", "--snapshots", "2"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "FrequencyOutOfRange");
}
