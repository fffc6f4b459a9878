//! End-to-end tests of the `ppm-sync` command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ppm-sync"))
}

#[test]
fn run_subcommand_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(
        &config,
        r#"
        trials = 50
        master_seed = 3

        [[points]]
        m = 64
        l = 4
        k = 2.0
        "#,
    )
    .unwrap();
    let out = dir.path().join("result.csv");

    let status = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "M,L,k,A,trials,detector,zero_capture_rate,zero_capture_lo,zero_capture_hi,\
         miss_rate,miss_lo,miss_hi,capture_fraction,capture_lo,capture_hi,\
         mean_D,var_D,chebyshev_bound,seed_base"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2); // ml + random for the single point
    assert!(rows[0].starts_with("64,4,"));
    assert!(rows[0].contains(",ml,"));
    assert!(rows[1].contains(",random,"));
}

#[test]
fn run_subcommand_seed_override_changes_results() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(
        &config,
        "trials = 40\n\n[[points]]\nm = 64\nl = 4\nk = 1.0\n",
    )
    .unwrap();

    let capture = |seed: &str| {
        let out = bin()
            .args(["run", "--config"])
            .arg(&config)
            .args(["--seed", seed, "--format", "json"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = capture("1");
    let b = capture("1");
    let c = capture("2");
    assert_eq!(a, b, "same seed must reproduce bytes");
    assert_ne!(a, c, "different seeds must differ");
}

#[test]
fn oracle_subcommand_prints_both_routes() {
    let out = bin()
        .args(["oracle", "--nu", "1", "--G", "100"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("oracle"), "{text}");
    assert!(text.contains("asymptotic"), "{text}");
    assert!(text.contains("2.5075936"), "oracle mean missing: {text}");
}

#[test]
fn report_subcommand_prints_dominance() {
    let out = bin()
        .args(["report", "--M", "4194304", "--L", "46", "--k", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("D = S_L - B_1"), "{text}");
    assert!(text.contains("Chebyshev"), "{text}");
}

#[test]
fn errors_exit_nonzero_with_one_line_message() {
    // Invalid operating point: L > M.
    let out = bin()
        .args(["report", "--M", "8", "--L", "16", "--k", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "stderr: {err}");
    assert!(err.starts_with("error: "), "stderr: {err}");

    // Unknown config key.
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "no_such_key = 1\n").unwrap();
    let out = bin()
        .args(["run", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "stderr: {err}");
    assert!(err.starts_with("error: "), "stderr: {err}");
    assert!(err.contains("no_such_key"), "stderr: {err}");
}
