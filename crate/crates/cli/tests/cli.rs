//! End-to-end runs of the binary: exit codes, stdout contract, file outputs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn szewarp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szewarp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Parses `residual max=<v> rms=<v>` and returns (max, rms).
fn parse_residual_line(text: &str) -> (f64, f64) {
    let line = text
        .lines()
        .find(|l| l.starts_with("residual max="))
        .unwrap_or_else(|| panic!("no residual line in {text:?}"));
    let mut parts = line.split_whitespace().skip(1);
    let max = parts
        .next()
        .unwrap()
        .strip_prefix("max=")
        .unwrap()
        .parse()
        .unwrap();
    let rms = parts
        .next()
        .unwrap()
        .strip_prefix("rms=")
        .unwrap()
        .parse()
        .unwrap();
    (max, rms)
}

const SINGLE_POINT_PROBLEM: &str = r#"{
    "lambda": 0.01,
    "samples": [ { "x": 0.0, "y": 1.0, "value": 1.0, "weight": 1.0 } ]
}"#;

fn identity_corr_json() -> String {
    let mut source = Vec::new();
    for k in 0..16 {
        let t = k as f64 / 16.0;
        source.push((t, 0.0));
    }
    for k in 0..16 {
        let t = k as f64 / 16.0;
        source.push((1.0, t));
    }
    for k in 0..16 {
        let t = k as f64 / 16.0;
        source.push((1.0 - t, 1.0));
    }
    for k in 0..16 {
        let t = k as f64 / 16.0;
        source.push((0.0, 1.0 - t));
    }
    let points: Vec<String> = source.iter().map(|p| format!("[{},{}]", p.0, p.1)).collect();
    let list = points.join(",");
    format!(r#"{{ "source": [{list}], "target": [{list}] }}"#)
}

#[test]
fn solve_single_point_fixture() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("problem.json"), SINGLE_POINT_PROBLEM).unwrap();
    let out = szewarp(&["solve", "problem.json", "--out", "solution.csv"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let (max, rms) = parse_residual_line(&stdout(&out));
    assert!((max - 0.11163521170465972).abs() < 1e-12);
    assert!((rms - max).abs() < 1e-15);
    let csv = fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "j,x_j,y_j,A_j,lambda_j,c_j,residual_j");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let c: f64 = row[5].parse().unwrap();
    assert!((c - 11.163521170465971).abs() < 1e-9);
}

#[test]
fn solve_rejects_empty_samples_with_field_name() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("problem.json"),
        r#"{ "lambda": 0.1, "samples": [] }"#,
    )
    .unwrap();
    let out = szewarp(&["solve", "problem.json", "--out", "x.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("samples"), "stderr: {}", stderr(&out));
}

#[test]
fn solve_lambda_flag_beats_file_and_notes_it() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("problem.json"), SINGLE_POINT_PROBLEM).unwrap();
    let out = szewarp(
        &["solve", "problem.json", "--out", "s.csv", "--lambda", "0.1"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stderr(&out).contains("overrides"));
    // residual for lambda = 0.1 is 0.5568…, not the file value's 0.1116…
    let (max, _) = parse_residual_line(&stdout(&out));
    assert!((max - 0.5568627241441779).abs() < 1e-12);
}

#[test]
fn solve_with_dense_strategy_matches_recursive() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("problem.json"), SINGLE_POINT_PROBLEM).unwrap();
    let a = szewarp(
        &["solve", "problem.json", "--out", "a.csv", "--solver", "recursive"],
        dir.path(),
    );
    let b = szewarp(
        &["solve", "problem.json", "--out", "b.csv", "--solver", "dense"],
        dir.path(),
    );
    assert!(a.status.success() && b.status.success());
    let (max_a, _) = parse_residual_line(&stdout(&a));
    let (max_b, _) = parse_residual_line(&stdout(&b));
    assert!((max_a - max_b).abs() <= 1e-9 * (1.0 + max_a.abs()));
}

#[test]
fn convergence_fixture_rows() {
    let dir = tempfile::tempdir().unwrap();
    // λ₁ = 1 fixture: residual λ/(λ + 1/4π)
    fs::write(dir.path().join("problem.json"), SINGLE_POINT_PROBLEM).unwrap();
    let out = szewarp(
        &[
            "convergence",
            "problem.json",
            "--schedule",
            "1e-1,1e-2,1e-3",
            "--out",
            "report.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "lambda,max_residual,rms_residual,status");
    assert_eq!(lines.len(), 4);
    let expected = [0.5568627241441779, 0.11163521170465972, 0.012410416718397155];
    for (line, want) in lines[1..].iter().zip(expected) {
        let max: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((max - want).abs() < 1e-12, "row {line}");
    }
    // final summary line reports the smallest lambda's residual
    let (max, _) = parse_residual_line(&stdout(&out));
    assert!((max - 0.012410416718397155).abs() < 1e-12);
}

#[test]
fn convergence_rejects_non_decreasing_schedule() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("problem.json"), SINGLE_POINT_PROBLEM).unwrap();
    for schedule in ["1e-2,1e-1", "1e-2,1e-2", "0,1e-3"] {
        let out = szewarp(
            &[
                "convergence",
                "problem.json",
                "--schedule",
                schedule,
                "--out",
                "r.csv",
            ],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(2), "schedule {schedule}");
    }
}

#[test]
fn solve_conditioning_failure_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // y this small overflows the λ-scaled kernel and must surface as a
    // solver error, not a panic or a silent garbage solution
    fs::write(
        dir.path().join("problem.json"),
        r#"{ "lambda": 0.001, "samples": [ { "x": 0.0, "y": 1e-308, "value": 1.0, "weight": 1.0 } ] }"#,
    )
    .unwrap();
    let out = szewarp(&["solve", "problem.json", "--out", "s.csv"], dir.path());
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn warp_missing_image_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("corr.json"), identity_corr_json()).unwrap();
    let out = szewarp(
        &["warp", "corr.json", "missing.pgm", "--out", "o.pgm"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn warp_identity_keeps_interior_pixels() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("corr.json"), identity_corr_json()).unwrap();
    let demo = szewarp(
        &["grid-demo", "--n", "8", "--alpha", "0", "--size", "128", "--outdir", "demo"],
        dir.path(),
    );
    assert!(demo.status.success(), "stderr: {}", stderr(&demo));
    let out = szewarp(
        &[
            "warp",
            "corr.json",
            "demo/original.pgm",
            "--out",
            "warped.pgm",
            "--report",
            "report.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("pixels=16384 failed="));
    let original = fs::read(dir.path().join("demo/original.pgm")).unwrap();
    let warped = fs::read(dir.path().join("warped.pgm")).unwrap();
    let a = szewarp_core_read(&original);
    let b = szewarp_core_read(&warped);
    let m = szewarp::raster::metrics(
        &a,
        &b,
        Some(szewarp::raster::PixelRect::central(128, 128, 0.9)),
    )
    .unwrap();
    assert!(
        m.exact_match_fraction >= 0.99,
        "identity warp exact match {}",
        m.exact_match_fraction
    );
    let report = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.starts_with("pixels,mapped,failed,out_of_range,min_det,max_det,"));
}

fn szewarp_core_read(bytes: &[u8]) -> szewarp::raster::GreyImage {
    szewarp::raster::read_pgm(bytes).unwrap()
}

#[test]
fn grid_demo_emits_all_artifacts_and_recovers() {
    let dir = tempfile::tempdir().unwrap();
    let out = szewarp(
        &[
            "grid-demo",
            "--n",
            "8",
            "--alpha",
            "0.25",
            "--size",
            "128",
            "--outdir",
            "out/demo",
            "--probes",
            "8",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    for name in [
        "original.pgm",
        "distorted.pgm",
        "recovered.pgm",
        "grid.svg",
        "metrics.csv",
        "warp_report.csv",
        "field.csv",
    ] {
        assert!(
            dir.path().join("out/demo").join(name).exists(),
            "missing {name}"
        );
    }
    let metrics = fs::read_to_string(dir.path().join("out/demo/metrics.csv")).unwrap();
    let central = metrics
        .lines()
        .find(|l| l.starts_with("central90"))
        .expect("central90 row");
    let exact: f64 = central.split(',').nth(3).unwrap().parse().unwrap();
    assert!(exact >= 0.95, "interior exact match {exact}");
    let field = fs::read_to_string(dir.path().join("out/demo/field.csv")).unwrap();
    assert_eq!(field.lines().count(), 1 + 8 * 8);
}

#[test]
fn grid_demo_alpha_zero_yields_near_identical_images() {
    let dir = tempfile::tempdir().unwrap();
    let out = szewarp(
        &["grid-demo", "--n", "4", "--alpha", "0", "--size", "96", "--outdir", "d"],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let a = szewarp_core_read(&fs::read(dir.path().join("d/original.pgm")).unwrap());
    let b = szewarp_core_read(&fs::read(dir.path().join("d/distorted.pgm")).unwrap());
    let c = szewarp_core_read(&fs::read(dir.path().join("d/recovered.pgm")).unwrap());
    let interior = szewarp::raster::PixelRect::central(96, 96, 0.9);
    let ab = szewarp::raster::metrics(&a, &b, Some(interior)).unwrap();
    let ac = szewarp::raster::metrics(&a, &c, Some(interior)).unwrap();
    assert!(ab.exact_match_fraction >= 0.99, "warp {}", ab.exact_match_fraction);
    assert!(ac.exact_match_fraction >= 0.99, "recover {}", ac.exact_match_fraction);
}

#[test]
fn grid_demo_runs_are_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        let out = szewarp(
            &["grid-demo", "--n", "4", "--alpha", "0.2", "--size", "64", "--outdir", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    for name in [
        "original.pgm",
        "distorted.pgm",
        "recovered.pgm",
        "grid.svg",
        "metrics.csv",
        "warp_report.csv",
    ] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn solvers_lists_registry() {
    let dir = tempfile::tempdir().unwrap();
    let out = szewarp(&["solvers"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("recursive"));
    assert!(text.contains("dense"));
}

#[test]
fn rejects_bad_alpha_and_bad_pattern_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = szewarp(
        &["grid-demo", "--n", "4", "--alpha", "1.5", "--size", "64", "--outdir", "x"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
