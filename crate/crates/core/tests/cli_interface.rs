//! End-to-end checks of the `meandist` binary: report schema, byte-identical
//! reruns, exit codes, file loading.

use meandist::report::Report;
use std::process::{Command, Output};

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meandist"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn model_eval_json_schema_and_values() {
    let out = run_cli(&["model-eval", "--space", "torus:1,1"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).expect("valid report JSON");
    assert_eq!(report.command, "model-eval");
    assert_eq!(report.version, env!("CARGO_PKG_VERSION"));
    assert_eq!(report.inputs.get("space").map(String::as_str), Some("torus:1,1"));
    let f = report.results.iter().find(|r| r.quantity == "f").unwrap();
    assert!((f.value - 0.38260).abs() < 5e-5);
    assert_eq!(f.provenance, "exact");
    let ratio = report
        .results
        .iter()
        .find(|r| r.quantity.starts_with("ratio"))
        .unwrap();
    assert!((ratio.value - 0.54108).abs() < 5e-5);
    assert_eq!(ratio.theorem.as_deref(), Some("t1_1"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--suite", "t4_1"];
    let a = run_cli(&args);
    let b = run_cli(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same config must emit identical bytes");

    let args = ["mesh-eval", "--generator", "icosphere:2", "--source", "sample:5", "--seed", "7"];
    let a = run_cli(&args);
    let b = run_cli(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    // 0: verification passes
    let ok = run_cli(&["verify", "--suite", "t4_1"]);
    assert_eq!(ok.status.code(), Some(0));
    // 2: input errors
    let bad_space = run_cli(&["model-eval", "--space", "moebius:1"]);
    assert_eq!(bad_space.status.code(), Some(2));
    assert!(!bad_space.stderr.is_empty());
    let bad_flag = run_cli(&["verify", "--suite", "t9_9"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_usage = run_cli(&["frobnicate"]);
    assert_eq!(bad_usage.status.code(), Some(2));
    // thick neck refused by the asymptotic model
    let thick = run_cli(&["dumbbell-sweep", "--L", "1,2", "--rule", "fixed:0.5"]);
    assert_eq!(thick.status.code(), Some(2));
}

#[test]
fn failed_verification_exits_one() {
    // a cycle graph is nowhere near the sphere equality case, so requesting
    // the sphere upper-bound equality check must fail with exit code 1
    let out = run_cli(&["mesh-eval", "--generator", "cycle:16,1", "--theorem", "p2_5"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    let row = report
        .results
        .iter()
        .find(|r| r.theorem.as_deref() == Some("p2_5"))
        .unwrap();
    assert_eq!(row.verdict.as_deref(), Some("fail"));
}

#[test]
fn verify_all_suites_individually() {
    for suite in ["t1_1", "p2_5", "t4_1", "t4_2", "lemma3_1", "section2", "bishop_gromov"] {
        let out = run_cli(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "suite {suite} failed: {}", String::from_utf8_lossy(&out.stdout));
        let report: Report = serde_json::from_slice(&out.stdout).unwrap();
        assert!(!report.results.is_empty());
        assert!(report.results.iter().all(|r| r.verdict.is_some()), "suite rows carry verdicts");
    }
}

#[test]
fn dumbbell_sweep_csv_columns_and_direction() {
    let out = run_cli(&["dumbbell-sweep"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("L,C,ratio_p,ratio_q,source"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    let first_p: f64 = rows[0][2].parse().unwrap();
    let last_p: f64 = rows[4][2].parse().unwrap();
    assert!(last_p < first_p, "ratio_p must fall along the sweep");
    assert!(rows.iter().all(|r| r[4] == "asymptotic"));
}

#[test]
fn dumbbell_sweep_mesh_mode_row_flagged() {
    let out = run_cli(&["dumbbell-sweep", "--L", "5", "--mode", "mesh"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with(",mesh"), "mesh row must be flagged: {row}");
}

#[test]
fn mesh_eval_loads_off_and_obj_files() {
    let dir = tempfile::tempdir().unwrap();
    let off_path = dir.path().join("sheet.off");
    std::fs::write(
        &off_path,
        "OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n",
    )
    .unwrap();
    let out = run_cli(&["mesh-eval", "--mesh", off_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    let vol = report.results.iter().find(|r| r.quantity == "volume").unwrap();
    assert!((vol.value - 1.0).abs() < 1e-12);

    let obj_path = dir.path().join("sheet.obj");
    std::fs::write(
        &obj_path,
        "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3\nf 1 3 4\nusemtl x\n",
    )
    .unwrap();
    let out = run_cli(&["mesh-eval", "--mesh", obj_path.to_str().unwrap()]);
    assert!(out.status.success());
    // warning about the ignored record goes to stderr
    assert!(String::from_utf8_lossy(&out.stderr).contains("usemtl"));

    // disconnected mesh: diagnostic and exit 2
    let two_path = dir.path().join("two.off");
    std::fs::write(
        &two_path,
        "OFF\n6 2 0\n0 0 0\n1 0 0\n0 1 0\n5 0 0\n6 0 0\n5 1 0\n3 0 1 2\n3 3 4 5\n",
    )
    .unwrap();
    let out = run_cli(&["mesh-eval", "--mesh", two_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("connected"));
}

#[test]
fn mesh_eval_icosphere_all_sources_ratio_band() {
    let out = run_cli(&["mesh-eval", "--generator", "icosphere:3", "--source", "all"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    let min_ratio = report
        .results
        .iter()
        .find(|r| r.quantity == "min ratio[f/(dV)]")
        .unwrap()
        .value;
    assert!(
        (0.49..=0.51).contains(&min_ratio),
        "icosphere-3 graph min ratio {min_ratio} outside [0.49, 0.51]"
    );
}

#[test]
fn emit_off_round_trips_generated_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dumbbell.off");
    let out = run_cli(&[
        "mesh-eval",
        "--generator",
        "dumbbell:5,0.008,12,12,4",
        "--source",
        "p",
        "--emit-off",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the emitted OFF parses and evaluates to the same volume
    let reload = run_cli(&["mesh-eval", "--mesh", path.to_str().unwrap()]);
    assert!(reload.status.success(), "{}", String::from_utf8_lossy(&reload.stderr));
    let a: Report = serde_json::from_slice(&out.stdout).unwrap();
    let b: Report = serde_json::from_slice(&reload.stdout).unwrap();
    let vol = |r: &Report| {
        r.results
            .iter()
            .find(|row| row.quantity == "volume")
            .unwrap()
            .value
    };
    assert!((vol(&a) - vol(&b)).abs() < 1e-12);
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_cli(&["model-eval", "--space", "circle:1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.command, "model-eval");
}

#[test]
fn csv_format_for_reports() {
    let out = run_cli(&["model-eval", "--space", "circle:1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("quantity,value,provenance,theorem,verdict\n"));
    assert!(text.contains("f,0.25,exact"));
}

#[test]
fn tolerance_overrides_are_accepted_and_validated() {
    let out = run_cli(&["verify", "--suite", "bishop_gromov", "--tolerance", "monotonicity-band=0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run_cli(&["verify", "--suite", "bishop_gromov", "--tolerance", "nonsense=1"]);
    assert_eq!(out.status.code(), Some(2));
}
