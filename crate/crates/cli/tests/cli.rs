//! End-to-end checks of the command-line interface: exit codes, output
//! formats and the config-file surfaces.

use std::process::{Command, Output};

fn varicoil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varicoil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn steps_prints_the_fifteen_step_table() {
    let output = varicoil(&["steps", "--n", "5"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 16); // header + 15 steps
    assert!(text.contains("2.0000000000000001e-1"));
    assert!(text.contains("5.0000000000000000e0"));
}

#[test]
fn switch_word_evaluates_with_unit_suffix() {
    let output = varicoil(&["switch", "--word", "SOOOO", "--unit-l", "1nH"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("1.0000000000000000e0"));

    // uppercase unit and microhenries also parse
    let output = varicoil(&["switch", "--word", "ppppp", "--unit-l", "2.5uH"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("5.0000000000000000e2")); // 2.5 uH / 5 = 500 nH
}

#[test]
fn switch_canonicalization_note_goes_to_stderr() {
    let output = varicoil(&["switch", "--word", "SPO"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stderr).contains("note:"));
    assert!(stdout(&output).contains("2.0000000000000000e0"));
}

#[test]
fn coil_reproduces_the_first_reference_row() {
    let output = varicoil(&[
        "coil",
        "--turns",
        "15",
        "--area-um2",
        "4",
        "--length-um",
        "1000",
        "--mu-r",
        "30",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("3.3929200658769761e-2"));
}

#[test]
fn coil_accepts_catalog_materials_and_reports_resistance() {
    let output = varicoil(&[
        "coil",
        "--turns",
        "10",
        "--area-um2",
        "4",
        "--length-um",
        "100",
        "--material",
        "mu30",
        "--core-perimeter-um",
        "100",
        "--freq-khz",
        "1000000",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("resistance_ohm"));
    assert!(text.contains("q_factor"));
    // N=10 turns of 100 um perimeter in 4 um^2 copper: 4.2 ohm
    assert!(text.contains("4.2000000000000"));
}

#[test]
fn unknown_material_is_a_usage_error() {
    let output = varicoil(&[
        "coil",
        "--turns",
        "1",
        "--area-um2",
        "1",
        "--length-um",
        "1",
        "--material",
        "unobtainium",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("unobtainium"));
    assert!(stderr.contains("air"), "error must list available names");
}

#[test]
fn every_subcommand_help_exits_zero() {
    for subcommand in ["coil", "steps", "switch", "beam", "sweep", "verify"] {
        let output = varicoil(&[subcommand, "--help"]);
        assert_eq!(output.status.code(), Some(0), "{subcommand} --help");
        assert!(stdout(&output).contains("Usage"));
    }
    let output = varicoil(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(varicoil(&["steps"]).status.code(), Some(1)); // missing --n
    assert_eq!(varicoil(&["nonsense"]).status.code(), Some(1));
    assert_eq!(
        varicoil(&["steps", "--n", "5", "--unknown-flag"]).status.code(),
        Some(1)
    );
    assert_eq!(
        varicoil(&["steps", "--n", "5", "--format", "yaml"]).status.code(),
        Some(1)
    );
    assert_eq!(
        varicoil(&["switch", "--word", "XYZ"]).status.code(),
        Some(1)
    );
    assert_eq!(
        varicoil(&["switch", "--word", "OOO"]).status.code(),
        Some(1),
        "all-open word has no conducting path"
    );
    assert_eq!(
        varicoil(&["steps", "--n", "5", "--unit-l", "bogus"]).status.code(),
        Some(1)
    );
}

#[test]
fn json_and_csv_outputs_parse() {
    let json = varicoil(&["steps", "--n", "3", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 6);

    let csv = varicoil(&["steps", "--n", "3", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv).lines().count(), 7);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("steps.csv");
    let output = varicoil(&[
        "steps",
        "--n",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    let rows = varicoil::emit::parse_csv_rows(&path).unwrap();
    assert_eq!(rows.len(), 10);
}

#[test]
fn beam_from_config_file_and_response_table() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("design.toml");
    std::fs::write(
        &config_path,
        r#"
[beam]
length_um = 290.0
width_um = 2.0
thickness_um = 5.0
gap_um = 2.0
electrode_area_um2 = 1000.0
youngs_modulus_gpa = 169.0
density = 2320.0
"#,
    )
    .unwrap();
    let output = varicoil(&["beam", "--config", config_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("mode_in_plane_1_khz"));
    assert!(text.contains("pull_in_voltage_v"));

    let response = varicoil(&[
        "beam",
        "--config",
        config_path.to_str().unwrap(),
        "--bias",
        "2",
        "--response",
        "--freq-start-khz",
        "10",
        "--freq-stop-khz",
        "60",
        "--freq-points",
        "11",
        "--format",
        "csv",
    ]);
    assert_eq!(response.status.code(), Some(0));
    assert_eq!(stdout(&response).lines().count(), 12);

    // partial geometry flags are rejected with guidance
    let partial = varicoil(&["beam", "--length-um", "290"]);
    assert_eq!(partial.status.code(), Some(1));
}

#[test]
fn sweep_runs_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("sweep.toml");
    std::fs::write(
        &config_path,
        r#"
[sweep]
subject = "steps"

[[sweep.grid]]
name = "n"
start = 1.0
stop = 6.0
count = 6
"#,
    )
    .unwrap();
    let output = varicoil(&[
        "sweep",
        "--config",
        config_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[4]["step_count"], serde_json::json!(15));

    // sweep without a config is a usage error
    assert_eq!(varicoil(&["sweep"]).status.code(), Some(1));
}

#[test]
fn verify_report_writes_full_json() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let output = varicoil(&["verify", "--report", report_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let reports = body["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["rows"].as_array().unwrap().len(), 15);
    // flagged rows are present but do not fail the run
    let coil_rows = reports[1]["rows"].as_array().unwrap();
    let flagged = coil_rows
        .iter()
        .filter(|row| row["verdict"] == "flagged-discrepancy")
        .count();
    assert_eq!(flagged, 3);
}

#[test]
fn material_overrides_from_config_apply() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("materials.toml");
    std::fs::write(
        &config_path,
        r#"
[[materials]]
name = "softmag"
mu_r = 100.0
"#,
    )
    .unwrap();
    let output = varicoil(&[
        "coil",
        "--turns",
        "15",
        "--area-um2",
        "4",
        "--length-um",
        "1000",
        "--material",
        "softmag",
        "--config",
        config_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    // 100/30 times the mu_r=30 reference row
    assert!(stdout(&output).contains("1.1309733552923257e-1"));
}
