//! End-to-end checks of the command-line surface: exit codes, report
//! formats, determinism and configuration sources.

use std::fs;
use std::path::PathBuf;
use zeta_lab::cli::{run, EXIT_CONFIG, EXIT_IO, EXIT_PASS, EXIT_TOLERANCE};
use zeta_lab::report::parse_json;

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("zeta-lab-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn identities_sweep_passes() {
    let code = run(&args(&["sweep", "identities", "--digits", "40"]));
    assert_eq!(code, EXIT_PASS);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(run(&args(&["sweep", "nope"])), EXIT_CONFIG);
    assert_eq!(run(&args(&["reproduce", "nope"])), EXIT_CONFIG);
    assert_eq!(run(&args(&["frobnicate"])), EXIT_CONFIG);
    assert_eq!(
        run(&args(&["sweep", "identities", "--digits", "10"])),
        EXIT_CONFIG
    );
    assert_eq!(
        run(&args(&["sweep", "identities", "--s", "1.4+2i"])),
        EXIT_CONFIG
    );
    assert_eq!(
        run(&args(&["reproduce", "faq22", "--digits", "35"])),
        EXIT_CONFIG
    );
    assert_eq!(run(&args(&["sweep", "identities", "--bogus"])), EXIT_CONFIG);
}

#[test]
fn io_errors_exit_3() {
    let code = run(&args(&[
        "sweep",
        "identities",
        "--digits",
        "40",
        "--out",
        "/nonexistent-dir/report.csv",
    ]));
    assert_eq!(code, EXIT_IO);
}

#[test]
fn tolerance_failure_exits_1() {
    // a two-point convergence sweep measures the true decay order, which
    // sits outside the per-row slope band; the command must flag it
    let code = run(&args(&[
        "sweep",
        "convergence",
        "--digits",
        "40",
        "--n-list",
        "1000,3162",
        "--s",
        "0.5+1i",
    ]));
    assert_eq!(code, EXIT_TOLERANCE);
}

#[test]
fn csv_report_structure() {
    let out = temp_path("structure.csv");
    let code = run(&args(&[
        "sweep",
        "identities",
        "--digits",
        "40",
        "--s",
        "0.5+2i",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header plus one row");
    assert!(lines[0].starts_with("command,case,digits"));
    assert!(text.ends_with('\n'));
    fs::remove_file(&out).ok();
}

#[test]
fn json_report_round_trips() {
    let out = temp_path("roundtrip.json");
    let code = run(&args(&[
        "sweep",
        "identities",
        "--digits",
        "40",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let text = fs::read_to_string(&out).unwrap();
    let rows = parse_json(&text).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.pass));
    // parse -> render -> parse is the identity
    let again = parse_json(&zeta_lab::report::render_json(&rows)).unwrap();
    assert_eq!(again, rows);
    fs::remove_file(&out).ok();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let out1 = temp_path("det1.csv");
    let out2 = temp_path("det2.csv");
    for out in [&out1, &out2] {
        let code = run(&args(&[
            "sweep",
            "contour",
            "--digits",
            "40",
            "--n-list",
            "1,2",
            "--s",
            "0.5+2i",
            "--out",
            out.to_str().unwrap(),
        ]));
        assert_eq!(code, EXIT_PASS);
    }
    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert_eq!(a, b, "repeated runs must produce identical bytes");
    fs::remove_file(&out1).ok();
    fs::remove_file(&out2).ok();
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let cfg_path = temp_path("config.json");
    fs::write(
        &cfg_path,
        r#"{"digits": 42, "s_list": ["0.5+2i"], "format": "json"}"#,
    )
    .unwrap();
    let out = temp_path("fromcfg.json");
    let code = run(&args(&[
        "sweep",
        "identities",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let rows = parse_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].digits, 42);

    // a flag overrides the file value
    let code = run(&args(&[
        "sweep",
        "identities",
        "--config",
        cfg_path.to_str().unwrap(),
        "--digits",
        "44",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let rows = parse_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows[0].digits, 44);

    fs::remove_file(&cfg_path).ok();
    fs::remove_file(&out).ok();
}

#[test]
fn environment_digits_used_when_flag_absent() {
    let out = temp_path("env.json");
    std::env::set_var(zeta_lab::cli::DIGITS_ENV_VAR, "47");
    let code = run(&args(&[
        "sweep",
        "identities",
        "--s",
        "0.5+1i",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]));
    std::env::remove_var(zeta_lab::cli::DIGITS_ENV_VAR);
    assert_eq!(code, EXIT_PASS);
    let rows = parse_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows[0].digits, 47);
    fs::remove_file(&out).ok();
}

#[test]
fn faq22_reproduction_passes_end_to_end() {
    let out = temp_path("faq22.csv");
    let code = run(&args(&[
        "reproduce",
        "faq22",
        "--digits",
        "40",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, EXIT_PASS);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().count() == 6);
    assert!(text.lines().skip(1).all(|l| l.ends_with("pass")));
    fs::remove_file(&out).ok();
}
