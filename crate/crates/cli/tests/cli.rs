use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkit"))
        .args(args)
        .env_remove("WKIT_TRUNC")
        .output()
        .expect("wkit runs")
}

fn wkit_env(args: &[&str], trunc: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkit"))
        .args(args)
        .env("WKIT_TRUNC", trunc)
        .output()
        .expect("wkit runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// (golden file, arguments, expected exit code)
const GOLDENS: &[(&str, &[&str], i32)] = &[
    ("hierarchy_kdv.json", &["hierarchy", "--L", "d^2+u", "--k", "3", "--format", "json"], 0),
    ("hierarchy_kdv.tex", &["hierarchy", "--L", "d^2+u", "--k", "3", "--format", "latex"], 0),
    ("hierarchy_boussinesq.json", &["hierarchy", "--L", "d^3+u*d+v", "--k", "2", "--format", "json"], 0),
    ("root_sqrt.json", &["root", "--L", "d^2+u", "--power", "3", "--trunc", "4", "--format", "json"], 0),
    ("root_sqrt.txt", &["root", "--L", "d^2+u", "--power", "3", "--trunc", "4"], 0),
    ("agd_kdv.json", &["agd", "--L", "d^2+u", "--format", "json"], 0),
    ("agd_boussinesq.txt", &["agd", "--L", "d^3+u*d+v"], 0),
    ("miura.json", &["miura", "--fields", "h1,h2,h3", "--format", "json"], 0),
    ("classical_w_minimal.json", &["classical-w", "--algebra", "sl3", "--triple", "minimal", "--format", "json"], 0),
    ("classical_w_minimal.tex", &["classical-w", "--algebra", "sl3", "--triple", "minimal", "--format", "latex"], 0),
    (
        "classical_w_gl3_21.json",
        &["classical-w", "--algebra", "gl3", "--nilpotent", "partition:2,1", "--format", "json"],
        0,
    ),
    (
        "quantum_w_gl2.json",
        &["quantum-w", "--algebra", "gl2", "--nilpotent", "partition:2", "--form", "trace", "--format", "json"],
        0,
    ),
    (
        "quantum_w_gl3.txt",
        &["quantum-w", "--algebra", "gl3", "--nilpotent", "regular", "--max-degree", "3"],
        0,
    ),
    ("center_o4.json", &["center", "--algebra", "o4", "--capelli", "2", "--format", "json"], 0),
    ("center_gl3.txt", &["center", "--algebra", "gl3", "--omega", "2"], 0),
    ("pfaffian_o4.json", &["pfaffian", "--I", "1,2,3,4", "--N", "4", "--format", "json"], 0),
    (
        "pfaffian_probe.txt",
        &["pfaffian", "--I", "1,2", "--N", "4", "--J", "1,3"],
        0,
    ),
    (
        "grading_gl3.json",
        &["grading", "--algebra", "gl3", "--e", "E[1,3]", "--h", "1,0,-1", "--format", "json"],
        0,
    ),
    ("tableau_21.json", &["tableau", "--shape", "2,1", "--rows", "1,2;0", "--format", "json"], 0),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn goldens_match() {
    let update = std::env::var_os("WKIT_UPDATE_GOLDENS").is_some();
    let mut stale = Vec::new();
    for (name, args, expected) in GOLDENS {
        let out = wkit(args);
        assert_eq!(code(&out), *expected, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = golden_path(name);
        if update {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &out.stdout).unwrap();
        } else if fs::read(&path).ok().as_deref() != Some(out.stdout.as_slice()) {
            stale.push(*name);
        }
    }
    assert!(stale.is_empty(), "outputs differ from goldens (rerun with WKIT_UPDATE_GOLDENS=1): {stale:?}");
}

#[test]
fn output_is_deterministic() {
    for (name, args, _) in GOLDENS.iter().filter(|g| g.0.ends_with(".json")) {
        assert_eq!(wkit(args).stdout, wkit(args).stdout, "{name}");
    }
}

#[test]
fn json_carries_schema_and_verdict() {
    for (name, args, expected) in GOLDENS.iter().filter(|g| g.0.ends_with(".json")) {
        let v: serde_json::Value = serde_json::from_slice(&wkit(args).stdout).expect(name);
        assert_eq!(v["schema"], "wkit/1", "{name}");
        assert_eq!(v["command"], args[0], "{name}");
        assert_eq!(v["verified"], *expected == 0, "{name}");
    }
}

#[test]
fn kdv_text() {
    let out = wkit(&["hierarchy", "--L", "d^2+u", "--k", "3", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4*u_t = u''' + 6*u*u'\n");
}

#[test]
fn grading_matrix() {
    let out = wkit(&["grading", "--algebra", "gl3", "--e", "E[1,3]", "--h", "1,0,-1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree_matrix"], serde_json::json!([[0, 1, 2], [-1, 0, 1], [-2, -1, 0]]));
    assert_eq!(v["good"], true);
    assert_eq!(v["even"], false);
}

#[test]
fn grading_from_expression() {
    let out = wkit(&["grading", "--algebra", "gl3", "--h", "E[1,1] - E[3,3]", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree_matrix"][0][2], 2);
}

#[test]
fn one_box_tableau() {
    let out = wkit(&["tableau", "--shape", "1", "--rows", "7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["irreducible"], true);
}

#[test]
fn quantum_w_gl2_reports_everything() {
    let out = wkit(&["quantum-w", "--algebra", "gl2", "--nilpotent", "partition:2", "--form", "trace", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    assert!(v["generators"].as_array().unwrap().iter().all(|g| g["in_w"] == true));
    assert_eq!(v["commutators"][0]["value"], "0");
    for d in v["filtered_dimensions"].as_array().unwrap() {
        assert_eq!(d["computed"], d["expected"]);
    }
}

#[test]
fn quantum_w_membership_check() {
    let w = "e + 1/4*h^2 - 1/2*h";
    let out = wkit(&["quantum-w", "--algebra", "gl2", "--nilpotent", "partition:2", "--form", "trace", "--check", w]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains(&format!("{w}: in W")));
    let out = wkit(&["quantum-w", "--algebra", "gl2", "--nilpotent", "partition:2", "--form", "trace", "--check", "e"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("e: not in W"));
}

#[test]
fn wrong_shift_is_a_verification_failure() {
    let out = wkit(&["quantum-w", "--algebra", "gl2", "--nilpotent", "partition:2", "--shift", "decreasing"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("not in W"));
}

#[test]
fn centers_and_pfaffians() {
    let out = wkit(&["center", "--algebra", "o4", "--capelli", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"][0]["central"], true);
    assert_eq!(v["elements"][0]["terms"].as_array().unwrap().len(), 6);

    let out = wkit(&["pfaffian", "--I", "1,2,3,4", "--N", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pfaffian"]["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["generator_brackets"].as_array().unwrap().len(), 6);
}

#[test]
fn trunc_env_var_sets_depth() {
    let args = ["root", "--L", "d^2+u"];
    assert!(stdout(&wkit_env(&args, "3")).trim_end().ends_with("O(d^-4)"));
    assert!(stdout(&wkit_env(&args, "5")).trim_end().ends_with("O(d^-6)"));
    let flag = wkit_env(&["root", "--L", "d^2+u", "--trunc", "2"], "5");
    assert!(stdout(&flag).trim_end().ends_with("O(d^-3)"));
    assert!(stdout(&wkit(&args)).trim_end().ends_with("O(d^-9)"));
    let bad = wkit_env(&args, "deep");
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("WKIT_TRUNC"));
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["hierarchy", "--L", "d^2+u"],
        &["hierarchy", "--L", "d^2+u+", "--k", "3"],
        &["hierarchy", "--L", "u", "--k", "3"],
        &["center", "--algebra", "sl2"],
        &["center", "--algebra", "gl2", "--capelli", "5"],
        &["grading", "--algebra", "gl3", "--h", "E[4,4]"],
        &["quantum-w", "--algebra", "gl3", "--nilpotent", "partition:2"],
        &["tableau", "--shape", "2", "--rows", "1"],
        &["pfaffian", "--I", "1,5", "--N", "4"],
    ];
    for args in cases {
        let out = wkit(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn syntax_errors_report_position() {
    let out = wkit(&["hierarchy", "--L", "d^2 + * u", "--k", "3"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1") && err.contains("column 7"), "{err}");
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&wkit(&["--help"])), 0);
    assert_eq!(code(&wkit(&["quantum-w", "--help"])), 0);
}
