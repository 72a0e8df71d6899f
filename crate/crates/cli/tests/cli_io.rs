//! End-to-end behaviour of the `lab` binary: input schemas, output schemas,
//! exit-status contract.

use std::io::Write;
use std::process::Command;

fn lab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lab"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn run_exit_status_reflects_verdicts() {
    let ok = lab()
        .args(["run", "--suite", "circle", "--seed", "3"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert_eq!(report["config"]["seed"], 3);
}

#[test]
fn run_writes_csv_with_header() {
    let out = tempfile::NamedTempFile::new().unwrap();
    let status = lab()
        .args([
            "run", "--suite", "escape", "--seed", "7", "--format", "csv", "--out",
        ])
        .arg(out.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.path()).unwrap();
    assert!(text.starts_with("check,passed,summary\n"));
    assert!(text.contains("check,k,c_minus,c_plus,in_interval"));
    assert!(text.contains("escape,20,20,20,false"));
}

#[test]
fn compute_sky_closed_form() {
    let out = lab()
        .args(["compute", "sky", "2", "1", "0", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["c_minus"], 1.0);
    assert_eq!(v["c_plus"], 3.0);
}

#[test]
fn compute_order_of_field_against_itself() {
    let mut body = String::from("sample_index,value\n");
    for i in 0..32 {
        body.push_str(&format!("{i},{}\n", (i as f64).sin()));
    }
    let f = write_temp(&body);
    let out = lab()
        .args(["compute", "order"])
        .arg(f.path())
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["leq"], serde_json::Value::Bool(true));
    assert_eq!(v["lt"], serde_json::Value::Bool(false));
}

#[test]
fn compute_order_with_inline_expressions() {
    let out = lab()
        .args([
            "compute",
            "order",
            "expr:cos(theta)",
            "expr:cos(theta)+1",
            "--resolution",
            "64",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["leq"], serde_json::Value::Bool(true));
    assert_eq!(v["lt"], serde_json::Value::Bool(true));
}

#[test]
fn compute_cpm_from_json() {
    let f = write_temp(
        r#"{
            "base": {"kind": "circle", "resolution": 64},
            "qform": {"plus": [], "minus": []},
            "sigma": {"kind": "field", "payload": 3.0},
            "support_radius": 1.0
        }"#,
    );
    let out = lab()
        .args(["compute", "cpm"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["c_minus"], 3.0);
    assert_eq!(v["c_plus"], 3.0);
    assert_eq!(v["method"], "closed_form_graph");
}

#[test]
fn compute_classify_lightlike_curve() {
    let f = write_temp("s,t,y1,y2,y3\n0,0,0,0,0\n1,1,1,0,0\n");
    let out = lab()
        .args(["compute", "classify"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classification"], "nonnegative");
}

#[test]
fn compute_classify_isotopy_schema() {
    // frames f_t ≡ t: the Reeb path, a positive isotopy
    let mut body = String::from("time,sample_index,value\n");
    for t in [0.0f64, 0.5, 1.0] {
        for i in 0..8 {
            body.push_str(&format!("{t},{i},{t}\n"));
        }
    }
    let f = write_temp(&body);
    let out = lab()
        .args(["compute", "classify"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "isotopy");
    assert_eq!(v["classification"], "positive");

    // freezing one sample (value 0 at sample 0) demotes it to non-negative
    let mut body = String::from("time,sample_index,value\n");
    for t in [0.0f64, 0.5, 1.0] {
        for i in 0..8 {
            let value = if i == 0 { 0.0 } else { t };
            body.push_str(&format!("{t},{i},{value}\n"));
        }
    }
    let f = write_temp(&body);
    let out = lab()
        .args(["compute", "classify"])
        .arg(f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classification"], "nonnegative");
}

#[test]
fn compute_lift_emits_contact_element_csv() {
    let f = write_temp(r#"{"center": [0.0, 0.0, 0.0], "t": 1.0}"#);
    let out = lab()
        .args(["compute", "lift"])
        .arg(f.path())
        .args(["--sphere-resolution", "16"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2,x3,nu1,nu2,nu3"));
    // unit sphere around the origin, outward: point equals conormal
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 6);
        for k in 0..3 {
            assert_eq!(cells[k], cells[k + 3]);
        }
    }
}

#[test]
fn malformed_input_exits_2_with_location() {
    let f = write_temp("sample_index,value\n0,oops\n");
    let out = lab()
        .args(["compute", "order"])
        .arg(f.path())
        .arg(f.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn dimension_mismatch_between_inputs_is_an_error() {
    let out = lab()
        .args(["compute", "order", "expr:cos(theta)", "expr:cos(theta)+1"])
        .arg("--resolution")
        .arg("64")
        .output()
        .unwrap();
    assert!(out.status.success());

    // fields of different resolutions cannot be compared
    let mut body_a = String::from("sample_index,value\n");
    for i in 0..16 {
        body_a.push_str(&format!("{i},0.0\n"));
    }
    let mut body_b = String::from("sample_index,value\n");
    for i in 0..32 {
        body_b.push_str(&format!("{i},0.0\n"));
    }
    let fa = write_temp(&body_a);
    let fb = write_temp(&body_b);
    let out = lab()
        .args(["compute", "order"])
        .arg(fa.path())
        .arg(fb.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("domain mismatch"), "stderr: {err}");
}

#[test]
fn unknown_suite_is_rejected() {
    let out = lab().args(["run", "--suite", "nope"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown suite"), "stderr: {err}");
}

#[test]
fn tolerance_overrides_are_echoed_in_config() {
    let out = lab()
        .args([
            "run",
            "--suite",
            "circle",
            "--seed",
            "7",
            "--tol",
            "sky_cross_check=0.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["tolerances"]["sky_cross_check"], 0.5);
}
