use std::process::{Command, Output};

use serde_json::Value;

fn mform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mform")).args(args).env_remove("MFORM_DATA_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = mform(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn cell(v: &Value, n24: i64, r: i64) -> Option<String> {
    v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c[0] == n24 && c[1] == r)
        .map(|c| c[2].as_str().unwrap().to_string())
}

#[test]
fn h_e_coefficients() {
    let v = json(&["expand", "--function", "H_g", "--class", "1A", "--qmax", "3"]);
    assert_eq!(v["function"], "H_g");
    assert_eq!(v["class"], "1A");
    assert_eq!(v["window"]["qmax24"], 72);
    assert_eq!(v["window"]["ylow"], -40);
    assert_eq!(v["coefficients"][0], serde_json::json!([-3, 0, "-2"]));
    assert_eq!(cell(&v, 21, 0).as_deref(), Some("90"));
}

#[test]
fn f2_low_terms() {
    let v = json(&["expand", "--function", "F2", "--qmax", "3"]);
    let got: Vec<_> = [24, 48, 72].iter().map(|n| cell(&v, *n, 0).unwrap()).collect();
    assert_eq!(got, ["1", "1", "3"]);
}

#[test]
fn user_errors_exit_2() {
    for args in [
        &["expand", "--function", "phi_g", "--class", "3B"][..],
        &["expand", "--function", "phi_g"],
        &["expand", "--function", "nonsense"],
        &["expand", "--function", "eta^1", "--ylow", "0"],
        &["report", "unknown"],
        &["verify", "--suite", "everything"],
    ] {
        let out = mform(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = mform(&["expand", "--function", "phi_g", "--class", "3B"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("excluded"));
}

#[test]
fn oversized_window_exits_3() {
    let out = mform(&["expand", "--function", "phi_g", "--class", "2A", "--qmax", "100000", "--ylow", "-100000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corrupted_class_asset_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(mform::m24::embedded_json()).unwrap();
    v["classes"][1]["characters"][1] = "8".into();
    std::fs::write(dir.path().join("m24_classes.json"), v.to_string()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_mform"))
        .args(["verify", "--suite", "data"])
        .env("MFORM_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthogonality"));
}

#[test]
fn forms_suite_passes() {
    let v = json(&["verify", "--suite", "forms", "--qmax", "4"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn traces_suite_covers_18_classes() {
    let v = json(&["verify", "--suite", "traces", "--qmax", "3", "--ylow", "-10"]);
    assert_eq!(v["status"], "pass");
    assert!(v["checks"][1]["detail"].as_str().unwrap().starts_with("18 classes"));
}

#[test]
fn multiplicities_without_aux_are_partial() {
    let out = mform(&["verify", "--suite", "multiplicities", "--qmax", "2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("warning:"), "{text}");
    assert!(text.ends_with("multiplicities: partial\n"));
}

#[test]
fn m11_report() {
    let v = json(&["report", "M11", "--qmax", "2", "--ylow", "-6"]);
    assert_eq!(v["verdict"], "construction II");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["integral"] == true));
    let by_class = |c: &str| rows.iter().filter(|r| r["class"] == c).map(|r| r["coefficients"].clone()).collect::<Vec<_>>();
    for c in ["8A", "11A"] {
        let rs = by_class(c);
        assert_eq!(rs.len(), 2, "{c}");
        assert_eq!(rs[0], rs[1]);
    }
}

#[test]
fn l34_identity_row_is_m_e() {
    let v = json(&["report", "L3(4)", "--qmax", "2", "--ylow", "-6"]);
    assert_eq!(v["verdict"], "construction I");
    let m = json(&["expand", "--function", "M_g", "--class", "1A", "--qmax", "2", "--ylow", "-6"]);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["class"] == "1A").unwrap();
    assert_eq!(row["coefficients"], m["coefficients"]);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = mform(&["verify", "--suite", "all", "--qmax", "2", "--ylow", "-8", "--threads", "1"]);
    let b = mform(&["verify", "--suite", "all", "--qmax", "2", "--ylow", "-8", "--threads", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let a = mform(&["report", "A8", "--qmax", "2", "--ylow", "-6", "--format", "csv", "--threads", "1"]);
    let b = mform(&["report", "A8", "--qmax", "2", "--ylow", "-6", "--format", "csv", "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("row,class,n24,r,coefficient\n"));
}

#[test]
fn trace_spec_expansion() {
    let v = json(&["expand", "--function", "trace:Af/yJ,frakz", "--qmax", "1", "--ylow", "-4"]);
    assert_eq!(cell(&v, -2, 0).as_deref(), Some("1"));
    assert_eq!(cell(&v, 10, 1).as_deref(), Some("-2"));
    let out = mform(&["expand", "--function", "trace:Aa/ghat", "--qmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
