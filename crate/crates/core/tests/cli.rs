use std::process::Command;

use serde_json::{json, Value};
use singcat::cli::run;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["singcat"];
    full.extend_from_slice(args);
    let (code, out) = run(full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn verify_nodal_cubic() {
    let (code, v) = call(&["mf", "verify", &data("nodal.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "ok": true }));
}

#[test]
fn verify_reports_witness() {
    let (code, v) = call(&["mf", "verify", &data("nodal.json"), "--sigma", "y^2-x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], json!(false));
    assert!(v["witness"].is_object());
}

#[test]
fn milnor_from_flags() {
    let (code, v) = call(&["milnor", "--ring", "x,y,z", "--sigma", "x^2+y^2+z^3"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "milnorNumber": 2 }));
    let (_, t) = call(&["tjurina", "--ring", "x,y", "--sigma", "x^3+y^4"]);
    assert_eq!(t, json!({ "tjurinaNumber": 6 }));
}

#[test]
fn blocks_of_atilde3() {
    let (code, v) = call(&["quiver", "blocks", "--type", "Atilde3", "--lambda", "0,1,0"]);
    assert_eq!(code, 0);
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    for b in blocks {
        assert_eq!(b["type"], json!("A1"));
        assert_eq!(b["polynomial"], json!("x^2+y^2+z^2"));
    }
}

#[test]
fn exit_codes() {
    let (code, v) = call(&["quiver", "blocks", "--type", "Atilde3", "--lambda", "0,-1,0"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["code"], json!("NotQuasiDominant"));
    let (code, v) = call(&["milnor", "--ring", "x", "--sigma", "x^^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], json!("Parse"));
    let (code, _) = call(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, v) = call(&["koszul-dual", &data("dual_numbers.json"), "--trunc", "4", "--window", "0,3"]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["code"], json!("WindowExceedsBound"));
    let (code, v) = call(&["milnor", &data("nodal.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], json!("Invalid"));
}

#[test]
fn every_command_has_a_schema() {
    let commands: [&[&str]; 23] = [
        &["poly", "gb"],
        &["milnor"],
        &["tjurina"],
        &["mf", "verify"],
        &["mf", "shift"],
        &["mf", "tensor"],
        &["mf", "unfold"],
        &["mf", "coker"],
        &["mf", "knoerrer-g"],
        &["mf", "knoerrer-h"],
        &["mf", "rho"],
        &["mf", "hom"],
        &["stab"],
        &["endcoh"],
        &["hh"],
        &["quiver", "paths"],
        &["quiver", "preproj"],
        &["quiver", "derived"],
        &["quiver", "blocks"],
        &["quiver", "drinfeld"],
        &["koszul-dual"],
        &["bar"],
        &["cobar"],
    ];
    for c in commands {
        let mut args = c.to_vec();
        args.push("--schema");
        let (code, v) = call(&args);
        assert_eq!(code, 0, "{c:?}");
        assert_eq!(v["command"], json!(c.join(" ")));
        assert_eq!(v["input"]["type"], json!("object"));
    }
}

#[test]
fn byte_identical_outputs() {
    let cases: [&[&str]; 4] = [
        &["quiver", "blocks", "--type", "Etilde8", "--lambda", "0,0,1,0,0,0,0,0"],
        &["endcoh", "--ring", "x,y", "--sigma", "x*y", "--weight-bound", "2"],
        &["koszul-dual", &data("dual_numbers.json")],
        &["poly", "gb", "--ring", "x,y,z", "--gen", "x*y-z", "--gen", "y*z-x", "--gen", "z*x-y"],
    ];
    for c in cases {
        let mut args = vec!["singcat"];
        args.extend_from_slice(c);
        let first = run(args.clone());
        assert_eq!(first.0, 0, "{}", first.1);
        for _ in 0..3 {
            assert_eq!(run(args.clone()), first);
        }
    }
}

#[test]
fn knoerrer_certificates_on_nodal_cubic() {
    let (_, g) = call(&["mf", "knoerrer-g", &data("nodal.json"), "--var", "z"]);
    assert_eq!(g["rhoCertificate"], json!(true));
    assert_eq!(g["result"]["sigma"], json!("-x^3-x^2+y^2+z^2"));
    let (_, h) = call(&["mf", "knoerrer-h", &data("nodal.json"), "--vars", "u,v"]);
    assert_eq!(h["rhoRhoCertificate"], json!(true));
}

#[test]
fn hochschild_of_x_squared_pipeline() {
    let dir = std::env::temp_dir().join("singcat-cli-hh.json");
    std::fs::write(&dir, r#"{"stabilisation": {"ring": "x", "sigma": "x^2"}}"#).unwrap();
    let (code, v) = call(&["hh", dir.to_str().unwrap(), "--trunc", "6", "--window", "0,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], json!({ "0": 1, "1": 0, "2": 1, "3": 0, "4": 1 }));
}

#[test]
fn drinfeld_end_of_sum() {
    let (code, v) = call(&["quiver", "drinfeld", "--end-sum-residue", "2", "--trunc", "6", "--window=-4,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], json!({ "-4": 1, "-3": 1, "-2": 1, "-1": 1, "0": 1 }));
    assert_eq!(v["dSquaredZero"], json!(true));
}

#[test]
fn quiver_commands_from_file() {
    let (_, p) = call(&["quiver", "paths", &data("a2.json"), "--trunc", "2"]);
    assert_eq!(p["counts"], json!([2, 1, 0]));
    let (_, q) = call(&["quiver", "preproj", &data("a2.json"), "--trunc", "4"]);
    assert_eq!(q["byLength"], json!([2, 2, 0, 0, 0]));
    let (_, d) = call(&["quiver", "derived", &data("a2.json"), "--trunc", "4"]);
    assert_eq!(d["h0"]["byLength"], q["byLength"]);
    assert_eq!(d["dSquaredZero"], json!(true));
}

#[test]
fn bar_and_cobar_of_dual_numbers() {
    let (_, b) = call(&["bar", &data("dual_numbers.json"), "--trunc", "3"]);
    assert_eq!(b["squaresToZero"], json!(true));
    assert_eq!(b["pieces"][3]["degreeDims"], json!({ "-3": 1 }));
    let (_, c) = call(&["cobar", &data("dual_numbers.json")]);
    let (_, k) = call(&["koszul-dual", &data("dual_numbers.json")]);
    assert_eq!(c["dims"], k["dims"]);
    assert_eq!(k["counit"]["chainMap"], json!(true));
}

#[test]
fn text_output() {
    let (code, out) = run(["singcat", "milnor", "--ring", "x,y", "--sigma", "x^2+y^3", "--out", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "milnorNumber: 2\n");
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_singcat");
    let ok = Command::new(bin).args(["mf", "verify", &data("nodal.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "{\n  \"ok\": true\n}\n");
    let refused = Command::new(bin).args(["quiver", "blocks", "--type", "Dtilde4", "--lambda", "-1,0,0,0"]).output().unwrap();
    assert_eq!(refused.status.code(), Some(3));
}
