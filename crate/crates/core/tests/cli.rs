use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modforms"))
        .args(args)
        .env_remove("MODFORMS_PREC")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json from {args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap_or(-1), v)
}

#[test]
fn qexp_delta_and_j() {
    let (code, v) = json(&["qexp", "Delta", "--prec", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficients"], serde_json::json!(["0", "1", "-24", "252", "-1472", "4830"]));
    let (_, v) = json(&["qexp", "j", "--prec", "3"]);
    assert_eq!(v["valuation"], -1);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "744", "196884"]));
    let out = run(&["qexp", "Ek:4", "--prec", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "E4 = 1 + 240*q + 2160*q^2 + O(q^3)");
}

#[test]
fn env_precision_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_modforms"))
        .args(["qexp", "E6", "--output", "json"])
        .env("MODFORMS_PREC", "4")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
}

#[test]
fn basis_and_hecke() {
    let (_, v) = json(&["basis", "24", "--cusp", "--prec", "6"]);
    assert_eq!(v["dim"], 2);
    let (code, v) = json(&["hecke", "2", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v["charpoly"], serde_json::json!(["-20468736", "-1080", "1"]));
}

#[test]
fn eigen_quadratic_field() {
    let (code, v) = json(&["eigen", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v["eigenform"]["field"]["degree"], 2);
    assert_eq!(v["eigenform"]["field"]["sqrt_of"], "144169");
}

#[test]
fn decompose_renders_square_roots() {
    let (code, v) = json(&["decompose", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["c_values"][0], "(1/24)/sqrt(144169)");
    assert_eq!(v["all_nonzero"], true);
}

#[test]
fn verify_single_reports() {
    for which in ["ramanujan", "e24", "e32"] {
        let (code, v) = json(&["verify", which]);
        assert_eq!(code, 0, "{which}");
        assert_eq!(v[0]["status"]["status"], "Verified");
    }
}

#[test]
fn verify_table1_reports_the_mismatch() {
    let (code, v) = json(&["verify", "table1"]);
    assert_eq!(code, 1);
    assert_eq!(v[0]["status"]["status"], "Failed");
    let (code, v) = json(&["verify", "all"]);
    assert_eq!(code, 1);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn zeros_weight_12() {
    let (code, v) = json(&["zeros", "1"]);
    assert_eq!(code, 0);
    let j = v["zeros"][0]["j_numeric"].as_f64().unwrap();
    assert!((j - 432000.0 / 691.0).abs() < 1e-8);
    let text = String::from_utf8(run(&["zeros", "1"]).stdout).unwrap();
    assert!(text.contains("match"));
}

#[test]
fn maeda_range_and_single() {
    let (code, v) = json(&["maeda", "--range", "24..28"]);
    assert_eq!(code, 0);
    let ks: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, vec![24, 26, 28]);
    let (_, v) = json(&["maeda", "28"]);
    assert_eq!(v[0]["disc_squarefree"], "18209");
}

#[test]
fn finiteness_csv() {
    let out = run(&["finiteness", "--a", "1", "--b", "1000", "--kmax", "40", "--lmax", "5", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,conductor,character,alpha_abs,beta_abs,excluded_by"));
    assert!(!text.contains("survivor"));
}

#[test]
fn bounds_table() {
    let out = run(&["bounds", "3", "1,4,7", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 4);
}

#[test]
fn intersect_table2_weights() {
    let (code, v) = json(&["intersect", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v["quadratic_field_discriminant"], "144169");
    assert_eq!(v["conclusion"]["conclusion"], "Coprime");
}

#[test]
fn errors_are_single_line_with_exit_2() {
    for args in [
        vec!["hecke", "2", "0"],
        vec!["qexp", "Nope"],
        vec!["qexp", "EisNk:1,4.1,1,4"],
        vec!["zeros", "1", "--tol-zero=-1"],
        vec!["frobnicate"],
        vec!["basis", "12", "--prec", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error kind="), "{err}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["decompose", "16", "--output", "json"]).stdout;
    let b = run(&["decompose", "16", "--output", "json"]).stdout;
    assert_eq!(a, b);
    let a = run(&["zeros", "2", "--output", "json", "--seed", "3"]).stdout;
    let b = run(&["zeros", "2", "--output", "json", "--seed", "3"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("modforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delta.txt");
    let out = run(&["qexp", "Delta", "--prec", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("Delta = 1*q"));
    std::fs::remove_dir_all(&dir).ok();
}
