use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use qtf::io::{filter_doc, parse_filter, parse_sym, sym_string, FilterDoc};
use qtf_core::{Poly, SymType};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qtf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtf")).args(args).output().expect("run qtf")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    for name in ["classic", "even_surd", "even_high", "odd_three", "odd_one", "theta_average"] {
        let o = qtf(&["verify", path(&fixture(&format!("{name}.bank.json")))]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(json(&o)["passed"], true);
    }
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("classic.bank.json")).unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, text.replacen("\"1/4\"", "\"1/5\"", 1)).unwrap();
    let o = qtf(&["verify", path(&broken)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn parse_and_io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"coeffs": [{"k": 0, "v": "1/0"}]}"#).unwrap();
    assert_eq!(code(&qtf(&["analyze", path(&bad)])), 3);
    std::fs::write(&bad, r#"{"coeffs": [{"k": 0, "v": "1"}, {"k": 0, "v": "2"}]}"#).unwrap();
    assert_eq!(code(&qtf(&["analyze", path(&bad)])), 3);
    std::fs::write(&bad, r#"{"coeffs": [], "extra": 1}"#).unwrap();
    assert_eq!(code(&qtf(&["analyze", path(&bad)])), 3);
    assert_eq!(code(&qtf(&["analyze", path(&dir.path().join("missing.json"))])), 3);
    assert_eq!(code(&qtf(&["frobnicate"])), 3);
    assert_eq!(code(&qtf(&["dos", path(&fixture("one.json")), "2,0"])), 3);
    assert_eq!(code(&qtf(&["factor", path(&fixture("non_hermitian.matrix.json"))])), 3);
    assert_eq!(code(&qtf(&["--help"])), 0);
}

#[test]
fn analyze_reports_orders_and_smoothness() {
    let o = qtf(&["analyze", path(&fixture("even_high.a.json"))]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["sr"], 4);
    assert_eq!(r["sym"], "1,0");
    assert!((r["sm"].as_f64().unwrap() - 1.6821).abs() < 1e-3);
}

#[test]
fn construct_writes_a_bank_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bank.json");
    let a = fixture("odd_one.a.json");
    let th = fixture("odd_one.theta.json");
    let o = qtf(&["--out", path(&out), "construct", path(&a), path(&th), "--nb", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&qtf(&["verify", path(&out)])), 0);
    assert_eq!(code(&qtf(&["construct", path(&a), path(&th), "--nb", "5"])), 2);
    assert_eq!(code(&qtf(&["construct", path(&a), path(&fixture("bad_theta.json")), "--nb", "1"])), 2);
}

#[test]
fn factor_and_dos() {
    let o = qtf(&["factor", path(&fixture("round_trip.matrix.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["residual"], "0.0");
    let o = qtf(&["factor", path(&fixture("identity.matrix.json"))]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["feasible"], false);

    let o = qtf(&["dos", path(&fixture("hat_square.json")), "1,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["ratio"], "1,0");
    let o = qtf(&["dos", path(&fixture("real_root.json")), "-1,0"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["feasible"], false);
    assert_eq!(code(&qtf(&["dos", path(&fixture("real_root.json")), "1,0"])), 0);
}

#[test]
fn render_writes_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plots");
    let o = qtf(&["--level", "6", "--out", path(&out), "render", path(&fixture("classic.bank.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in qtf::commands::RENDER_FILES {
        let mut rd = csv::Reader::from_path(out.join(f)).unwrap();
        let header = rd.headers().unwrap().clone();
        assert!(header == vec!["k", "value"] || header == vec!["x", "value"], "{f}: {header:?}");
        assert!(rd.records().count() > 0, "{f}");
    }
    let mut rd = csv::Reader::from_path(out.join("phi.csv")).unwrap();
    let total: f64 = rd.records().map(|r| r.unwrap()[1].parse::<f64>().unwrap()).sum::<f64>() / 64.0;
    assert!((total - 1.0).abs() < 1e-9, "integral of phi = {total}");
}

proptest! {
    #[test]
    fn filter_json_round_trip(low in -5i64..5, c in prop::collection::vec(-50i64..50, 1..8), d in 1i64..9) {
        let p = Poly::from_ints(low, &c).div_scalar(&qtf_core::Scalar::from_int(d));
        let doc: FilterDoc = serde_json::from_str(&serde_json::to_string(&filter_doc(&p)).unwrap()).unwrap();
        prop_assert_eq!(parse_filter(&doc).unwrap(), p);
    }

    #[test]
    fn sym_type_round_trip(eps in prop_oneof![Just(1i8), Just(-1i8)], c in -20i64..20) {
        let t = SymType::new(eps, c);
        prop_assert_eq!(parse_sym(&sym_string(t)).unwrap(), t);
    }
}
