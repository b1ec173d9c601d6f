use std::process::{Command, Output};

use ptmetric::parse::parse_poly;
use ptmetric::poly::TermRecord;
use ptmetric::PhasePoly;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptmetric")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--machine");
    let o = run(&full);
    (serde_json::from_str(stdout(&o).trim()).expect("one JSON object"), o.status.code().unwrap())
}

/// Both encodings of a polynomial in machine output describe the same value.
fn round_trip(v: &Value) -> PhasePoly {
    let from_text = parse_poly(v["render"].as_str().unwrap()).unwrap();
    let records: Vec<TermRecord> = serde_json::from_value(v["terms"].clone()).unwrap();
    assert_eq!(PhasePoly::from_records(&records).unwrap(), from_text);
    from_text
}

#[test]
fn classify_reports_families_and_none() {
    let (v, code) = machine(&["classify", "--preset", "swanson", "--Delta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["families"], serde_json::json!(["F4", "F5-a2"]));
    let (v, code) = machine(&["classify", "--alpha", "0,1,0,1,0,1,0,1,1,1"]);
    assert_eq!(code, 3);
    assert_eq!(v["families"], serde_json::json!(["NONE"]));
}

#[test]
fn exact_metric_machine_output_round_trips() {
    let (v, code) = machine(&["metric", "--preset", "H-EX1", "--Delta", "1", "--g", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["family"], "F1-con1");
    assert_eq!(round_trip(&v["exponent"]), parse_poly("-(x^2 + p^2)").unwrap());
}

#[test]
fn metric_without_family_needs_perturbative() {
    let o = run(&["metric", "--preset", "lattice-reggeon", "--Delta", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--perturbative"));
    let (v, code) = machine(&["metric", "--preset", "lattice-reggeon", "--Delta", "1", "--perturbative", "--order", "2"]);
    assert_eq!(code, 0);
    let e1 = round_trip(&v["eta2"][1]);
    assert_eq!(e1, parse_poly("2(p^3 - 2p + p x^2)").unwrap());
}

#[test]
fn perturbative_counterpart_is_real_and_even() {
    let (v, code) = machine(&["counterpart", "--preset", "lattice-reggeon", "--Delta", "1", "--perturbative"]);
    assert_eq!(code, 0);
    assert_eq!(v["real"], true);
    assert!(round_trip(&v["h"][1]).is_zero());
    assert_eq!(round_trip(&v["h"][2]), parse_poly("3/2 p^4-4p^2+1-4x^2+3p^2x^2+3/2 x^4").unwrap());
}

#[test]
fn exact_counterpart_of_massive_ix() {
    let (v, code) = machine(&["counterpart", "--preset", "massive-ix", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(round_trip(&v["numerator"][0]), parse_poly("x^2 + p^2").unwrap());
    assert_eq!(round_trip(&v["numerator"][2]), parse_poly("1/4").unwrap());
}

#[test]
fn perturb_dumps_every_order() {
    let (v, code) = machine(&["perturb", "--preset", "lattice-reggeon", "--Delta", "1", "--order", "3"]);
    assert_eq!(code, 0);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4);
    for r in recs {
        assert!(round_trip(&r["gauge_defect"]).is_zero());
    }
}

#[test]
fn spectrum_compares_with_counterpart() {
    let (v, code) = machine(&[
        "spectrum", "--preset", "massive-ix", "--m", "1", "--g", "1/2", "--N", "32", "--k", "4", "--compare-counterpart",
    ]);
    assert_eq!(code, 0);
    assert!(v["counterpart"].as_str().unwrap().starts_with("closed form"));
    for d in v["level_differences"].as_array().unwrap() {
        assert!(d.as_f64().unwrap() < 1e-8, "{d}");
    }
}

#[test]
fn verify_suite_and_golden() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["verify", "--golden", "ssl-r-c4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--golden", "sslr-c9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn errors_name_the_offending_input() {
    let o = run(&["classify", "--preset", "swanson", "--Delta", "abc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--Delta"));
    let o = run(&["spectrum", "--preset", "swanson", "--Delta", "1", "--N", "16", "--k", "8"]);
    assert_eq!(o.status.code(), Some(5));
    let o = run(&["classify", "--preset", "no-such-model"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_is_accepted() {
    let dir = std::env::temp_dir().join(format!("ptmetric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.toml");
    std::fs::write(&path, "g = 1\npreset = \"swanson\"\nDelta = 1\n").unwrap();
    let (v, code) = machine(&["classify", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["families"], serde_json::json!(["F4", "F5-a2"]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn presets_lists_every_row() {
    let (v, _) = machine(&["presets"]);
    assert_eq!(v["presets"].as_array().unwrap().len(), 9);
}
