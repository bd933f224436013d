use std::process::{Command, Output};

use serde_json::Value;

fn scarf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn energies(v: &Value) -> Vec<f64> {
    let mut e: Vec<f64> = v.as_array().unwrap().iter().map(|s| s["energy"].as_f64().unwrap()).collect();
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn spectrum_of_first_figure() {
    let out = scarf(&["spectrum", "--A", "2.7", "--B", "1.2+1.4i"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["class"], "case1");
    let e = energies(&doc["results"]["analytic"]["states"]);
    for (got, want) in e.iter().zip([-7.29, -2.89, -0.49]) {
        assert!((got - want).abs() < 1e-12, "{e:?}");
    }
    assert_eq!(e.len(), 3);
    let numeric = doc["results"]["numeric"]["levels"].as_array().unwrap();
    assert_eq!(numeric.len(), 3);
    assert!(numeric.iter().all(|l| l["deltaE"].as_f64().unwrap() < 1e-7));
    assert_eq!(doc["results"]["numeric"]["allMatched"], true);
    assert!(doc["meta"]["toleranceProfile"].is_object());
}

#[test]
fn case1_with_negative_a_has_no_real_levels() {
    let out = scarf(&["spectrum", "--A", "-0.5", "--B", "1+1i"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["results"]["analytic"]["states"].as_array().unwrap().is_empty());
}

#[test]
fn generic_class_is_refused() {
    let out = scarf(&["spectrum", "--A", "1+1i", "--B", "1+1i"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn parameter_sources_are_exclusive() {
    assert_eq!(scarf(&["spectrum", "--case", "1", "--A", "2"]).status.code(), Some(2));
    assert_eq!(scarf(&["spectrum"]).status.code(), Some(2));
}

#[test]
fn malformed_complex_literal_is_a_usage_error() {
    for bad in ["1+", "i2", "1 + 2i", "nan", "2.7k"] {
        let out = scarf(&["spectrum", "--A", bad, "--B", "1"]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--case", "3", "--format", "csv"];
    let a = scarf(&args);
    let b = scarf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_headers() {
    let out = scarf(&["spectrum", "--pt", "1.9,1.2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("E,E_im,source,family,n,residual,deltaE"));
    let out = scarf(&["scatter", "--case", "2", "--points", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("E,backend,T,RLeft,RRight,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn broken_phase_reports_conjugate_pair() {
    let out = scarf(&["spectrum", "--v1v2", "6,7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let levels = doc["results"]["numeric"]["levels"].as_array().unwrap();
    let im: Vec<f64> = levels.iter().map(|l| l["energy"]["im"].as_f64().unwrap()).collect();
    assert!(im.iter().any(|v| *v > 1e-4) && im.iter().any(|v| *v < -1e-4), "{im:?}");
}

#[test]
fn wavefunction_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    let out = scarf(&["wavefunction", "--case", "2", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["results"]["residual"].as_f64().unwrap() < 1e-5);
    assert_eq!(doc["results"]["x"].as_array().unwrap().len(), doc["results"]["psiRe"].as_array().unwrap().len());
}

#[test]
fn figure_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [vec!["figure", "1"], vec!["figure", "4", "--variant", "a"], vec!["figure", "5"]] {
        let mut full = args.clone();
        full.extend(["--out", d]);
        assert_eq!(scarf(&full).status.code(), Some(0), "{args:?}");
    }
    let fig1 = std::fs::read_to_string(dir.path().join("figure1.csv")).unwrap();
    assert_eq!(fig1.lines().next(), Some("x,V_re,V_im,psi0_re,psi0_im"));
    assert_eq!(fig1.lines().count(), 1 + 1601);

    let well: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("figure4a.json")).unwrap()).unwrap();
    let poles = well["results"]["poles"].as_array().unwrap();
    assert_eq!(poles.len(), 3);
    assert!(poles.iter().all(|p| !p["matchedBoundState"].is_null()));

    let fig5: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("figure5.json")).unwrap()).unwrap();
    let t_poles: Vec<&Value> = fig5["results"]["poles"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["which"].as_array().unwrap().iter().any(|c| c == "T"))
        .collect();
    assert_eq!(t_poles.len(), 3);
    assert!(t_poles.iter().all(|p| p["which"] == serde_json::json!(["T", "RRight"])));
}

#[test]
fn variant_needs_figure_four() {
    assert_eq!(scarf(&["figure", "5", "--variant", "b"]).status.code(), Some(2));
}

#[test]
fn verify_subset_passes() {
    let out = scarf(&["verify", "--only", "orthogonality"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["failed"], 0);
    assert_eq!(doc["results"]["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_prefix_selects_group() {
    let out = scarf(&["verify", "--only", "poles", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("check,criterion,pass,measured,tolerance"));
    assert_eq!(text.lines().count(), 1 + 4);
}

#[test]
fn verify_unknown_check_is_usage_error() {
    assert_eq!(scarf(&["verify", "--only", "nonsense"]).status.code(), Some(2));
}

#[test]
fn flipped_q_is_caught() {
    let out = scarf(&["verify", "--flip-q", "--only", "residuals"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert!(doc["params"]["fig1"]["faultInjection"].is_string());
}

#[test]
fn full_verification_fails_only_on_truncated_well_values() {
    let out = scarf(&["verify"]);
    let doc = json(&out);
    let failed: Vec<&str> = doc["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["square-well-quoted"]);
    assert_eq!(out.status.code(), Some(1));
}
