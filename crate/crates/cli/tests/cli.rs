use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qkepler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkepler")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qkepler-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn verdict<'a>(doc: &'a Value, id: &str) -> &'a str {
    doc["results"].as_array().unwrap().iter().find(|r| r["id"] == id).unwrap_or_else(|| panic!("missing {id}"))
        ["verdict"]
        .as_str()
        .unwrap()
}

#[test]
fn verify_classical_lists_identities_and_flags_printed_forms() {
    let o = qkepler(&["verify", "--kind", "classical", "--n", "3"]);
    assert_eq!(code(&o), 2);
    let doc = json(&o);
    assert!(doc["results"].as_array().unwrap().len() >= 8);
    assert_eq!(verdict(&doc, "classical.conservation.HA.n3.standard"), "pass");
    assert_eq!(verdict(&doc, "classical.relation.BC.n3.standard"), "pass");
    assert_eq!(verdict(&doc, "classical.runge_lenz.forms.n3"), "residual");
    let keys: Vec<_> = doc["errata"].as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap()).collect();
    assert_eq!(keys, ["casimir-classical/j2-coefficient", "runge-lenz/expanded-form"]);
}

#[test]
fn verify_quantum_three_dimensions() {
    let doc = json(&qkepler(&["verify", "--kind", "quantum", "--n", "3"]));
    assert_eq!(verdict(&doc, "quantum.relation.BC.n3"), "pass");
    let fit = doc["results"].as_array().unwrap().iter().find(|r| r["id"] == "quantum.fit.AC.n3").unwrap();
    let coeffs = fit["data"]["detail"]["coefficients"].as_array().unwrap();
    // the (N-1)(N-3) hbar^4 coefficient of B vanishes at N = 3
    assert_eq!(coeffs[1]["fitted"], "0");
    assert!(coeffs.iter().all(|c| c["matches_printed"] == true));
    assert_eq!(fit["data"]["detail"]["self_validation_residual"], 0);
}

#[test]
fn verify_rejects_dimension_out_of_range() {
    assert_eq!(code(&qkepler(&["verify", "--kind", "classical", "--n", "7"])), 64);
    assert_eq!(code(&qkepler(&["verify", "--kind", "classical", "--n", "2"])), 64);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&qkepler(&["frobnicate"])), 64);
    assert_eq!(code(&qkepler(&["spectrum"])), 64);
    assert_eq!(code(&qkepler(&["spectrum", "--n", "3", "--levels", "0"])), 64);
}

#[test]
fn spectrum_hydrogen_csv() {
    let o = qkepler(&[
        "spectrum", "--n", "3", "--c0", "1", "--c1", "0", "--c2", "0", "--levels", "2", "--I", "0", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,I,E_formula,E_parabolic,E_algebraic,E_numeric,badge"));
    for expected in [-0.5, -0.125] {
        let cols: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols[2], expected);
        assert!((cols[5] - expected).abs() < 1e-4);
    }
}

#[test]
fn spectrum_full_pipeline_agrees() {
    let o = qkepler(&["spectrum", "--n", "5", "--c0", "1", "--c1", "0.1", "--c2", "0.2", "--levels", "3", "--I", "1"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert!(results.iter().all(|r| r["data"]["badge"].as_f64().unwrap() < 1e-4));
}

#[test]
fn spectrum_as_printed_column_is_doubled() {
    let o = qkepler(&[
        "spectrum",
        "--n",
        "4",
        "--c1",
        "0.1",
        "--c2",
        "0.2",
        "--convention",
        "as-printed",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let header: Vec<_> = text.lines().next().unwrap().split(',').collect();
    assert_eq!(header.last(), Some(&"E_parabolic_printed"));
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[7] / cols[3] - 2.0).abs() < 1e-12);
    }
}

#[test]
fn spectrum_fall_to_center_exits_3() {
    let o = qkepler(&["spectrum", "--n", "3", "--c1", "-1"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("fall to center"));
}

#[test]
fn wavecheck_examples() {
    let o = qkepler(&["wavecheck", "--which", "radial", "--n", "1", "--l", "0"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    for r in doc["results"].as_array().unwrap().iter().filter(|r| r["id"].as_str().unwrap().contains("residual")) {
        assert!(r["data"]["relative"].as_f64().unwrap() < 1e-10);
    }
    let angular =
        ["wavecheck", "--which", "angular", "--l", "2", "--I", "1", "--n-dim", "4", "--c1", ".1", "--c2", ".2"];
    assert_eq!(code(&qkepler(&angular)), 2);
    let mut corrected = angular.to_vec();
    corrected.extend(["--form", "corrected"]);
    assert_eq!(code(&qkepler(&corrected)), 0);
    assert_eq!(code(&qkepler(&["wavecheck", "--which", "radial", "--n", "1", "--l", "1"])), 64);
    assert_eq!(code(&qkepler(&["wavecheck", "--which", "parabolic", "--n1", "1"])), 64);
}

#[test]
fn wavecheck_reports_printed_and_computed_constants() {
    let doc = json(&qkepler(&["wavecheck", "--which", "radial", "--n-dim", "4", "--n", "2", "--l", "1"]));
    let norm = doc["results"].as_array().unwrap().iter().find(|r| r["id"] == "radial.n2.l1.I0.norm").unwrap();
    assert_eq!(norm["verdict"], "residual");
    assert!(norm["data"]["computed_constant"].as_f64().unwrap() > 0.0);
    assert!(norm["data"]["printed_constant"].as_f64().unwrap() > 0.0);
}

#[test]
fn erratum_ledger_writes_evidence() {
    let dir = scratch("erratum");
    let o = qkepler(&["erratum", "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let doc = json(&o);
    let errata = doc["errata"].as_array().unwrap();
    let factor2 = errata.iter().find(|e| e["key"] == "parabolic-energy/factor2").unwrap();
    assert_eq!(factor2["status"], "confirmed");
    let m = errata.iter().find(|e| e["key"] == "m-formula/inconsistent").unwrap();
    assert!(m["printed"].as_str().unwrap().contains("16"));
    for e in errata {
        assert!(dir.join(e["artifact"].as_str().unwrap()).is_file(), "{}", e["artifact"]);
    }
    assert!(dir.join("report.json").is_file());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn erratum_all_includes_algebra_entries() {
    let doc = json(&qkepler(&["erratum", "--all"]));
    let keys: Vec<_> =
        doc["errata"].as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap().to_string()).collect();
    for k in ["poisson-bracket/sign-convention", "commutator-c/first-sum-index", "casimir-quantum/h-power"] {
        assert!(keys.iter().any(|x| x == k), "{k}");
    }
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn seed_changes_only_the_random_probe() {
    let a = json(&qkepler(&["erratum", "--seed", "1"]));
    let b = json(&qkepler(&["erratum", "--seed", "2"]));
    assert_ne!(a["results"], b["results"]);
    let spectral = |d: &Value| {
        d["errata"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e["key"] != "structure-function/expanded-vs-factorized")
            .cloned()
            .collect::<Vec<_>>()
    };
    assert_eq!(spectral(&a), spectral(&b));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = scratch("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# spectrum settings\ncommand = spectrum\nn = 4\nlevels = 2\nc1 = 0.1\nI = 1\n").unwrap();
    let doc = json(&qkepler(&["--config", cfg.to_str().unwrap()]));
    assert_eq!(doc["run"]["command"]["n"], 4);
    assert_eq!(doc["run"]["command"]["levels"], 2);
    assert_eq!(doc["results"][0]["id"], "level.n2.I1");
    let doc = json(&qkepler(&["--config", cfg.to_str().unwrap(), "spectrum", "--levels", "1"]));
    assert_eq!(doc["run"]["command"]["levels"], 1);
    assert_eq!(doc["run"]["command"]["c1"], 0.1);
    std::fs::write(&cfg, "not a pair\n").unwrap();
    assert_eq!(code(&qkepler(&["--config", cfg.to_str().unwrap(), "suite"])), 64);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn suite_is_byte_identical_across_runs_and_schedulers() {
    let a = qkepler(&["suite"]);
    let b = qkepler(&["suite", "--sequential"]);
    assert_eq!(code(&a), 2);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8(a.stdout).unwrap().contains("wall_ms"));
}

#[test]
fn timings_are_opt_in() {
    let o = qkepler(&["verify", "--kind", "classical", "--n", "3", "--timings"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("wall_ms"));
}

#[test]
fn residual_dumps_are_written() {
    let dir = scratch("dumps");
    qkepler(&["verify", "--kind", "quantum", "--n", "3", "--out", dir.to_str().unwrap()]);
    let dump = std::fs::read_to_string(dir.join("dumps/quantum.c_vs_printed.n3.txt")).unwrap();
    assert!(!dump.trim().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}
