use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmoduli")).args(args).env_remove("QMODULI_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn decompose_lines() {
    let o = run(&["decompose", "cg-real", "2", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "S3_0 + S2_0 + S1_0 | dim 15 ok");
    let o = run(&["decompose", "cg-complex", "2", "3"]);
    assert_eq!(stdout(&o).trim(), "S5 + S3 + S1 | dim 12 ok");
    let s = stdout(&run(&["decompose", "sym-square", "2"]));
    assert!(s.contains("eq-corrected: false"), "{s}");
    let s = stdout(&run(&["decompose", "sym-square", "3"]));
    assert!(s.contains("S0_0") && s.contains("eq-corrected: true"), "{s}");
}

#[test]
fn moduli_dimensions() {
    for k in 1..=4u64 {
        let v = json(&["moduli", "--k", &k.to_string()]);
        assert_eq!(v["dim"], k * (k - 1));
        assert_eq!(v["formula_match"], true);
        assert_eq!(v["rigid_real"], true);
    }
    let v = json(&["moduli", "--k", "3"]);
    assert_eq!(v["labels"], serde_json::json!([[1, 2]]));
}

#[test]
fn rigidity_reports_both_settings() {
    let v = json(&["rigidity", "--k", "2"]);
    assert_eq!(v["real"]["rigid"], true);
    assert_eq!(v["herm"]["rigid"], true);
}

#[test]
fn verify_standard_maps() {
    let v = json(&["verify", "--k", "2", "--standard"]);
    assert!((v["degree"].as_f64().unwrap() - 2.0).abs() < 1e-3);
    let v = json(&["verify", "--k", "2", "--real-standard"]);
    assert!((v["degree"].as_f64().unwrap() - 4.0).abs() < 1e-3);
    assert_eq!(v["map"]["target"], "Gr_3(R^5)");
    assert_eq!(v["rigidity"]["rigid"], true);
}

#[test]
fn verify_boundary_family_point() {
    let v = json(&["verify", "--k", "2", "--family", "0.6", "0.8"]);
    assert_eq!(v["positivity"]["status"], "boundary");
    assert_eq!(v["kernel"]["contained"], true);
    assert_eq!(v["kernel"]["reduced_target"], serde_json::json!([1, 3]));
}

#[test]
fn infeasible_points_fail_with_diagnostics() {
    let o = run(&["--format", "json", "verify", "--k", "2", "--family", "1.2", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["positivity"]["status"], "infeasible");
    assert!(v["positivity"]["min_eigenvalue"].as_f64().unwrap() < 0.0);
}

#[test]
fn csv_has_one_row_per_check() {
    let o = run(&["--format", "csv", "verify", "--k", "3", "--standard"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("command,k,check_name,value,threshold,pass"));
    assert!(lines.all(|l| l.starts_with("verify,3,") && l.ends_with(",true")));
}

#[test]
fn family_statuses_follow_the_unit_circle() {
    let v = json(&["family", "--k", "2", "--samples", "8"]);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 24);
    for p in pts {
        let r = p["t"].as_f64().unwrap().hypot(p["s"].as_f64().unwrap());
        let want = if (r - 1.0).abs() < 1e-9 { "boundary" } else if r < 1.0 { "interior" } else { "infeasible" };
        assert_eq!(p["status"], want);
    }
}

#[test]
fn output_is_deterministic_and_seeded() {
    let a = stdout(&run(&["--format", "json", "--seed", "7", "moduli", "--k", "3"]));
    let b = stdout(&run(&["--format", "json", "--seed", "7", "moduli", "--k", "3"]));
    assert_eq!(a, b);
    let c = stdout(&run(&["--format", "json", "--seed", "8", "moduli", "--k", "3"]));
    assert_ne!(a, c);
    let env = Command::new(env!("CARGO_BIN_EXE_qmoduli"))
        .args(["--format", "json", "--seed", "8", "moduli", "--k", "3"])
        .env("QMODULI_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), a);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["moduli", "--k", "0"][..], &["family", "--k", "3"], &["verify", "--k", "2", "--standard", "--real-standard"]] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tight_tolerance_overrides_fail() {
    let o = run(&["verify", "--k", "2", "--standard", "--tol-isometry", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED isometry"));
}
