use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chiral-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn checks(v: &Value) -> &Vec<Value> {
    v["checks"].as_array().expect("checks array")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn character_passes_and_dumps_coefficients() {
    let out = run(&["character", "--order", "40"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "character");
    assert_eq!(v["pass"], true);
    let coeffs = v["data"]["coefficients"].as_array().unwrap();
    assert!(coeffs.iter().any(|c| c["t_exponent_doubled"] == 40 && c["charge"] == 0));
}

#[test]
fn character_order_zero_is_trivial() {
    let out = run(&["character", "--order", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["data"]["coefficients"].as_array().unwrap().len(), 1);
}

#[test]
fn corrupted_character_names_the_coefficient() {
    let out = run(&["character", "--order", "12", "--corrupt"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed: Vec<_> = checks(&v).iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["measured"].as_str().unwrap().contains("coefficient of z^"));
}

#[test]
fn order_and_cutoff_guards() {
    assert_eq!(code(&run(&["character", "--order", "81"])), 2);
    assert_eq!(code(&run(&["fock-check", "--emax", "17"])), 2);
    assert_eq!(code(&run(&["character", "--format", "xml"])), 2);
}

#[test]
fn fock_checks() {
    let out = run(&["fock-check", "--emax", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["data"]["basis_dim"], 1);

    let out = run(&["fock-check", "--emax", "12", "--pair", "1,-1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(checks(&v).len(), 1);
    assert_eq!(checks(&v)[0]["name"], "current_algebra[m=1,n=-1]");

    let out = run(&["fock-check", "--emax", "12", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,pass,measured,tolerance,anchor\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn inner_check_examples() {
    let v = json(&run(&["inner-check", "--phi", "exp:kappa=1,theta=0"]));
    assert_eq!(v["pass"], true);
    assert!(v["data"]["functional_equation_residual"].as_f64().unwrap() < 1e-12);

    let out = run(&["inner-check", "--phi", "blaschke:0+1i"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["data"]["functional_equation_residual"].as_f64().unwrap() > 1e-3);
    assert!(checks(&v).iter().any(|c| c["name"] == "lw_unitarity[blaschke:0+1i]" && c["pass"] == true));

    assert_eq!(json(&run(&["inner-check", "--phi", "exp:kappa=0,theta=0"]))["pass"], true);
}

#[test]
fn parse_errors_report_position() {
    let out = run(&["inner-check", "--phi", "exp:kapa=1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 4") && err.contains("kapa"), "{err}");
    assert_eq!(code(&run(&["production", "--s", "1:2"])), 2);
    assert_eq!(code(&run(&["production", "--s", "-1:2:5"])), 2);
}

#[test]
fn production_exponential_is_elastic() {
    let out = run(&["production", "--phi", "exp:kappa=2", "--s", "0.1:10:50"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["data"]["production"], false);
    let rows = v["data"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    for r in rows {
        assert!((r["elastic_modulus"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn production_blaschke_is_flagged() {
    let out = run(&["production", "--phi", "blaschke:0+1i", "--s", "0.1:10:50"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["data"]["production"], true);
    assert_eq!(v["data"]["bound_ok"], true);
}

#[test]
fn production_identity_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = run(&[
        "production",
        "--phi",
        "exp:kappa=0,theta=0",
        "--s",
        "0.5:2:4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,re_phi_tilde,im_phi_tilde,abs_phi_tilde,abs_phi_tilde_sq");
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let cols: Vec<f64> = r.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((cols[1] - 1.0).abs() < 1e-12 && cols[2].abs() < 1e-12);
    }
}

#[test]
fn non_convergence_exits_with_three() {
    let out = run(&["production", "--phi", "blaschke:0+1i", "--s", "1:5:2", "--grid", "1", "--max-panels", "2", "--tol", "1e-14"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stderr).unwrap().contains("converge"));
}

#[test]
fn scatter_point_and_curve() {
    let v = json(&run(&["scatter", "--phi", "exp:kappa=1", "--p", "2", "--q", "0.5"]));
    let row = &v["data"]["rows"][0];
    assert!((row["re"].as_f64().unwrap() - 1f64.cos()).abs() < 1e-9);
    assert!((row["im"].as_f64().unwrap() - 1f64.sin()).abs() < 1e-9);
    let v = json(&run(&["scatter", "--phi", "blaschke:0+1i", "--s", "1:10:3"]));
    assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(code(&run(&["scatter", "--p", "1"])), 2);
}

#[test]
fn config_values_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "[character]\norder = 4\n[output]\nformat = \"csv\"\n");
    let out = run(&["character", "--config", &cfg]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t_exponent_doubled,charge,coefficient\n"));
    assert!(text.lines().last().unwrap().starts_with("4,"));

    let out = run(&["character", "--config", &cfg, "--order", "6", "--format", "json"]);
    assert_eq!(json(&out)["data"]["order_doubled"], 6);

    let bad = write(dir.path(), "bad.toml", "[character]\nordre = 4\n");
    assert_eq!(code(&run(&["character", "--config", &bad])), 2);
    assert_eq!(code(&run(&["character", "--config", "/nonexistent/run.toml"])), 2);
}

#[test]
fn report_all_default_passes_and_is_deterministic() {
    let a = run(&["report-all"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["data"]["criteria"].as_array().unwrap().len(), 13);
    let b = run(&["report-all"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_all_config_controls() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.toml", "");
    let out = run(&["report-all", "--config", &empty]);
    assert_eq!(code(&out), 2);

    let misplaced = write(
        dir.path(),
        "misplaced.toml",
        "[suite]\nelastic = [\"blaschke:0+1i\"]\nproduction = []\nkappas = [1.0]\n",
    );
    let out = run(&["report-all", "--config", &misplaced]);
    assert_ne!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(checks(&v).iter().any(|c| c["name"] == "lw_invariance_residual[blaschke:0+1i]" && c["pass"] == false));
}
