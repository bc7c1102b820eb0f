use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use weil_core::numerics::{Domain, GridFunction};
use weil_core::report::Report;

const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/zeros_first_30.txt");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weil-lab"))
        .current_dir(dir)
        .env("WEIL_LAB_CACHE", dir.join("cache"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_on_empty_cache() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["zeros", "list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim().is_empty());
}

#[test]
fn import_then_list() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["--height-T", "50", "zeros", "import", TABLE]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cached = fs::read_to_string(d.path().join("cache/zeros_T50.txt")).unwrap();
    assert_eq!(cached.lines().count(), 10);
    let o = run(d.path(), &["zeros", "list"]);
    assert!(stdout(&o).contains("T = 50\t10 zeros"));
}

#[test]
fn compute_caches_29_zeros() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["zeros", "compute"]);
    assert_eq!(code(&o), 0);
    let cached = fs::read_to_string(d.path().join("cache/zeros_T100.txt")).unwrap();
    assert_eq!(cached.lines().count(), 29);
    assert!(cached.starts_with("14.134725141735\n"));
}

#[test]
fn verify_special_passes_and_writes_report() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["--zeros", TABLE, "--out", "rep", "verify", "special"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = fs::read_to_string(d.path().join("rep/report_special.json")).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert!(report.pass);
    assert!(report.rows.iter().all(|r| !r.paper_anchor.is_empty()));
    for key in ["check_id", "paper_anchor", "value", "bound", "pass"] {
        assert!(text.contains(&format!("\"{key}\"")));
    }
}

#[test]
fn weil_suite_with_one_zero() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["--height-T", "15", "verify", "weil"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: Report = serde_json::from_str(&fs::read_to_string(d.path().join("weil-lab-out/report_weil.json")).unwrap()).unwrap();
    assert!(report.pass);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(d.path(), &["verify", "nonsense"])), 2);
    assert_eq!(code(&run(d.path(), &["--height-T", "500", "verify", "special"])), 2);
    assert_eq!(code(&run(d.path(), &["--cutoff-Z", "100", "verify", "debranges"])), 2);
    assert_eq!(code(&run(d.path(), &["--zeros", "missing.txt", "verify", "special"])), 3);
    let o = run(d.path(), &["--zeros", TABLE, "--tol", "xi.half_value=1e-30", "verify", "special"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  xi.half_value"));
    fs::write(d.path().join("bad.txt"), "14.1\n13.0\n").unwrap();
    assert_eq!(code(&run(d.path(), &["--zeros", "bad.txt", "verify", "special"])), 3);
}

#[test]
fn config_file_and_flag_precedence() {
    let d = tempfile::tempdir().unwrap();
    fs::write(
        d.path().join("run.cfg"),
        format!("zeros = {TABLE}\nheight_T = 30\nout = from-file\ntol.xi.half_value = 1e-30\n"),
    )
    .unwrap();
    let o = run(d.path(), &["--config", "run.cfg", "verify", "special"]);
    assert_eq!(code(&o), 1);
    assert!(d.path().join("from-file/report_special.json").exists());
    let o = run(d.path(), &["--config", "run.cfg", "--tol", "xi.half_value=1e-10", "verify", "special"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    fs::write(d.path().join("broken.cfg"), "height_T 30\n").unwrap();
    assert_eq!(code(&run(d.path(), &["--config", "broken.cfg", "verify", "special"])), 2);
}

#[test]
fn screw_g_export_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--zeros", TABLE, "export", "screw_g"];
    assert_eq!(code(&run(d.path(), &args)), 0);
    let path = d.path().join("weil-lab-out/screw_g.csv");
    let first = fs::read(&path).unwrap();
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 502);
    assert_eq!(code(&run(d.path(), &args)), 0);
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn psi_gamma_export_has_unit_norm() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["--zeros", TABLE, "--cutoff-Z", "1000", "export", "psi_gamma", "1", "--with-k"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(d.path().join("weil-lab-out/psi_gamma_1.csv")).unwrap();
    let psi = GridFunction::from_csv_str(&text, Domain::Time).unwrap();
    let n = 2.0 * PI * psi.norm_sq();
    assert!((n - 1.0).abs() <= 2.0 / (PI * (1000.0 - 14.13)), "{n}");
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("weil-lab-out/membership_1.json")).unwrap()).unwrap();
    assert!(m["negative_mass"].as_f64().unwrap() < 1e-3);
    assert!(d.path().join("weil-lab-out/k_psi_gamma_1.csv").exists());
    assert_eq!(code(&run(d.path(), &["--zeros", TABLE, "export", "psi_gamma", "99"])), 2);
}

#[test]
fn omega_and_f_gamma_exports() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(d.path(), &["export", "omega", "--grid", "-5:5:11"])), 0);
    let omega = GridFunction::from_csv_str(
        &fs::read_to_string(d.path().join("weil-lab-out/omega.csv")).unwrap(),
        Domain::Time,
    )
    .unwrap();
    assert_eq!(omega.values().len(), 11);
    assert!(omega.values()[5].re > 0.0);
    assert_eq!(code(&run(d.path(), &["--zeros", TABLE, "export", "F_gamma", "1"])), 0);
    let f = fs::read_to_string(d.path().join("weil-lab-out/f_gamma_1.csv")).unwrap();
    assert_eq!(f.lines().count(), 1002);
}
