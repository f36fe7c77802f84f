use std::path::Path;
use std::process::{Command, Output};

fn holomimo(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holomimo")).arg("--out").arg(out).args(args).output().unwrap()
}

fn with_config(dir: &Path, toml: &str, args: &[&str]) -> Output {
    let path = dir.join("run.toml");
    std::fs::write(&path, toml).unwrap();
    let mut full = vec!["--config", path.to_str().unwrap()];
    full.extend_from_slice(args);
    holomimo(&dir.join("out"), &full)
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn two_element_default_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "[sweep]\nspacings = [0.25]\n", &["two-element"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("out/two-element.csv"));
    assert_eq!(rows.len(), 181);
    for row in &rows {
        let closed: f64 = row[4].parse().unwrap();
        let pipeline: f64 = row[5].parse().unwrap();
        assert!((closed - pipeline).abs() <= 1e-9 * closed);
    }
}

#[test]
fn aperture_sweep_element_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(
        dir.path(),
        "[sweep]\nspacings = [0.1, 0.5, 1.0]\nmatching = [\"full\"]\n[scenario]\ndrops = 2\nusers = 3\n",
        &["sweep-aperture"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m: Vec<String> = csv_rows(&dir.path().join("out/sweep-aperture.csv")).into_iter().map(|r| r[2].clone()).collect();
    assert_eq!(m, ["61", "13", "7"]);
}

#[test]
fn unknown_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "[array]\nelement = 4\n", &["sweep-spacing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("array.element"));
}

#[test]
fn partial_matching_table_names_the_missing_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "[matching]\ntx = \"none\"\n", &["duality"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("matching.rx"));
}

#[test]
fn two_element_rejects_other_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "[array]\nelements = 3\n", &["two-element"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degenerate_array_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(
        dir.path(),
        "[array]\ndissipation_ratio = 0.0\n[sweep]\nspacings = [1e-9]\n",
        &["two-element"],
    );
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tampered_manifest_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert!(holomimo(&out, &["--drops", "2", "eigen-spectrum"]).status.success());
    let manifest = out.join("eigen-spectrum.manifest.json");
    let text = std::fs::read_to_string(&manifest).unwrap().replace("\"carrier_ghz\": 3.5", "\"carrier_ghz\": 3.6");
    std::fs::write(&manifest, text).unwrap();
    let replay = holomimo(&dir.path().join("again"), &["replay", manifest.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(2));
}

#[test]
fn seed_flag_changes_results_and_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let args = |seed: &'static str| ["--drops", "3", "--seed", seed, "sweep-spacing"];
    assert!(holomimo(&dir.path().join("a"), &args("1")).status.success());
    assert!(holomimo(&dir.path().join("b"), &args("2")).status.success());
    let a = std::fs::read(dir.path().join("a/sweep-spacing.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b/sweep-spacing.csv")).unwrap();
    assert_ne!(a, b);
    let m: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("b/sweep-spacing.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 2);
    assert_eq!(m["config"]["scenario"]["seed"], 2);
}
