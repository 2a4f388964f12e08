//! End-to-end checks of the command-line binary: file shapes, exit codes,
//! and byte-identical determinism across reruns.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_double-dicke"))
}

const PARAMS: &str = r#"{"omega_cav":1.0,"omega0_C":1.0,"omega0_I":1.0,"Omega_C":0.0,"Omega_I":0.0,"N_C":4,"N_I":4}"#;

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn phase_diagram_four_regions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phase.csv");
    let status = bin()
        .args([
            "phase-diagram",
            "--params",
            PARAMS,
            "--grid",
            r#"{"min_c":0.0,"max_c":1.0,"n_c":101,"min_i":0.0,"max_i":1.0,"n_i":101}"#,
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let mut tags: Vec<&str> = Vec::new();
    for line in text.lines().skip(3) {
        tags.push(line.split(',').nth(2).unwrap());
    }
    assert_eq!(tags.len(), 101 * 101);
    // the four regions are rectangles meeting at (0.5, 0.5); spot-check a
    // representative interior point of each (row-major, Omega_I fastest)
    let at = |c: usize, i: usize| tags[c * 101 + i];
    assert!(at(25, 25).starts_with("Normal"));
    assert!(at(75, 25).starts_with("SuperradiantC"));
    assert!(at(25, 75).starts_with("SuperradiantI"));
    assert!(at(75, 75).starts_with("DoublySuperradiant"));
    // boundary columns carry the critical-line marker
    assert!(at(50, 25).contains("*C"));
    assert!(at(25, 50).contains("*I"));
}

#[test]
fn spectrum_ray_header_only_at_zero_length() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ray.csv");
    let status = bin()
        .args([
            "spectrum",
            "--params",
            PARAMS,
            "--ray",
            r#"{"theta":0.785398163,"r_max":0.0,"n_points":0}"#,
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3); // two comment lines + header, no data
    assert!(lines[2].starts_with("r,Omega_C,Omega_I,"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        let status = bin()
            .args([
                "spectrum",
                "--params",
                PARAMS,
                "--grid",
                r#"{"min_c":0.0,"max_c":1.2,"n_c":40,"min_i":0.0,"max_i":1.2,"n_i":40}"#,
                "--threads",
                "4",
                "--out",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unwritable_output_path_fails() {
    let status = bin()
        .args([
            "phase-diagram",
            "--params",
            PARAMS,
            "--grid",
            r#"{"min_c":0.0,"max_c":1.0,"n_c":2,"min_i":0.0,"max_i":1.0,"n_i":2}"#,
            "--out",
            "/nonexistent-dir/out.csv",
        ])
        .status()
        .unwrap();
    assert!(!status.success());
}

#[test]
fn single_point_grid_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let status = bin()
        .args([
            "phase-diagram",
            "--params",
            PARAMS,
            "--grid",
            r#"{"min_c":0.3,"max_c":0.3,"n_c":1,"min_i":0.2,"max_i":0.2,"n_i":1}"#,
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().last().unwrap().contains("Normal"));
}

#[test]
fn exact_json_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("exact.json");
    let vecs = dir.path().join("vectors.bin");
    let params = r#"{"omega_cav":1.0,"omega0_C":1.0,"omega0_I":1.0,"Omega_C":0.3,"Omega_I":0.3,"N_C":2,"N_I":2}"#;
    let status = bin()
        .args(["exact", "--params", params, "--n-max", "10", "--n-low", "6", "--out"])
        .arg(&out)
        .arg("--vectors")
        .arg(&vecs)
        .status()
        .unwrap();
    assert!(status.success());

    let doc: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(doc["basis"]["N_C"], 2);
    assert_eq!(doc["basis"]["n_max"], 10);
    assert_eq!(doc["eigenvalues"].as_array().unwrap().len(), 6);
    assert!(doc["symmetry"]["parity_commutator_norm"].as_f64().unwrap() < 1e-12);
    assert_eq!(doc["config"]["subcommand"], "exact");
    assert!(doc["version"].is_string());

    // binary dump: 99-dim basis, 6 vectors, 16 bytes per amplitude
    let raw = fs::read(&vecs).unwrap();
    assert_eq!(raw.len(), 99 * 6 * 16);
    let sidecar: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("vectors.bin.json"))).unwrap();
    assert_eq!(sidecar["n_vectors"], 6);
}

#[test]
fn splittings_fit_in_footer() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("split.csv");
    let params = r#"{"omega_cav":1.0,"omega0_C":1.0,"omega0_I":1.0,"Omega_C":0.0,"Omega_I":0.0,"N_C":2,"N_I":2}"#;
    let status = bin()
        .args([
            "splittings",
            "--params",
            params,
            "--omegas",
            "1.1,1.2",
            "--n-max",
            "60",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    assert!(text.lines().nth(2).unwrap().starts_with("Omega,splitting_1"));
    let footer = text.lines().last().unwrap();
    assert!(footer.starts_with("# fitted_slope_ln_s3_vs_Omega2:"));
    let slope: f64 = footer.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(slope < 0.0);
}

#[test]
fn berry_json_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("berry.json");
    let params = r#"{"omega_cav":1.0,"omega0_C":1.0,"omega0_I":1.0,"Omega_C":2.0,"Omega_I":2.0,"N_C":2,"N_I":2}"#;
    // tiny loop with few steps: exercises the plumbing, not the physics
    let status = bin()
        .args([
            "berry",
            "--params",
            params,
            "--loop",
            r#"{"vertices":[[1.95,1.95],[2.05,1.95],[2.05,2.05],[1.95,2.05]],"n_steps":24}"#,
            "--n-max",
            "60",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(doc["holonomy"].as_array().unwrap().len(), 4);
    assert!(doc["unitarity_defect"].as_f64().unwrap() < 1e-6);
    assert!(doc["predicted_angle"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["min_overlap_trace"].as_array().unwrap().len(), 24);
}
