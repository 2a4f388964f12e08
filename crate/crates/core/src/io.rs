//! Deterministic file formats: CSV tables for sweeps, JSON documents for
//! single runs, raw binary eigenvector dumps. Every document embeds the
//! run configuration and library version so a file is reproducible from
//! its own header.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::berry::{Holonomy, HolonomyReport, LoopSpec};
use crate::error::{Error, Result};
use crate::exactdiag::{FiniteSizeSpectrum, GroundManifold, OrderParameters, SymmetryReport};
use crate::model::{ModelParams, Phase};
use crate::sweep::{GridSpec, PhaseRow, RaySpec, SurfaceRow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub params: ModelParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<RaySpec>,
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none")]
    pub loop_spec: Option<LoopSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Round-trip float formatting; 17 significant digits, fixed layout so
/// identical runs diff byte-identical.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_phase(phase: &Phase) -> String {
    let mut s = phase.tag.to_string();
    if phase.on_boundary_c {
        s.push_str("*C");
    }
    if phase.on_boundary_i {
        s.push_str("*I");
    }
    s
}

fn config_comment(cfg: &RunConfig) -> String {
    // single-line JSON so the CSV stays one comment line per fact
    format!(
        "# version: {VERSION}\n# config: {}\n",
        serde_json::to_string(cfg).expect("config serializes")
    )
}

pub fn phase_csv(cfg: &RunConfig, rows: &[PhaseRow]) -> String {
    let mut out = config_comment(cfg);
    out.push_str("Omega_C,Omega_I,phase,mu_C,mu_I,gamma_C,gamma_I,beta_C,beta_I,E_G\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.coupling_c),
            fmt_f64(r.coupling_i),
            fmt_phase(&r.phase),
            fmt_f64(r.mu_c),
            fmt_f64(r.mu_i),
            fmt_f64(r.gamma_c),
            fmt_f64(r.gamma_i),
            fmt_f64(r.beta_c),
            fmt_f64(r.beta_i),
            fmt_f64(r.energy),
        );
    }
    out
}

/// Spectrum table. The trailing `error` column is empty on success and
/// carries the per-point failure message otherwise (numeric columns are
/// then `nan`); a sweep file is complete even when points fail.
pub fn spectrum_csv(cfg: &RunConfig, rows: &[SurfaceRow], radial: Option<&RaySpec>) -> String {
    let mut out = config_comment(cfg);
    if radial.is_some() {
        out.push_str("r,");
    }
    out.push_str("Omega_C,Omega_I,omega_l,omega_m,omega_u,stable,residual,error\n");
    for row in rows {
        if radial.is_some() {
            let r = (row.coupling_c * row.coupling_c + row.coupling_i * row.coupling_i).sqrt();
            let _ = write!(out, "{},", fmt_f64(r));
        }
        let _ = write!(out, "{},{},", fmt_f64(row.coupling_c), fmt_f64(row.coupling_i));
        match (&row.spectrum, &row.error) {
            (Some(s), _) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},",
                    fmt_f64(s.omega_l),
                    fmt_f64(s.omega_m),
                    fmt_f64(s.omega_u),
                    s.stable,
                    fmt_f64(s.residual),
                );
            }
            (None, err) => {
                let msg = err.as_deref().unwrap_or("unknown").replace([',', '\n'], ";");
                let _ = writeln!(out, "nan,nan,nan,false,nan,{msg}");
            }
        }
    }
    out
}

/// Splittings table: one row per coupling, three ascending gaps, plus the
/// least-squares slope of ln(splitting_3) against Omega^2 as a footer
/// (the largest gap carries the leading tunneling amplitude).
pub fn splittings_csv(cfg: &RunConfig, rows: &[(f64, [f64; 3])], slope: f64) -> String {
    let mut out = config_comment(cfg);
    out.push_str("Omega,splitting_1,splitting_2,splitting_3\n");
    for (omega, s) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(*omega),
            fmt_f64(s[0]),
            fmt_f64(s[1]),
            fmt_f64(s[2]),
        );
    }
    let _ = writeln!(out, "# fitted_slope_ln_s3_vs_Omega2: {}", fmt_f64(slope));
    out
}

/// Least-squares slope of ln(y) against x.
pub fn log_slope(xy: &[(f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let sx: f64 = xy.iter().map(|&(x, _)| x).sum();
    let sy: f64 = xy.iter().map(|&(_, y)| y.ln()).sum();
    let sxx: f64 = xy.iter().map(|&(x, _)| x * x).sum();
    let sxy: f64 = xy.iter().map(|&(x, y)| x * y.ln()).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// JSON document for one exact-diagonalization run.
pub fn exact_json(
    cfg: &RunConfig,
    spec: &FiniteSizeSpectrum,
    manifold: Option<&GroundManifold>,
    symmetry: Option<&SymmetryReport>,
    order: Option<&OrderParameters>,
) -> String {
    let doc = json!({
        "version": VERSION,
        "config": cfg,
        "basis": spec.basis,
        "eigenvalues": spec.eigenvalues,
        "cutoff_converged": spec.cutoff_converged,
        "cutoff_residual": spec.cutoff_residual,
        "ground_manifold": manifold,
        "symmetry": symmetry,
        "order_parameters": order.map(|op| json!({
            "coherence_eigs": op.coherence_eigs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "spin_x_C_eigs": op.spin_x_c_eigs,
            "spin_x_I_eigs": op.spin_x_i_eigs,
        })),
    });
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

/// JSON document for one holonomy run.
pub fn berry_json(cfg: &RunConfig, h: &Holonomy, report: &HolonomyReport) -> String {
    let doc = json!({
        "version": VERSION,
        "config": cfg,
        "basis_labels": h.basis_labels,
        "holonomy": h.u,
        "unitarity_defect": h.unitarity_defect,
        "predicted_angle": h.predicted_angle,
        "measured_angles": h.measured_angles,
        "best_phi": report.best_phi,
        "deviation_from_conditional_phase": report.deviation,
        "phi_vs_predicted": report.phi_vs_predicted,
        "leakage": report.leakage,
        "min_overlap_trace": h.min_overlap_trace,
    });
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Raw eigenvector dump: column-after-column, each amplitude as two
/// little-endian f64 (re, im). A JSON sidecar `<path>.json` records the
/// basis, eigenvalues and layout.
pub fn write_eigenvectors(path: &Path, spec: &FiniteSizeSpectrum, cfg: &RunConfig) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut buf = Vec::with_capacity(spec.eigenvectors.len() * 16);
    for j in 0..spec.n_computed {
        for z in spec.eigenvectors.column(j) {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    f.write_all(&buf).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;

    let sidecar = json!({
        "version": VERSION,
        "config": cfg,
        "basis": spec.basis,
        "eigenvalues": spec.eigenvalues,
        "n_vectors": spec.n_computed,
        "layout": "column-major, complex128 little-endian interleaved (re, im)",
    });
    let side_path = path.with_extension(format!(
        "{}.json",
        path.extension().and_then(|e| e.to_str()).unwrap_or("bin")
    ));
    write_file(&side_path, &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"))
}

/// Parse a `--params`-style argument: inline JSON or a path to a JSON file.
pub fn parse_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Io {
            path: arg.to_string(),
            source: e,
        })?
    };
    Ok(serde_json::from_str(&text)?)
}

#[allow(dead_code)]
fn complex_pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}
