//! Grid and ray sweeps over the coupling plane.
//!
//! Sweeps are embarrassingly parallel over points; output ordering always
//! matches the input ordering. With the `parallel` feature (default) the
//! maps run on rayon, otherwise sequentially.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bogoliubov::{excitation_spectrum, ExcitationSpectrum};
use crate::error::Result;
use crate::meanfield::{ground_state_energy, mean_fields, Sign};
use crate::model::{classify_phase, mu_tilde, ModelParams, Phase};

/// Rectangular grid in the `(Omega_C, Omega_I)` plane, row-major with
/// `Omega_I` fastest.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub min_c: f64,
    pub max_c: f64,
    pub n_c: usize,
    pub min_i: f64,
    pub max_i: f64,
    pub n_i: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let axis = |min: f64, max: f64, n: usize| -> Vec<f64> {
            match n {
                0 => vec![],
                1 => vec![min],
                _ => (0..n)
                    .map(|i| min + (max - min) * i as f64 / (n - 1) as f64)
                    .collect(),
            }
        };
        let cs = axis(self.min_c, self.max_c, self.n_c);
        let is = axis(self.min_i, self.max_i, self.n_i);
        let mut out = Vec::with_capacity(cs.len() * is.len());
        for &c in &cs {
            for &i in &is {
                out.push((c, i));
            }
        }
        out
    }
}

/// Radial cut at polar angle `theta` through the coupling plane,
/// `n_points` samples on `[0, r_max]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RaySpec {
    pub theta: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl RaySpec {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let (sin, cos) = self.theta.sin_cos();
        match self.n_points {
            0 => vec![],
            1 => vec![(0.0, 0.0)],
            n => (0..n)
                .map(|i| {
                    let r = self.r_max * i as f64 / (n - 1) as f64;
                    (r * cos, r * sin)
                })
                .collect(),
        }
    }
}

/// One spectrum-surface row; failures are recorded in-row so a sweep never
/// aborts on a bad point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub coupling_c: f64,
    pub coupling_i: f64,
    pub spectrum: Option<ExcitationSpectrum>,
    pub error: Option<String>,
}

/// One phase-diagram row per grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseRow {
    pub coupling_c: f64,
    pub coupling_i: f64,
    pub phase: Phase,
    pub mu_c: f64,
    pub mu_i: f64,
    pub gamma_c: f64,
    pub gamma_i: f64,
    pub beta_c: f64,
    pub beta_i: f64,
    pub energy: f64,
}

fn surface_row(p0: &ModelParams, coupling_c: f64, coupling_i: f64) -> SurfaceRow {
    let p = p0.with_couplings(coupling_c, coupling_i);
    match excitation_spectrum(&p) {
        Ok(s) => SurfaceRow {
            coupling_c,
            coupling_i,
            spectrum: Some(s),
            error: None,
        },
        Err(e) => SurfaceRow {
            coupling_c,
            coupling_i,
            spectrum: None,
            error: Some(e.to_string()),
        },
    }
}

fn phase_row(p0: &ModelParams, coupling_c: f64, coupling_i: f64, tol: f64) -> Result<PhaseRow> {
    let p = p0.with_couplings(coupling_c, coupling_i);
    let phase = classify_phase(&p, tol)?;
    let (mu_c, mu_i) = mu_tilde(&p)?;
    let mf = mean_fields(&p, Sign::Plus, Sign::Plus)?;
    let spec = excitation_spectrum(&p)?;
    let energy = ground_state_energy(&p, &spec)?;
    Ok(PhaseRow {
        coupling_c,
        coupling_i,
        phase,
        mu_c,
        mu_i,
        gamma_c: mf.gamma_c,
        gamma_i: mf.gamma_i,
        beta_c: mf.beta_c,
        beta_i: mf.beta_i,
        energy,
    })
}

/// Sequential spectrum sweep; the parallel version dispatches here when the
/// `parallel` feature is disabled.
pub fn spectrum_surface_seq(points: &[(f64, f64)], p0: &ModelParams) -> Vec<SurfaceRow> {
    points
        .iter()
        .map(|&(c, i)| surface_row(p0, c, i))
        .collect()
}

/// Spectrum sweep over arbitrary points, deterministic output ordering.
pub fn spectrum_surface(points: &[(f64, f64)], p0: &ModelParams) -> Vec<SurfaceRow> {
    #[cfg(feature = "parallel")]
    {
        points
            .par_iter()
            .map(|&(c, i)| surface_row(p0, c, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        spectrum_surface_seq(points, p0)
    }
}

pub fn phase_sweep_seq(
    points: &[(f64, f64)],
    p0: &ModelParams,
    boundary_tol: f64,
) -> Result<Vec<PhaseRow>> {
    points
        .iter()
        .map(|&(c, i)| phase_row(p0, c, i, boundary_tol))
        .collect()
}

pub fn phase_sweep(
    points: &[(f64, f64)],
    p0: &ModelParams,
    boundary_tol: f64,
) -> Result<Vec<PhaseRow>> {
    #[cfg(feature = "parallel")]
    {
        points
            .par_iter()
            .map(|&(c, i)| phase_row(p0, c, i, boundary_tol))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        phase_sweep_seq(points, p0, boundary_tol)
    }
}

/// Count the gapless crossings of the lower branch along a sampled ray:
/// maximal runs of consecutive samples with `omega_l < threshold` count as
/// one zero each.
pub fn count_zero_dips(rows: &[SurfaceRow], threshold: f64) -> usize {
    let mut count = 0;
    let mut in_dip = false;
    for row in rows {
        let low = row.spectrum.map(|s| s.omega_l).unwrap_or(f64::INFINITY);
        if low < threshold {
            if !in_dip {
                count += 1;
                in_dip = true;
            }
        } else {
            in_dip = false;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ModelParams {
        ModelParams::resonant(0.0, 0.0, 4, 4).unwrap()
    }

    #[test]
    fn empty_grid_gives_empty_table() {
        let rows = spectrum_surface(&[], &base());
        assert!(rows.is_empty());
    }

    #[test]
    fn ordering_matches_input() {
        let pts = vec![(0.1, 0.2), (0.9, 0.1), (0.4, 0.4)];
        let rows = spectrum_surface(&pts, &base());
        for (row, pt) in rows.iter().zip(&pts) {
            assert_eq!((row.coupling_c, row.coupling_i), *pt);
        }
        let seq = spectrum_surface_seq(&pts, &base());
        for (a, b) in rows.iter().zip(&seq) {
            assert_eq!(
                a.spectrum.unwrap().omega_l.to_bits(),
                b.spectrum.unwrap().omega_l.to_bits()
            );
        }
    }

    #[test]
    fn diagonal_ray_single_critical_point() {
        let ray = RaySpec {
            theta: std::f64::consts::FRAC_PI_4,
            r_max: 1.5,
            n_points: 3001,
        };
        let rows = spectrum_surface(&ray.points(), &base());
        assert_eq!(count_zero_dips(&rows, 0.05), 1);
    }

    #[test]
    fn asymmetric_ray_two_critical_points() {
        let ray = RaySpec {
            theta: std::f64::consts::PI / 7.0,
            r_max: 1.5,
            n_points: 3001,
        };
        let rows = spectrum_surface(&ray.points(), &base());
        assert_eq!(count_zero_dips(&rows, 0.05), 2);
    }

    #[test]
    fn grid_shape_and_counts() {
        let g = GridSpec {
            min_c: 0.0,
            max_c: 1.0,
            n_c: 3,
            min_i: 0.0,
            max_i: 1.0,
            n_i: 2,
        };
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (0.0, 0.0));
        assert_eq!(pts[5], (1.0, 1.0));
    }
}
