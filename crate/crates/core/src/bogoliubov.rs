//! Effective quadratic-Hamiltonian parameters and the 6x6 dynamic matrix
//! whose paired eigenvalues are the three excitation branches.
//!
//! The matrix is diagonalized with a general complex eigensolver and the
//! eigenvalues paired as {+w, -w}; the symplectic-exploiting route would
//! fail exactly at the gapless points the sweeps must cross.

use ndarray::{s, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{mu_tilde, ModelParams};

/// Eigenvalues with |w| below this (times omega_cav) are snapped to 0.
pub const ZERO_SNAP_REL: f64 = 1e-8;
/// Imaginary parts above this (times omega_cav) mark the point unstable.
pub const STABILITY_TOL_REL: f64 = 1e-9;

/// Parameters of the quadratic Hamiltonian in the displaced frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub omega_tilde_c: f64,
    pub omega_tilde_i: f64,
    pub coupling_tilde_c: f64,
    pub coupling_tilde_i: f64,
    pub d_c: f64,
    pub d_i: f64,
}

/// The 3x3 blocks and the assembled 6x6 matrix `[[P, Q], [-Q^H, -P^T]]`.
///
/// Mode ordering is fixed: 0 = cavity, 1 = chain C, 2 = chain I.
#[derive(Debug, Clone)]
pub struct BogoliubovMatrix {
    pub p: Array2<C64>,
    pub q: Array2<C64>,
    pub m: Array2<C64>,
}

/// The three non-negative branch frequencies, sorted ascending.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExcitationSpectrum {
    pub omega_l: f64,
    pub omega_m: f64,
    pub omega_u: f64,
    /// All six eigenvalues real (within tolerance) and in +- pairs.
    pub stable: bool,
    /// Worst |w_i^+ + w_i^-| pairing defect.
    pub residual: f64,
}

pub fn effective_parameters(p: &ModelParams) -> Result<EffectiveParams> {
    let (mu_c, mu_i) = mu_tilde(p)?;
    let chain = |omega0: f64, coupling: f64, mu: f64| {
        (
            omega0 * (1.0 + mu) / (2.0 * mu),
            std::f64::consts::SQRT_2 * coupling * mu / (1.0 + mu).sqrt(),
            omega0 * (3.0 + mu) * (1.0 - mu) / (8.0 * mu * (1.0 + mu)),
        )
    };
    let (omega_tilde_c, coupling_tilde_c, d_c) = chain(p.omega0_c, p.coupling_c, mu_c);
    let (omega_tilde_i, coupling_tilde_i, d_i) = chain(p.omega0_i, p.coupling_i, mu_i);
    Ok(EffectiveParams {
        omega_tilde_c,
        omega_tilde_i,
        coupling_tilde_c,
        coupling_tilde_i,
        d_c,
        d_i,
    })
}

pub fn build_bogoliubov_matrix(params: &ModelParams) -> Result<BogoliubovMatrix> {
    let eff = effective_parameters(params)?;
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);

    let oc = eff.coupling_tilde_c;
    let oi = eff.coupling_tilde_i;
    let p = ndarray::array![
        [re(params.omega_cav), re(oc), im(oi)],
        [re(oc), re(eff.omega_tilde_c + 2.0 * eff.d_c), re(0.0)],
        [im(-oi), re(0.0), re(eff.omega_tilde_i + 2.0 * eff.d_i)],
    ];
    let q = ndarray::array![
        [re(0.0), re(-oc), im(-oi)],
        [re(-oc), re(-2.0 * eff.d_c), re(0.0)],
        [im(-oi), re(0.0), re(-2.0 * eff.d_i)],
    ];

    let mut m = Array2::<C64>::zeros((6, 6));
    m.slice_mut(s![0..3, 0..3]).assign(&p);
    m.slice_mut(s![0..3, 3..6]).assign(&q);
    let q_dag = q.t().mapv(|z| z.conj());
    m.slice_mut(s![3..6, 0..3]).assign(&q_dag.mapv(|z| -z));
    m.slice_mut(s![3..6, 3..6]).assign(&p.t().mapv(|z| -z));

    Ok(BogoliubovMatrix { p, q, m })
}

pub fn excitation_spectrum(p: &ModelParams) -> Result<ExcitationSpectrum> {
    let m = build_bogoliubov_matrix(p)?;
    let (eigs, _) = m.m.eig().map_err(|e| {
        Error::Eigensolver(format!(
            "6x6 eigensolver failed at Omega_C={}, Omega_I={}: {e}",
            p.coupling_c, p.coupling_i
        ))
    })?;

    let snap = ZERO_SNAP_REL * p.omega_cav;
    let imag_tol = STABILITY_TOL_REL * p.omega_cav;

    let mut stable = eigs.iter().all(|z| z.im.abs() <= imag_tol.max(snap));
    let mut zeros: Vec<f64> = Vec::new();
    let mut pos: Vec<f64> = Vec::new();
    let mut neg: Vec<f64> = Vec::new();
    for z in eigs.iter() {
        if z.re.abs() < snap {
            zeros.push(0.0);
        } else if z.re > 0.0 {
            pos.push(z.re);
        } else {
            neg.push(z.re);
        }
    }
    pos.sort_by(|a, b| a.partial_cmp(b).unwrap());
    neg.sort_by(|a, b| b.partial_cmp(a).unwrap()); // descending magnitude order matches pos

    let mut residual = 0.0f64;
    if pos.len() == neg.len() {
        for (wp, wn) in pos.iter().zip(neg.iter()) {
            residual = residual.max((wp + wn).abs());
        }
    } else {
        stable = false;
        residual = f64::INFINITY;
    }
    if zeros.len() % 2 != 0 {
        stable = false;
    }

    let mut branches: Vec<f64> = zeros
        .iter()
        .take(zeros.len() / 2)
        .copied()
        .chain(pos.iter().copied())
        .collect();
    branches.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if branches.len() != 3 {
        // grossly unstable point: report magnitudes so sweeps keep a row
        let mut mags: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
        mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        branches = vec![mags[0], mags[2], mags[4]];
        stable = false;
    }

    Ok(ExcitationSpectrum {
        omega_l: branches[0],
        omega_m: branches[1],
        omega_u: branches[2],
        stable,
        residual,
    })
}

/// Closed-form branch frequencies of the single-chain model (the I chain
/// decoupled), used as the independent check of the 6x6 path.
///
/// Normal phase: `w_pm^2 = (w^2 + w0^2)/2 +- sqrt((w^2 - w0^2)^2 + 16
/// Omega^2 w w0)/2`. Superradiant phase: same with `w0 -> w0/mu` and the
/// cross term `4 w^2 w0^2`.
pub fn single_chain_closed_form(
    omega_cav: f64,
    omega0: f64,
    coupling: f64,
) -> (f64, f64) {
    let critical = 0.5 * (omega_cav * omega0).sqrt();
    let (a, d) = if coupling <= critical {
        let a = omega_cav * omega_cav + omega0 * omega0;
        let d = ((omega_cav * omega_cav - omega0 * omega0).powi(2)
            + 16.0 * coupling * coupling * omega_cav * omega0)
            .sqrt();
        (a, d)
    } else {
        let mu = omega0 * omega_cav / (4.0 * coupling * coupling);
        let w0m = omega0 / mu;
        let a = omega_cav * omega_cav + w0m * w0m;
        let d = ((w0m * w0m - omega_cav * omega_cav).powi(2)
            + 4.0 * omega_cav * omega_cav * omega0 * omega0)
            .sqrt();
        (a, d)
    };
    let low = (0.5 * (a - d)).max(0.0).sqrt();
    let high = (0.5 * (a + d)).sqrt();
    (low, high)
}
