//! Displaced-frame mean fields for all four sign branches, and the
//! thermodynamic-limit ground-state energy.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bogoliubov::{effective_parameters, ExcitationSpectrum};
use crate::error::{Error, Result};
use crate::model::{critical_couplings, mu_tilde, ModelParams};

/// One of the two symmetry-breaking signs `epsilon_k = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// The four branches in the fixed (++, +-, -+, --) order.
    pub const BRANCHES: [(Sign, Sign); 4] = [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ];
}

/// Spontaneous mean fields of one `(eps_C, eps_I)` branch.
///
/// `gamma_k` is the boson displacement squared contributed by chain `k`,
/// `beta_k` the spin-boson occupation of the chain mode; both vanish at and
/// below the critical coupling. The boson coherence is
/// `eps_C sqrt(gamma_C) + i eps_I sqrt(gamma_I)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MeanFieldSolution {
    pub eps_c: Sign,
    pub eps_i: Sign,
    pub gamma_c: f64,
    pub gamma_i: f64,
    pub beta_c: f64,
    pub beta_i: f64,
    pub coherence: C64,
}

pub fn mean_fields(p: &ModelParams, eps_c: Sign, eps_i: Sign) -> Result<MeanFieldSolution> {
    let (mu_c, mu_i) = mu_tilde(p)?;
    let (cr_c, cr_i) = critical_couplings(p)?;

    let (gamma_c, beta_c) = chain_fields(p.coupling_c, cr_c, mu_c, p.n_c, p.omega_cav);
    let (gamma_i, beta_i) = chain_fields(p.coupling_i, cr_i, mu_i, p.n_i, p.omega_cav);

    Ok(MeanFieldSolution {
        eps_c,
        eps_i,
        gamma_c,
        gamma_i,
        beta_c,
        beta_i,
        coherence: C64::new(
            eps_c.value() * gamma_c.sqrt(),
            eps_i.value() * gamma_i.sqrt(),
        ),
    })
}

/// All four branches in the fixed (++, +-, -+, --) order.
pub fn all_branches(p: &ModelParams) -> Result<[MeanFieldSolution; 4]> {
    let mut out = [mean_fields(p, Sign::Plus, Sign::Plus)?; 4];
    for (slot, &(ec, ei)) in out.iter_mut().zip(Sign::BRANCHES.iter()).skip(1) {
        *slot = mean_fields(p, ec, ei)?;
    }
    Ok(out)
}

fn chain_fields(coupling: f64, critical: f64, mu: f64, n: u32, omega_cav: f64) -> (f64, f64) {
    if coupling <= critical {
        (0.0, 0.0)
    } else {
        let n = n as f64;
        let sqrt_gamma = coupling * (n * (1.0 - mu * mu)).sqrt() / omega_cav;
        (sqrt_gamma * sqrt_gamma, 0.5 * n * (1.0 - mu))
    }
}

/// Ground-state energy in the thermodynamic limit, in frequency units
/// (hbar = 1): half the zero-point shift of the three branch frequencies
/// minus the extensive condensation term of each chain.
///
/// A clean zero branch frequency (gapless point) is accepted; NaN branch
/// frequencies are refused.
pub fn ground_state_energy(p: &ModelParams, spectrum: &ExcitationSpectrum) -> Result<f64> {
    let freqs = [spectrum.omega_l, spectrum.omega_m, spectrum.omega_u];
    if freqs.iter().any(|w| w.is_nan()) {
        return Err(Error::GaplessEnergy);
    }
    let eff = effective_parameters(p)?;
    let (mu_c, mu_i) = mu_tilde(p)?;

    // Kahan summation: the O(1) zero-point piece must survive next to the
    // extensive terms when N_k is large.
    let terms = [
        0.5 * spectrum.omega_l,
        0.5 * spectrum.omega_m,
        0.5 * spectrum.omega_u,
        -0.5 * p.omega_cav,
        -0.5 * eff.omega_tilde_c,
        -0.5 * eff.omega_tilde_i,
        -extensive_term(p.omega0_c, mu_c, p.n_c),
        -extensive_term(p.omega0_i, mu_i, p.n_i),
    ];
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    Ok(sum)
}

fn extensive_term(omega0: f64, mu: f64, n: u32) -> f64 {
    omega0 / (4.0 * mu) * (n as f64 * (1.0 + mu * mu) + (1.0 - mu))
}
