//! Parameter space, critical lines and phase classification of the
//! two-chain quadrature-coupled spin-boson model.
//!
//! Each chain couples to one quadrature of the same bosonic mode, so the
//! two couplings break their symmetries independently along two straight
//! critical lines `Omega_k = (1/2) sqrt(omega_cav * omega0_k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for flagging a point as sitting on a critical line.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// The seven numbers defining one Hamiltonian instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Cavity (boson) frequency, > 0.
    pub omega_cav: f64,
    /// Transition frequency of the C chain, > 0.
    #[serde(rename = "omega0_C")]
    pub omega0_c: f64,
    /// Transition frequency of the I chain, > 0.
    #[serde(rename = "omega0_I")]
    pub omega0_i: f64,
    /// Coupling of the C chain to the (a + a^dag) quadrature, >= 0.
    #[serde(rename = "Omega_C")]
    pub coupling_c: f64,
    /// Coupling of the I chain to the i(a - a^dag) quadrature, >= 0.
    #[serde(rename = "Omega_I")]
    pub coupling_i: f64,
    /// Number of spins in the C chain, >= 1.
    #[serde(rename = "N_C")]
    pub n_c: u32,
    /// Number of spins in the I chain, >= 1.
    #[serde(rename = "N_I")]
    pub n_i: u32,
}

impl ModelParams {
    pub fn new(
        omega_cav: f64,
        omega0_c: f64,
        omega0_i: f64,
        coupling_c: f64,
        coupling_i: f64,
        n_c: u32,
        n_i: u32,
    ) -> Result<Self> {
        let p = Self {
            omega_cav,
            omega0_c,
            omega0_i,
            coupling_c,
            coupling_i,
            n_c,
            n_i,
        };
        p.validate()?;
        Ok(p)
    }

    /// All frequencies at 1, both chain sizes given; couplings set separately.
    pub fn resonant(coupling_c: f64, coupling_i: f64, n_c: u32, n_i: u32) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, coupling_c, coupling_i, n_c, n_i)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        if !(self.omega_cav > 0.0) || !self.omega_cav.is_finite() {
            return bad("omega_cav must be finite and > 0");
        }
        if !(self.omega0_c > 0.0) || !self.omega0_c.is_finite() {
            return bad("omega0_C must be finite and > 0");
        }
        if !(self.omega0_i > 0.0) || !self.omega0_i.is_finite() {
            return bad("omega0_I must be finite and > 0");
        }
        if !(self.coupling_c >= 0.0) || !self.coupling_c.is_finite() {
            return bad("Omega_C must be finite and >= 0");
        }
        if !(self.coupling_i >= 0.0) || !self.coupling_i.is_finite() {
            return bad("Omega_I must be finite and >= 0");
        }
        if self.n_c < 1 {
            return bad("N_C must be >= 1");
        }
        if self.n_i < 1 {
            return bad("N_I must be >= 1");
        }
        Ok(())
    }

    /// Copy with both couplings replaced.
    pub fn with_couplings(&self, coupling_c: f64, coupling_i: f64) -> Self {
        Self {
            coupling_c,
            coupling_i,
            ..*self
        }
    }

    /// The dual point: chains swapped, couplings swapped.
    pub fn swapped(&self) -> Self {
        Self {
            omega_cav: self.omega_cav,
            omega0_c: self.omega0_i,
            omega0_i: self.omega0_c,
            coupling_c: self.coupling_i,
            coupling_i: self.coupling_c,
            n_c: self.n_i,
            n_i: self.n_c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseTag {
    Normal,
    SuperradiantC,
    SuperradiantI,
    DoublySuperradiant,
}

impl std::fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PhaseTag::Normal => "Normal",
            PhaseTag::SuperradiantC => "SuperradiantC",
            PhaseTag::SuperradiantI => "SuperradiantI",
            PhaseTag::DoublySuperradiant => "DoublySuperradiant",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phase {
    pub tag: PhaseTag,
    pub on_boundary_c: bool,
    pub on_boundary_i: bool,
}

/// Critical couplings `(Omega_C^cr, Omega_I^cr)` of the two lines.
pub fn critical_couplings(p: &ModelParams) -> Result<(f64, f64)> {
    p.validate()?;
    Ok((
        0.5 * (p.omega_cav * p.omega0_c).sqrt(),
        0.5 * (p.omega_cav * p.omega0_i).sqrt(),
    ))
}

/// The pair `(mu_C, mu_I)`: 1 at or below criticality, `omega0_k *
/// omega_cav / (4 Omega_k^2)` above it. Continuous across the line and
/// always in (0, 1].
pub fn mu_tilde(p: &ModelParams) -> Result<(f64, f64)> {
    let (cr_c, cr_i) = critical_couplings(p)?;
    Ok((
        mu_one_chain(p.omega_cav, p.omega0_c, p.coupling_c, cr_c),
        mu_one_chain(p.omega_cav, p.omega0_i, p.coupling_i, cr_i),
    ))
}

fn mu_one_chain(omega_cav: f64, omega0: f64, coupling: f64, critical: f64) -> f64 {
    if coupling <= critical {
        1.0
    } else {
        omega0 * omega_cav / (4.0 * coupling * coupling)
    }
}

/// Classify a parameter point. Exactly-critical couplings classify with the
/// sub-critical branch and set the boundary flag.
pub fn classify_phase(p: &ModelParams, boundary_tol: f64) -> Result<Phase> {
    if !(boundary_tol >= 0.0) {
        return Err(Error::InvalidArgument("boundary_tol must be >= 0".into()));
    }
    let (cr_c, cr_i) = critical_couplings(p)?;
    let super_c = p.coupling_c > cr_c;
    let super_i = p.coupling_i > cr_i;
    let tag = match (super_c, super_i) {
        (false, false) => PhaseTag::Normal,
        (true, false) => PhaseTag::SuperradiantC,
        (false, true) => PhaseTag::SuperradiantI,
        (true, true) => PhaseTag::DoublySuperradiant,
    };
    Ok(Phase {
        tag,
        on_boundary_c: (p.coupling_c - cr_c).abs() <= boundary_tol * cr_c,
        on_boundary_i: (p.coupling_i - cr_i).abs() <= boundary_tol * cr_i,
    })
}
