//! Finite-size oracle: truncated Hamiltonian, low-lying spectra, symmetry
//! verification, ground-manifold structure and deep-coupling vacua.

pub mod basis;
pub mod hamiltonian;
pub mod manifold;
pub mod operators;
pub mod solve;
pub mod symmetry;
pub mod vacua;

pub use basis::BasisSpec;
pub use hamiltonian::{build_hamiltonian, Hamiltonian, SparseHermitian};
pub use manifold::{
    ground_manifold, ground_splittings, order_parameters, GroundManifold, OrderParameters,
    DEFAULT_GAP_FACTOR, SPLITTINGS_GAP_FACTOR,
};
pub use solve::{diagonalize, diagonalize_dense, diagonalize_iterative, FiniteSizeSpectrum};
pub use symmetry::{
    check_symmetries, parity_operator, parity_sector_spectrum, symmetry_report, SymmetryReport,
};
pub use vacua::{asymptotic_vacua, asymptotic_vacua_with_margin};

use crate::error::{Error, Result};
use crate::meanfield::{mean_fields, Sign};
use crate::model::ModelParams;

/// Doubles the Fock cutoff until each of the lowest `n_low` eigenvalues
/// moves by less than `tol`, starting from a mean-field photon-number
/// estimate. The returned spectrum is at the converged cutoff with
/// `cutoff_converged = true` and the last eigenvalue movement recorded.
pub fn cutoff_convergence(
    p: &ModelParams,
    tol: f64,
    n_low: usize,
) -> Result<FiniteSizeSpectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tol must be > 0".into()));
    }
    let mf = mean_fields(p, Sign::Plus, Sign::Plus)?;
    let mut n_max = (mf.gamma_c + mf.gamma_i).ceil() as u32 + 20;

    let mut prev = spectrum_at(p, n_max, n_low)?;
    loop {
        let next_n = n_max * 2;
        let next = spectrum_at(p, next_n, n_low)?;
        let residual = prev
            .eigenvalues
            .iter()
            .zip(next.eigenvalues.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if residual < tol {
            let mut converged = next;
            converged.cutoff_converged = true;
            converged.cutoff_residual = residual;
            return Ok(converged);
        }
        prev = next;
        n_max = next_n;
    }
}

fn spectrum_at(p: &ModelParams, n_max: u32, n_low: usize) -> Result<FiniteSizeSpectrum> {
    let basis = BasisSpec::new(p.n_c, p.n_i, n_max);
    let h = build_hamiltonian(p, &basis)?;
    diagonalize(&h, n_low.min(h.matrix.dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_zero_rejected() {
        let p = ModelParams::resonant(0.1, 0.1, 2, 2).unwrap();
        assert!(cutoff_convergence(&p, 0.0, 2).is_err());
    }

    #[test]
    fn decoupled_converges_immediately() {
        let p = ModelParams::resonant(0.0, 0.0, 2, 2).unwrap();
        let spec = cutoff_convergence(&p, 1e-10, 3).unwrap();
        assert!(spec.cutoff_converged);
        assert_eq!(spec.basis.n_max, 40); // first doubling of the base estimate
        assert!((spec.eigenvalues[0] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn converged_cutoff_regression() {
        let p = ModelParams::resonant(1.0, 1.0, 4, 4).unwrap();
        let spec = cutoff_convergence(&p, 1e-8, 4).unwrap();
        assert!(spec.cutoff_converged);
        assert!(spec.cutoff_residual < 1e-8);
        // regression value: the doubling loop settles at this cutoff
        assert_eq!(spec.basis.n_max, 112);
    }
}
