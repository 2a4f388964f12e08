//! Quasi-degenerate ground-manifold extraction, manifold-restricted order
//! parameters, and the splittings inside the four-state ground group.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Eigh, UPLO};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::basis::BasisSpec;
use super::hamiltonian::build_hamiltonian;
use super::operators::{apply_annihilation, apply_jx, Chain};
use super::solve::{diagonalize, FiniteSizeSpectrum};
use crate::error::{Error, Result};
use crate::model::{classify_phase, ModelParams, PhaseTag};

/// Gap must exceed the internal spread by this factor for a clean group.
pub const DEFAULT_GAP_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundManifold {
    /// Number of states in the quasi-degenerate ground group.
    pub size: usize,
    /// Gaps between consecutive manifold levels, ascending.
    pub splittings: Vec<f64>,
    /// Set when no clean gap separates the candidates.
    pub ambiguous: bool,
    /// The runner-up grouping when ambiguous.
    pub alternate_size: Option<usize>,
}

/// The maximal leading group of eigenvalues whose internal spread is
/// smaller by `gap_factor` than the gap to the next state.
pub fn ground_manifold(spec: &FiniteSizeSpectrum, gap_factor: f64) -> Result<GroundManifold> {
    if spec.n_computed < 6 {
        return Err(Error::Precondition(
            "ground_manifold needs at least 6 computed states".into(),
        ));
    }
    let ev = &spec.eigenvalues;
    let mut candidates: Vec<(usize, f64)> = Vec::new(); // (size, gap)
    for k in 1..spec.n_computed {
        let spread = ev[k - 1] - ev[0];
        let gap = ev[k] - ev[k - 1];
        if gap > gap_factor * spread && gap > 0.0 {
            candidates.push((k, gap));
        }
    }
    if candidates.is_empty() {
        return Err(Error::AmbiguousManifold {
            primary: 1,
            alternate: spec.n_computed,
        });
    }
    let &(size, gap) = candidates.last().unwrap();
    // a smaller group with an even cleaner gap means the grouping is not clean
    let alternate = candidates
        .iter()
        .rev()
        .skip(1)
        .find(|&&(k, g)| k > 1 && g > gap)
        .map(|&(k, _)| k);
    let mut splittings: Vec<f64> = (1..size).map(|i| ev[i] - ev[i - 1]).collect();
    splittings.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(GroundManifold {
        size,
        splittings,
        ambiguous: alternate.is_some(),
        alternate_size: alternate,
    })
}

/// Eigenvalues of the manifold-restricted boson and spin operators. In
/// exact parity eigenstates the diagonals vanish; the broken-symmetry
/// values surface as the eigenvalues of the restricted matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderParameters {
    /// Eigenvalues of A_ij = <G_i|a|G_j> (emergent complex coherences).
    pub coherence_eigs: Vec<C64>,
    /// Eigenvalues of the restricted J_x^C (Hermitian, real).
    pub spin_x_c_eigs: Vec<f64>,
    /// Eigenvalues of the restricted J_x^I.
    pub spin_x_i_eigs: Vec<f64>,
}

pub fn order_parameters(
    spec: &FiniteSizeSpectrum,
    manifold: &GroundManifold,
    basis: &BasisSpec,
) -> Result<OrderParameters> {
    let k = manifold.size;
    let frame: Vec<Array1<C64>> = (0..k).map(|j| spec.eigenvectors.column(j).to_owned()).collect();

    let restricted = |apply: &dyn Fn(&Array1<C64>) -> Array1<C64>| -> Array2<C64> {
        let mut m = Array2::<C64>::zeros((k, k));
        for (j, g_j) in frame.iter().enumerate() {
            let op_gj = apply(g_j);
            for (i, g_i) in frame.iter().enumerate() {
                m[[i, j]] = g_i.iter().zip(op_gj.iter()).map(|(x, y)| x.conj() * y).sum();
            }
        }
        m
    };

    let a = restricted(&|v| apply_annihilation(basis, v));
    let xc = restricted(&|v| apply_jx(basis, Chain::C, v));
    let xi = restricted(&|v| apply_jx(basis, Chain::I, v));

    let (a_eigs, _) = a
        .eig()
        .map_err(|e| Error::Eigensolver(format!("restricted coherence matrix: {e}")))?;
    let (xc_eigs, _) = xc
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("restricted J_x^C: {e}")))?;
    let (xi_eigs, _) = xi
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("restricted J_x^I: {e}")))?;

    Ok(OrderParameters {
        coherence_eigs: a_eigs.to_vec(),
        spin_x_c_eigs: xc_eigs.to_vec(),
        spin_x_i_eigs: xi_eigs.to_vec(),
    })
}

/// Gap factor used by `ground_splittings`: at shallow doubly superradiant
/// points the splittings are only ~e^-3 of the gap above the group, so the
/// general-purpose factor 10 would reject a perfectly clean quadruplet.
pub const SPLITTINGS_GAP_FACTOR: f64 = 5.0;

/// The three gaps inside the four-state ground group at a doubly
/// superradiant point, ascending.
pub fn ground_splittings(p: &ModelParams, basis: &BasisSpec) -> Result<[f64; 3]> {
    let phase = classify_phase(p, 1e-9)?;
    if phase.tag != PhaseTag::DoublySuperradiant {
        return Err(Error::Precondition(format!(
            "ground_splittings needs a doubly superradiant point, got {}",
            phase.tag
        )));
    }
    let h = build_hamiltonian(p, basis)?;
    let n_low = 8.min(h.matrix.dim);
    let spec = diagonalize(&h, n_low)?;
    let manifold = ground_manifold(&spec, SPLITTINGS_GAP_FACTOR)?;
    if manifold.ambiguous {
        return Err(Error::AmbiguousManifold {
            primary: manifold.size,
            alternate: manifold.alternate_size.unwrap_or(0),
        });
    }
    if manifold.size != 4 {
        return Err(Error::Precondition(format!(
            "expected a four-state ground group, found {}",
            manifold.size
        )));
    }
    Ok([
        manifold.splittings[0],
        manifold.splittings[1],
        manifold.splittings[2],
    ])
}
