//! Excitation-number parity and the two quadrature reflections it factors
//! into.
//!
//! Parity is exact even under Fock truncation: every Hamiltonian term
//! changes the photon number and the flipped-spin count by matching
//! parities. The reflection that flips the i(a - a^dag) quadrature acts
//! antiunitarily as `U_I . conj` with a diagonal `U_I`; in the fixed basis
//! the conjugation is entrywise (the C coupling is real, the I coupling
//! purely imaginary). The other reflection is parity composed with it.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::basis::BasisSpec;
use super::hamiltonian::{build_hamiltonian, Hamiltonian, SparseHermitian};
use crate::error::Result;
use crate::model::ModelParams;
use ndarray_linalg::{Eigh, UPLO};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub parity_commutator_norm: f64,
    #[serde(rename = "TI_defect_norm")]
    pub ti_defect_norm: f64,
    #[serde(rename = "TC_defect_norm")]
    pub tc_defect_norm: f64,
    pub sector_dims: (usize, usize),
    pub h_max_norm: f64,
}

/// Diagonal of the parity operator: (-1)^(n + (m_C + N_C/2) + (m_I + N_I/2)).
pub fn parity_operator(basis: &BasisSpec) -> Vec<f64> {
    (0..basis.dim())
        .map(|idx| {
            let (mc, mi, n) = basis.state(idx);
            if (mc + mi + n) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}

/// Diagonal of U_I = exp(i pi (J_z^I + N_I/2)): (-1)^(m_I + N_I/2).
pub fn u_i_diagonal(basis: &BasisSpec) -> Vec<f64> {
    (0..basis.dim())
        .map(|idx| {
            let (_, mi, _) = basis.state(idx);
            if mi % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}

/// Diagonal of U_C = Pi * U_I: (-1)^(n + m_C + N_C/2).
pub fn u_c_diagonal(basis: &BasisSpec) -> Vec<f64> {
    (0..basis.dim())
        .map(|idx| {
            let (mc, _, n) = basis.state(idx);
            if (mc + n) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect()
}

pub fn check_symmetries(p: &ModelParams, basis: &BasisSpec) -> Result<SymmetryReport> {
    let h = build_hamiltonian(p, basis)?;
    Ok(symmetry_report(&h.matrix, basis))
}

/// Defect norms of an arbitrary matrix against the symmetry algebra; used
/// directly so corrupted matrices report nonzero defects instead of being
/// masked.
pub fn symmetry_report(m: &SparseHermitian, basis: &BasisSpec) -> SymmetryReport {
    let parity = parity_operator(basis);
    let u_i = u_i_diagonal(basis);
    let u_c = u_c_diagonal(basis);

    let mut comm = 0.0f64;
    let mut ti = 0.0f64;
    let mut tc = 0.0f64;
    for (row, col, v) in m.entries() {
        comm = comm.max((v * (parity[col] - parity[row])).norm());
        // (U conj(H) U^dag)_{rc} = u_r u_c conj(H_{rc}) for diagonal +-1 U
        ti = ti.max((u_i[row] * u_i[col] * v.conj() - v).norm());
        tc = tc.max((u_c[row] * u_c[col] * v.conj() - v).norm());
    }

    let even = parity.iter().filter(|&&s| s > 0.0).count();
    SymmetryReport {
        parity_commutator_norm: comm,
        ti_defect_norm: ti,
        tc_defect_norm: tc,
        sector_dims: (even, basis.dim() - even),
        h_max_norm: m.max_abs(),
    }
}

/// Full spectrum obtained by diagonalizing the two parity sectors
/// separately and merge-sorting, for cross-checking against the direct
/// solve. Dense; intended for small bases.
pub fn parity_sector_spectrum(h: &Hamiltonian) -> Result<Vec<f64>> {
    let parity = parity_operator(&h.basis);
    let mut all = Vec::with_capacity(h.matrix.dim);
    for sign in [1.0, -1.0] {
        let idx: Vec<usize> = (0..h.matrix.dim).filter(|&i| parity[i] == sign).collect();
        if idx.is_empty() {
            continue;
        }
        let pos: std::collections::HashMap<usize, usize> =
            idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut block = Array2::<C64>::zeros((idx.len(), idx.len()));
        for (r, c, v) in h.matrix.entries() {
            if let (Some(&br), Some(&bc)) = (pos.get(&r), pos.get(&c)) {
                block[[br, bc]] = v;
            } else if pos.contains_key(&r) != pos.contains_key(&c) && v.norm() > 0.0 {
                // cross-sector entry: parity is broken, surface it loudly
                return Err(crate::error::Error::Eigensolver(
                    "nonzero cross-parity matrix element".into(),
                ));
            }
        }
        let (vals, _) = block
            .eigh(UPLO::Lower)
            .map_err(|e| crate::error::Error::Eigensolver(format!("sector solver: {e}")))?;
        all.extend(vals.iter().copied());
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(all)
}
