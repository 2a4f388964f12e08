//! Sparse assembly of the truncated Hamiltonian in the fixed basis.
//!
//! Every basis state couples to at most 8 others (one photon up or down
//! combined with one spin level up or down in either chain), so the matrix
//! has O(dim) nonzeros and is stored in CSR form.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use super::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Hilbert-space dimensions above this are refused outright.
pub const DEFAULT_MAX_DIM: usize = 2_000_000;

/// Complex Hermitian sparse matrix in CSR layout, column-sorted per row.
#[derive(Debug, Clone)]
pub struct SparseHermitian {
    pub dim: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<u32>,
    pub data: Vec<C64>,
}

impl SparseHermitian {
    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn matvec(&self, x: &Array1<C64>, y: &mut Array1<C64>) {
        let xs = x.as_slice().unwrap();
        let ys = y.as_slice_mut().unwrap();
        for (row, yr) in ys.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.indptr[row]..self.indptr[row + 1] {
                acc += self.data[k] * xs[self.indices[k] as usize];
            }
            *yr = acc;
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut h = Array2::<C64>::zeros((self.dim, self.dim));
        for row in 0..self.dim {
            for k in self.indptr[row]..self.indptr[row + 1] {
                h[[row, self.indices[k] as usize]] = self.data[k];
            }
        }
        h
    }

    /// Iterate stored entries as (row, col, value).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |row| {
            (self.indptr[row]..self.indptr[row + 1])
                .map(move |k| (row, self.indices[k] as usize, self.data[k]))
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest |H - H^dag| entry, from the stored pattern.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in 0..self.dim {
            for k in self.indptr[row]..self.indptr[row + 1] {
                let col = self.indices[k] as usize;
                let transposed = self.get(col, row);
                worst = worst.max((self.data[k] - transposed.conj()).norm());
            }
        }
        worst
    }

    fn get(&self, row: usize, col: usize) -> C64 {
        let lo = self.indptr[row];
        let hi = self.indptr[row + 1];
        match self.indices[lo..hi].binary_search(&(col as u32)) {
            Ok(k) => self.data[lo + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }
}

/// The Hamiltonian together with the basis it was built in.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub basis: BasisSpec,
    pub matrix: SparseHermitian,
}

pub fn build_hamiltonian(p: &ModelParams, basis: &BasisSpec) -> Result<Hamiltonian> {
    build_hamiltonian_with_limit(p, basis, DEFAULT_MAX_DIM)
}

pub fn build_hamiltonian_with_limit(
    p: &ModelParams,
    basis: &BasisSpec,
    max_dim: usize,
) -> Result<Hamiltonian> {
    p.validate()?;
    if basis.n_c != p.n_c || basis.n_i != p.n_i {
        return Err(Error::Precondition(
            "basis chain sizes must match the model parameters".into(),
        ));
    }
    let dim = basis.dim();
    if dim > max_dim {
        // 9 stored entries per row, 16 bytes each, plus index overhead
        let mib = dim * 9 * 24 / (1 << 20);
        return Err(Error::DimensionOverflow { dim, max: max_dim, mib });
    }

    let g_c = 2.0 * p.coupling_c / (p.n_c as f64).sqrt();
    let g_i = 2.0 * p.coupling_i / (p.n_i as f64).sqrt();

    let mut indptr = Vec::with_capacity(dim + 1);
    let mut indices: Vec<u32> = Vec::with_capacity(dim * 9);
    let mut data: Vec<C64> = Vec::with_capacity(dim * 9);
    indptr.push(0);

    let mut row_entries: Vec<(usize, C64)> = Vec::with_capacity(9);
    for row in 0..dim {
        let (mc, mi, n) = basis.state(row);
        row_entries.clear();

        let diag = p.omega_cav * n as f64
            + p.omega0_c * BasisSpec::m_value(p.n_c, mc)
            + p.omega0_i * BasisSpec::m_value(p.n_i, mi);
        row_entries.push((row, C64::new(diag, 0.0)));

        // C chain: g_c (a + a^dag) J_x^C, all elements real
        if g_c != 0.0 {
            for (dmc, jx) in jx_neighbors(p.n_c, mc) {
                let mc2 = (mc as i64 + dmc) as u32;
                if n > 0 {
                    row_entries.push((
                        basis.index(mc2, mi, n - 1),
                        C64::new(g_c * (n as f64).sqrt() * jx, 0.0),
                    ));
                }
                if n < basis.n_max {
                    row_entries.push((
                        basis.index(mc2, mi, n + 1),
                        C64::new(g_c * ((n + 1) as f64).sqrt() * jx, 0.0),
                    ));
                }
            }
        }

        // I chain: i g_i (a - a^dag) J_x^I, purely imaginary elements:
        // <n-1| i(a - a^dag) |n> = i sqrt(n), <n+1| . |n> = -i sqrt(n+1)
        if g_i != 0.0 {
            for (dmi, jx) in jx_neighbors(p.n_i, mi) {
                let mi2 = (mi as i64 + dmi) as u32;
                if n > 0 {
                    row_entries.push((
                        basis.index(mc, mi2, n - 1),
                        C64::new(0.0, g_i * (n as f64).sqrt() * jx),
                    ));
                }
                if n < basis.n_max {
                    row_entries.push((
                        basis.index(mc, mi2, n + 1),
                        C64::new(0.0, -g_i * ((n + 1) as f64).sqrt() * jx),
                    ));
                }
            }
        }

        row_entries.sort_unstable_by_key(|&(col, _)| col);
        for &(col, val) in &row_entries {
            indices.push(col as u32);
            data.push(val);
        }
        indptr.push(indices.len());
    }

    Ok(Hamiltonian {
        basis: *basis,
        matrix: SparseHermitian {
            dim,
            indptr,
            indices,
            data,
        },
    })
}

/// The (level shift, J_x element) pairs reachable from a spin level.
fn jx_neighbors(n_spins: u32, level: u32) -> impl Iterator<Item = (i64, f64)> {
    let up = (level < n_spins).then(|| (1i64, BasisSpec::jx_raising(n_spins, level)));
    let down = (level > 0).then(|| (-1i64, BasisSpec::jx_raising(n_spins, level - 1)));
    up.into_iter().chain(down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermitian_by_construction() {
        let p = ModelParams::new(1.0, 0.7, 1.3, 0.8, 0.6, 2, 3).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 3, 8)).unwrap();
        let defect = h.matrix.hermiticity_defect();
        assert!(defect < 1e-14 * h.matrix.max_abs());
    }

    #[test]
    fn genuinely_complex_when_i_coupled() {
        let p = ModelParams::resonant(0.0, 0.5, 2, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 2, 4)).unwrap();
        assert!(h.matrix.data.iter().any(|z| z.im != 0.0));
    }

    #[test]
    fn decoupled_is_diagonal_with_known_ground() {
        let p = ModelParams::new(1.0, 0.9, 1.1, 0.0, 0.0, 3, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(3, 2, 5)).unwrap();
        for (r, c, _) in h.matrix.entries() {
            assert_eq!(r, c);
        }
        let ground = h
            .matrix
            .entries()
            .map(|(_, _, v)| v.re)
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(ground, -(3.0 * 0.9 + 2.0 * 1.1) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn chain_size_mismatch_refused() {
        let p = ModelParams::resonant(0.1, 0.1, 2, 2).unwrap();
        assert!(build_hamiltonian(&p, &BasisSpec::new(3, 2, 5)).is_err());
    }

    #[test]
    fn dimension_guard() {
        let p = ModelParams::resonant(0.1, 0.1, 2, 2).unwrap();
        let err = build_hamiltonian_with_limit(&p, &BasisSpec::new(2, 2, 100), 500).unwrap_err();
        assert!(matches!(err, Error::DimensionOverflow { .. }));
    }

    #[test]
    fn matvec_matches_dense() {
        let p = ModelParams::new(1.0, 0.7, 1.3, 0.8, 0.6, 2, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 2, 6)).unwrap();
        let dim = h.matrix.dim;
        let x = Array1::from_iter((0..dim).map(|i| C64::new((i as f64).sin(), (i as f64).cos())));
        let mut y = Array1::zeros(dim);
        h.matrix.matvec(&x, &mut y);
        let dense = h.matrix.to_dense();
        let y_dense = dense.dot(&x);
        for i in 0..dim {
            assert!((y[i] - y_dense[i]).norm() < 1e-12);
        }
    }
}
