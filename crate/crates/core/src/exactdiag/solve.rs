//! Low-lying eigenpairs of the truncated Hamiltonian: dense below a size
//! threshold, Lanczos with full reorthogonalization above it.

use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use super::basis::BasisSpec;
use super::hamiltonian::Hamiltonian;
use crate::error::{Error, Result};

/// Above this dimension the iterative extremal solver is used.
pub const DENSE_THRESHOLD: usize = 1500;

/// Low-lying eigenpairs plus cutoff/convergence metadata.
///
/// `cutoff_converged`/`cutoff_residual` are only meaningful when the
/// spectrum came out of a cutoff-doubling loop; a direct solve reports
/// `false`/NaN.
#[derive(Debug, Clone)]
pub struct FiniteSizeSpectrum {
    pub eigenvalues: Vec<f64>,
    /// dim x n_computed; column j belongs to eigenvalues[j].
    pub eigenvectors: Array2<C64>,
    pub basis: BasisSpec,
    pub n_computed: usize,
    pub cutoff_converged: bool,
    pub cutoff_residual: f64,
}

impl FiniteSizeSpectrum {
    pub fn gap(&self) -> f64 {
        self.eigenvalues[1] - self.eigenvalues[0]
    }
}

pub fn diagonalize(h: &Hamiltonian, n_low: usize) -> Result<FiniteSizeSpectrum> {
    let dim = h.matrix.dim;
    if n_low > dim {
        return Err(Error::InvalidArgument(format!(
            "n_low={n_low} exceeds dimension {dim}"
        )));
    }
    let (eigenvalues, eigenvectors) = if dim <= DENSE_THRESHOLD || n_low * 3 > dim {
        dense_lowest(h, n_low)?
    } else {
        lanczos_lowest(h, n_low)?
    };
    let mut spec = FiniteSizeSpectrum {
        eigenvalues,
        eigenvectors,
        basis: h.basis,
        n_computed: n_low,
        cutoff_converged: false,
        cutoff_residual: f64::NAN,
    };
    fix_phases(&mut spec.eigenvectors);
    Ok(spec)
}

/// Force the dense path regardless of size (two-solver cross-checks).
pub fn diagonalize_dense(h: &Hamiltonian, n_low: usize) -> Result<FiniteSizeSpectrum> {
    let (eigenvalues, mut eigenvectors) = dense_lowest(h, n_low)?;
    fix_phases(&mut eigenvectors);
    Ok(FiniteSizeSpectrum {
        eigenvalues,
        eigenvectors,
        basis: h.basis,
        n_computed: n_low,
        cutoff_converged: false,
        cutoff_residual: f64::NAN,
    })
}

/// Force the iterative path regardless of size.
pub fn diagonalize_iterative(h: &Hamiltonian, n_low: usize) -> Result<FiniteSizeSpectrum> {
    let (eigenvalues, mut eigenvectors) = lanczos_lowest(h, n_low)?;
    fix_phases(&mut eigenvectors);
    Ok(FiniteSizeSpectrum {
        eigenvalues,
        eigenvectors,
        basis: h.basis,
        n_computed: n_low,
        cutoff_converged: false,
        cutoff_residual: f64::NAN,
    })
}

fn dense_lowest(h: &Hamiltonian, n_low: usize) -> Result<(Vec<f64>, Array2<C64>)> {
    let dense = h.matrix.to_dense();
    let (vals, vecs) = dense
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("dense Hermitian solver: {e}")))?;
    // LAPACK returns ascending order already
    let eigenvalues: Vec<f64> = vals.iter().take(n_low).copied().collect();
    let eigenvectors = vecs.slice(s![.., 0..n_low]).to_owned();
    Ok((eigenvalues, eigenvectors))
}

/// Make the largest-magnitude amplitude of each column real positive, so
/// overlaps and holonomy inputs are reproducible.
fn fix_phases(vectors: &mut Array2<C64>) {
    for mut col in vectors.columns_mut() {
        let mut best = 0usize;
        let mut best_norm = -1.0f64;
        for (i, z) in col.iter().enumerate() {
            let n = z.norm_sqr();
            if n > best_norm {
                best_norm = n;
                best = i;
            }
        }
        let z = col[best];
        if z.norm() > 0.0 {
            let phase = z / z.norm();
            let correction = phase.conj();
            col.mapv_inplace(|v| v * correction);
        }
    }
}

/// Lanczos with full reorthogonalization; deterministic start vector.
fn lanczos_lowest(h: &Hamiltonian, n_low: usize) -> Result<(Vec<f64>, Array2<C64>)> {
    let dim = h.matrix.dim;
    let tol = 1e-11;
    let max_iter = dim.min((40 * n_low).max(400));

    let mut v = Array1::from_iter(
        (0..dim).map(|i| C64::new((1.234 * (i as f64 + 1.0)).sin(), (2.71 * (i as f64 + 1.0)).cos())),
    );
    normalize(&mut v);

    let mut basis_vecs: Vec<Array1<C64>> = vec![v.clone()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = Array1::<C64>::zeros(dim);

    let scale = h.matrix.max_abs().max(1.0);

    loop {
        let m = alphas.len();
        let vm = &basis_vecs[m];
        h.matrix.matvec(vm, &mut w);
        let alpha = dot(vm, &w).re;
        alphas.push(alpha);

        // w <- w - alpha v_m - beta v_{m-1}, then full reorthogonalization
        w.zip_mut_with(vm, |wi, vi| *wi -= C64::new(alpha, 0.0) * vi);
        if m > 0 {
            let beta_prev = betas[m - 1];
            let prev = &basis_vecs[m - 1];
            w.zip_mut_with(prev, |wi, vi| *wi -= C64::new(beta_prev, 0.0) * vi);
        }
        for _ in 0..2 {
            for b in &basis_vecs {
                let ov = dot(b, &w);
                w.zip_mut_with(b, |wi, bi| *wi -= ov * bi);
            }
        }
        let beta = norm(&w);

        let m_len = alphas.len();
        if m_len >= n_low + 2 && m_len % 10 == 0 {
            let (ritz_vals, ritz_vecs) = tridiag_eig(&alphas, &betas)?;
            if (0..n_low).all(|k| beta * ritz_vecs[[m_len - 1, k]].abs() < tol * scale) {
                return Ok(assemble_ritz(&basis_vecs, &ritz_vals, &ritz_vecs, n_low, dim));
            }
        }

        if alphas.len() >= max_iter || beta < 1e-14 * scale {
            // invariant subspace exhausted or iteration budget reached
            let (ritz_vals, ritz_vecs) = tridiag_eig(&alphas, &betas)?;
            if alphas.len() >= n_low
                && (beta < 1e-12 * scale
                    || (0..n_low)
                        .all(|k| beta * ritz_vecs[[alphas.len() - 1, k]].abs() < 1e-8 * scale))
            {
                return Ok(assemble_ritz(&basis_vecs, &ritz_vals, &ritz_vecs, n_low, dim));
            }
            return Err(Error::NonConvergence(format!(
                "Lanczos: {} iterations, last beta-residual {:.3e} (dim {dim}, n_low {n_low})",
                alphas.len(),
                beta
            )));
        }

        let mut next = w.clone();
        next.mapv_inplace(|z| z / beta);
        betas.push(beta);
        basis_vecs.push(next);
    }
}

fn assemble_ritz(
    basis_vecs: &[Array1<C64>],
    ritz_vals: &[f64],
    ritz_vecs: &Array2<f64>,
    n_low: usize,
    dim: usize,
) -> (Vec<f64>, Array2<C64>) {
    let m = ritz_vals.len();
    let mut out = Array2::<C64>::zeros((dim, n_low));
    for k in 0..n_low {
        let mut col = Array1::<C64>::zeros(dim);
        for (j, b) in basis_vecs.iter().take(m).enumerate() {
            let c = C64::new(ritz_vecs[[j, k]], 0.0);
            col.zip_mut_with(b, |ci, bi| *ci += c * bi);
        }
        out.slice_mut(s![.., k]).assign(&col);
    }
    (ritz_vals.iter().take(n_low).copied().collect(), out)
}

/// Eigen-decomposition of the real symmetric tridiagonal Lanczos matrix.
fn tridiag_eig(alphas: &[f64], betas: &[f64]) -> Result<(Vec<f64>, Array2<f64>)> {
    let m = alphas.len();
    let mut t = Array2::<f64>::zeros((m, m));
    for (i, &a) in alphas.iter().enumerate() {
        t[[i, i]] = a;
    }
    for (i, &b) in betas.iter().take(m.saturating_sub(1)).enumerate() {
        t[[i, i + 1]] = b;
        t[[i + 1, i]] = b;
    }
    let (vals, vecs) = t
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("tridiagonal solver: {e}")))?;
    Ok((vals.to_vec(), vecs))
}

fn dot(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &Array1<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut Array1<C64>) {
    let n = norm(a);
    a.mapv_inplace(|z| z / n);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactdiag::hamiltonian::build_hamiltonian;
    use crate::model::ModelParams;
    use approx::assert_relative_eq;

    #[test]
    fn full_spectrum_trace_identity() {
        let p = ModelParams::resonant(0.4, 0.3, 2, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 2, 3)).unwrap();
        let dim = h.matrix.dim;
        let spec = diagonalize(&h, dim).unwrap();
        let trace_eig: f64 = spec.eigenvalues.iter().sum();
        let trace_mat: f64 = h
            .matrix
            .entries()
            .filter(|&(r, c, _)| r == c)
            .map(|(_, _, v)| v.re)
            .sum();
        assert_relative_eq!(trace_eig, trace_mat, max_relative = 1e-10);
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let p = ModelParams::resonant(0.8, 0.6, 2, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 2, 12)).unwrap();
        let spec = diagonalize(&h, 6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let ov = dot(
                    &spec.eigenvectors.column(a).to_owned(),
                    &spec.eigenvectors.column(b).to_owned(),
                );
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ov.norm() - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn dense_vs_iterative_agree() {
        // ~2535-dim case, normal phase so the low spectrum is nondegenerate
        let p = ModelParams::resonant(0.25, 0.25, 4, 4).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(4, 4, 100)).unwrap();
        assert!(h.matrix.dim > 2500);
        let dense = diagonalize_dense(&h, 5).unwrap();
        let iter = diagonalize_iterative(&h, 5).unwrap();
        for k in 0..5 {
            assert!(
                (dense.eigenvalues[k] - iter.eigenvalues[k]).abs() < 1e-9,
                "eigenvalue {k}: dense {} vs lanczos {}",
                dense.eigenvalues[k],
                iter.eigenvalues[k]
            );
        }
    }

    #[test]
    fn n_low_too_large_rejected() {
        let p = ModelParams::resonant(0.1, 0.1, 2, 2).unwrap();
        let h = build_hamiltonian(&p, &BasisSpec::new(2, 2, 2)).unwrap();
        assert!(diagonalize(&h, 1000).is_err());
    }
}
