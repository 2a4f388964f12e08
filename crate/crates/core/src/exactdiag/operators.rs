//! Elementary operators applied to state vectors in the fixed basis.

use ndarray::Array1;
use num_complex::Complex64 as C64;

use super::basis::BasisSpec;

/// Which chain a collective spin operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    C,
    I,
}

/// Apply the boson annihilation operator: a|n> = sqrt(n)|n-1>.
pub fn apply_annihilation(basis: &BasisSpec, v: &Array1<C64>) -> Array1<C64> {
    let mut out = Array1::<C64>::zeros(v.len());
    for idx in 0..v.len() {
        let (mc, mi, n) = basis.state(idx);
        if n > 0 {
            out[basis.index(mc, mi, n - 1)] += C64::new((n as f64).sqrt(), 0.0) * v[idx];
        }
    }
    out
}

/// Apply the collective J_x of one chain.
pub fn apply_jx(basis: &BasisSpec, chain: Chain, v: &Array1<C64>) -> Array1<C64> {
    let n_spins = match chain {
        Chain::C => basis.n_c,
        Chain::I => basis.n_i,
    };
    let mut out = Array1::<C64>::zeros(v.len());
    for idx in 0..v.len() {
        let (mc, mi, n) = basis.state(idx);
        let level = match chain {
            Chain::C => mc,
            Chain::I => mi,
        };
        if level < n_spins {
            let elem = BasisSpec::jx_raising(n_spins, level);
            let target = match chain {
                Chain::C => basis.index(mc + 1, mi, n),
                Chain::I => basis.index(mc, mi + 1, n),
            };
            out[target] += C64::new(elem, 0.0) * v[idx];
        }
        if level > 0 {
            let elem = BasisSpec::jx_raising(n_spins, level - 1);
            let target = match chain {
                Chain::C => basis.index(mc - 1, mi, n),
                Chain::I => basis.index(mc, mi - 1, n),
            };
            out[target] += C64::new(elem, 0.0) * v[idx];
        }
    }
    out
}

/// Entrywise complex conjugation followed by a diagonal +-1 unitary; the
/// action of the antiunitary reflections on state vectors.
pub fn apply_antiunitary(diag: &[f64], v: &Array1<C64>) -> Array1<C64> {
    Array1::from_iter(
        v.iter()
            .zip(diag.iter())
            .map(|(z, &u)| C64::new(u, 0.0) * z.conj()),
    )
}

/// Apply a diagonal operator given by its real diagonal.
pub fn apply_diagonal(diag: &[f64], v: &Array1<C64>) -> Array1<C64> {
    Array1::from_iter(
        v.iter()
            .zip(diag.iter())
            .map(|(z, &u)| C64::new(u, 0.0) * z),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annihilation_on_fock_state() {
        let b = BasisSpec::new(1, 1, 3);
        let mut v = Array1::<C64>::zeros(b.dim());
        v[b.index(0, 0, 2)] = C64::new(1.0, 0.0);
        let av = apply_annihilation(&b, &v);
        assert!((av[b.index(0, 0, 1)] - C64::new(2.0f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jx_spin_half_flips() {
        let b = BasisSpec::new(1, 1, 0);
        let mut v = Array1::<C64>::zeros(b.dim());
        v[b.index(0, 0, 0)] = C64::new(1.0, 0.0);
        let jv = apply_jx(&b, Chain::C, &v);
        assert!((jv[b.index(1, 0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }
}
