//! Closed-form deep-coupling vacua: a boson coherent state times one
//! x-polarized ferromagnet per chain, valid when N_k is small against
//! (Omega_k/omega_cav)^2.

use ndarray::Array1;
use num_complex::Complex64 as C64;

use super::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::meanfield::Sign;
use crate::model::ModelParams;

/// Fock cutoff must cover |alpha|^2 + 6|alpha| for the truncated coherent
/// state to carry its weight.
fn required_cutoff(alpha_norm: f64) -> usize {
    (alpha_norm * alpha_norm + 6.0 * alpha_norm).ceil() as usize
}

/// The four deep-coupling vacua in the fixed (++, +-, -+, --) order, each
/// normalized in the truncated basis. Enforces N_k <= (Omega_k/omega_cav)^2 / 2.
pub fn asymptotic_vacua(p: &ModelParams, basis: &BasisSpec) -> Result<[Array1<C64>; 4]> {
    asymptotic_vacua_with_margin(p, basis, 2.0)
}

/// Same construction with a configurable validity margin: requires
/// N_k * margin <= (Omega_k/omega_cav)^2. Labeling anchors tolerate
/// margin 1; quantitative fidelity claims should keep the default 2.
pub fn asymptotic_vacua_with_margin(
    p: &ModelParams,
    basis: &BasisSpec,
    margin: f64,
) -> Result<[Array1<C64>; 4]> {
    p.validate()?;
    let ratio_c = (p.coupling_c / p.omega_cav).powi(2);
    let ratio_i = (p.coupling_i / p.omega_cav).powi(2);
    if p.n_c as f64 * margin > ratio_c || p.n_i as f64 * margin > ratio_i {
        return Err(Error::Precondition(format!(
            "asymptotic vacua need N_k << (Omega_k/omega_cav)^2; \
             have N_C={} vs {:.2}/2, N_I={} vs {:.2}/2",
            p.n_c, ratio_c, p.n_i, ratio_i
        )));
    }

    let amp_c = p.coupling_c / p.omega_cav * (p.n_c as f64).sqrt();
    let amp_i = p.coupling_i / p.omega_cav * (p.n_i as f64).sqrt();
    let alpha_norm = (amp_c * amp_c + amp_i * amp_i).sqrt();
    let required = required_cutoff(alpha_norm);
    if (basis.n_max as usize) < required {
        return Err(Error::CutoffTooSmall {
            n_max: basis.n_max as usize,
            alpha: alpha_norm,
            required,
        });
    }

    let mut out: Vec<Array1<C64>> = Vec::with_capacity(4);
    for (eps_c, eps_i) in Sign::BRANCHES {
        let alpha = C64::new(-eps_c.value() * amp_c, eps_i.value() * amp_i);
        let coherent = coherent_amplitudes(alpha, basis.n_max);
        let spin_c = x_polarized_amplitudes(basis.n_c, eps_c);
        let spin_i = x_polarized_amplitudes(basis.n_i, eps_i);

        let mut v = Array1::<C64>::zeros(basis.dim());
        for mc in 0..=basis.n_c {
            for mi in 0..=basis.n_i {
                let spin = spin_c[mc as usize] * spin_i[mi as usize];
                for n in 0..=basis.n_max {
                    v[basis.index(mc, mi, n)] = C64::new(spin, 0.0) * coherent[n as usize];
                }
            }
        }
        out.push(v);
    }
    Ok(out.try_into().unwrap())
}

/// Coherent-state amplitudes alpha^n / sqrt(n!), renormalized after
/// truncation at n_max.
pub fn coherent_amplitudes(alpha: C64, n_max: u32) -> Vec<C64> {
    let mut amps = Vec::with_capacity(n_max as usize + 1);
    let mut c = C64::new(1.0, 0.0);
    amps.push(c);
    for n in 1..=n_max {
        c *= alpha / C64::new((n as f64).sqrt(), 0.0);
        amps.push(c);
    }
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    amps
}

/// J_z-basis amplitudes of the J_x eigenstate |eps * N/2>_x:
/// 2^(-N/2) sqrt(binom(N, k)) eps^k at level k.
pub fn x_polarized_amplitudes(n_spins: u32, eps: Sign) -> Vec<f64> {
    let n = n_spins as usize;
    let mut binom = vec![0.0f64; n + 1];
    binom[0] = 1.0;
    for k in 1..=n {
        binom[k] = binom[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    let scale = 0.5f64.powi(n_spins as i32 / 2) * if n_spins % 2 == 1 { 0.5f64.sqrt() } else { 1.0 };
    (0..=n)
        .map(|k| scale * binom[k].sqrt() * eps.value().powi(k as i32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactdiag::operators::{apply_jx, Chain};

    #[test]
    fn x_state_is_jx_eigenstate() {
        for n_spins in [1u32, 2, 3, 5] {
            for eps in Sign::ALL {
                let b = BasisSpec::new(n_spins, 1, 0);
                let amps = x_polarized_amplitudes(n_spins, eps);
                let norm: f64 = amps.iter().map(|a| a * a).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                let mut v = Array1::<C64>::zeros(b.dim());
                for (k, &a) in amps.iter().enumerate() {
                    v[b.index(k as u32, 0, 0)] = C64::new(a, 0.0);
                }
                let jv = apply_jx(&b, Chain::C, &v);
                let expect = eps.value() * n_spins as f64 / 2.0;
                for i in 0..b.dim() {
                    assert!(
                        (jv[i] - C64::new(expect, 0.0) * v[i]).norm() < 1e-12,
                        "N={n_spins} eps={eps:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn coherent_mean_photon_number() {
        let alpha = C64::new(1.5, -0.7);
        let amps = coherent_amplitudes(alpha, 60);
        let mean: f64 = amps
            .iter()
            .enumerate()
            .map(|(n, z)| n as f64 * z.norm_sqr())
            .sum();
        assert!((mean - alpha.norm_sqr()).abs() < 1e-8);
    }

    #[test]
    fn precondition_and_cutoff_guards() {
        let shallow = ModelParams::resonant(1.2, 1.2, 2, 2).unwrap();
        assert!(matches!(
            asymptotic_vacua(&shallow, &BasisSpec::new(2, 2, 60)),
            Err(Error::Precondition(_))
        ));

        let deep = ModelParams::resonant(2.5, 2.5, 2, 2).unwrap();
        assert!(matches!(
            asymptotic_vacua(&deep, &BasisSpec::new(2, 2, 10)),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(asymptotic_vacua(&deep, &BasisSpec::new(2, 2, 60)).is_ok());
    }

    #[test]
    fn vacua_normalized_and_distinct() {
        let p = ModelParams::resonant(2.5, 2.5, 2, 2).unwrap();
        let vacua = asymptotic_vacua(&p, &BasisSpec::new(2, 2, 60)).unwrap();
        for v in &vacua {
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        // deep vacua are nearly orthogonal
        for i in 0..4 {
            for j in (i + 1)..4 {
                let ov: C64 = vacua[i]
                    .iter()
                    .zip(vacua[j].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                assert!(ov.norm() < 1e-4, "vacua {i},{j} overlap {}", ov.norm());
            }
        }
    }

    #[test]
    fn single_chain_reduction() {
        // Omega_I -> 0 is outside the vacua's validity domain, but the
        // construction itself must reduce to a C coherent state times the
        // I-chain x-ferromagnets; check the factorized amplitudes directly.
        let b = BasisSpec::new(2, 2, 60);
        let p = ModelParams::resonant(2.5, 2.3, 2, 2).unwrap();
        let vacua = asymptotic_vacua(&p, &b).unwrap();
        let spin_c = x_polarized_amplitudes(2, Sign::Plus);
        let spin_i = x_polarized_amplitudes(2, Sign::Plus);
        let alpha = C64::new(-2.5 * 2.0f64.sqrt(), 2.3 * 2.0f64.sqrt());
        let coh = coherent_amplitudes(alpha, 60);
        let v = &vacua[0];
        for mc in 0..=2u32 {
            for mi in 0..=2u32 {
                for n in 0..=60u32 {
                    let expect =
                        C64::new(spin_c[mc as usize] * spin_i[mi as usize], 0.0) * coh[n as usize];
                    assert!((v[b.index(mc, mi, n)] - expect).norm() < 1e-12);
                }
            }
        }
    }
}
