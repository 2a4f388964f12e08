//! Product basis |m_C, m_I, n> in the maximum-angular-momentum sector of
//! each chain (j_k = N_k/2) times a truncated Fock space.
//!
//! Enumeration order is fixed: n fastest, then m_I, then m_C.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    #[serde(rename = "N_C")]
    pub n_c: u32,
    #[serde(rename = "N_I")]
    pub n_i: u32,
    pub n_max: u32,
}

impl BasisSpec {
    pub fn new(n_c: u32, n_i: u32, n_max: u32) -> Self {
        Self { n_c, n_i, n_max }
    }

    pub fn dim(&self) -> usize {
        (self.n_c as usize + 1) * (self.n_i as usize + 1) * (self.n_max as usize + 1)
    }

    /// Flat index of |m_C, m_I, n> from the zero-based level indices
    /// `mc = m_C + N_C/2`, `mi = m_I + N_I/2`.
    #[inline]
    pub fn index(&self, mc: u32, mi: u32, n: u32) -> usize {
        ((mc as usize * (self.n_i as usize + 1)) + mi as usize) * (self.n_max as usize + 1)
            + n as usize
    }

    /// Inverse of [`index`]: `(mc, mi, n)` level indices.
    #[inline]
    pub fn state(&self, idx: usize) -> (u32, u32, u32) {
        let nph = self.n_max as usize + 1;
        let n = idx % nph;
        let rest = idx / nph;
        let mi = rest % (self.n_i as usize + 1);
        let mc = rest / (self.n_i as usize + 1);
        (mc as u32, mi as u32, n as u32)
    }

    /// J_z eigenvalue for a level index: m = mc - N/2 (half-integer for odd N).
    #[inline]
    pub fn m_value(n_spins: u32, level: u32) -> f64 {
        level as f64 - n_spins as f64 / 2.0
    }

    /// Matrix element <m+1|J_x|m> = (1/2) sqrt(j(j+1) - m(m+1)) in the
    /// j = N/2 sector, indexed by the lower level.
    #[inline]
    pub fn jx_raising(n_spins: u32, level: u32) -> f64 {
        let j = n_spins as f64 / 2.0;
        let m = Self::m_value(n_spins, level);
        0.5 * (j * (j + 1.0) - m * (m + 1.0)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_counting() {
        assert_eq!(BasisSpec::new(2, 2, 10).dim(), 99);
        assert_eq!(BasisSpec::new(1, 3, 0).dim(), 8);
    }

    #[test]
    fn index_roundtrip_and_order() {
        let b = BasisSpec::new(2, 3, 4);
        let mut last = None;
        for mc in 0..=2 {
            for mi in 0..=3 {
                for n in 0..=4 {
                    let idx = b.index(mc, mi, n);
                    assert_eq!(b.state(idx), (mc, mi, n));
                    if let Some(prev) = last {
                        assert_eq!(idx, prev + 1, "n must be fastest");
                    }
                    last = Some(idx);
                }
            }
        }
        assert_eq!(last, Some(b.dim() - 1));
    }

    #[test]
    fn jx_elements_spin_half() {
        // single spin: <+1/2|J_x|-1/2> = 1/2
        assert_eq!(BasisSpec::jx_raising(1, 0), 0.5);
    }
}
