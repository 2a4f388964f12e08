//! Non-abelian holonomy of the four-fold ground manifold transported
//! around closed loops in the coupling plane.
//!
//! The loop is discretized, the four-dimensional ground frame is computed
//! at every step, and the path-ordered product of polar-unitarized
//! neighbor overlaps accumulates the holonomy. Path ordering is kept in
//! full; the quality of the diagonal-connection approximation is an
//! output (the leakage norm), not an assumption.

use ndarray::{s, Array2};
use ndarray_linalg::{Eig, SVD};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactdiag::vacua::asymptotic_vacua_with_margin;
use crate::exactdiag::{build_hamiltonian, diagonalize, BasisSpec};
use crate::model::{classify_phase, ModelParams, PhaseTag};

/// Default step count for unit-scale loops; safe manifold tracking deep in
/// the doubly superradiant phase.
pub const DEFAULT_N_STEPS: usize = 256;

/// Per-state overlap below this aborts with a tracking-loss error.
pub const TRACKING_MIN_OVERLAP: f64 = 0.7;

const MANIFOLD_DIM: usize = 4;

/// Closed polygonal path in the `(Omega_C, Omega_I)` plane, resampled to
/// `n_steps` points by arc length.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopSpec {
    pub vertices: Vec<(f64, f64)>,
    pub n_steps: usize,
}

impl LoopSpec {
    /// Axis-aligned square traversed counterclockwise from the lower-left
    /// corner (positive enclosed area).
    pub fn square(center: (f64, f64), side: f64, n_steps: usize) -> Self {
        let h = side / 2.0;
        let (cx, cy) = center;
        Self {
            vertices: vec![
                (cx - h, cy - h),
                (cx + h, cy - h),
                (cx + h, cy + h),
                (cx - h, cy + h),
            ],
            n_steps,
        }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices[1..].reverse();
        Self {
            vertices,
            n_steps: self.n_steps,
        }
    }

    /// The discretized path: `n_steps` points, uniformly spaced by arc
    /// length along the closed polygon; the closing point equals point 0
    /// and is not repeated.
    pub fn points(&self) -> Vec<(f64, f64)> {
        if self.vertices.is_empty() || self.n_steps == 0 {
            return Vec::new();
        }
        if self.vertices.len() == 1 {
            return vec![self.vertices[0]; self.n_steps];
        }
        let m = self.vertices.len();
        let seg_len: Vec<f64> = (0..m)
            .map(|i| {
                let (x0, y0) = self.vertices[i];
                let (x1, y1) = self.vertices[(i + 1) % m];
                ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
            })
            .collect();
        let total: f64 = seg_len.iter().sum();
        if total == 0.0 {
            return vec![self.vertices[0]; self.n_steps];
        }
        let mut out = Vec::with_capacity(self.n_steps);
        for k in 0..self.n_steps {
            let mut target = total * k as f64 / self.n_steps as f64;
            let mut seg = 0usize;
            while seg < m - 1 && target > seg_len[seg] {
                target -= seg_len[seg];
                seg += 1;
            }
            let (x0, y0) = self.vertices[seg];
            let (x1, y1) = self.vertices[(seg + 1) % m];
            let t = if seg_len[seg] > 0.0 {
                target / seg_len[seg]
            } else {
                0.0
            };
            out.push((x0 + t * (x1 - x0), y0 + t * (y1 - y0)));
        }
        out
    }

    /// Signed area by the shoelace rule on the discretized path.
    pub fn enclosed_area(&self) -> f64 {
        let pts = self.points();
        if pts.len() < 3 {
            return 0.0;
        }
        let n = pts.len();
        0.5 * (0..n)
            .map(|i| {
                let (x0, y0) = pts[i];
                let (x1, y1) = pts[(i + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum::<f64>()
    }
}

/// Holonomy of one loop, expressed in the (++, +-, -+, --) frame anchored
/// to the deep-coupling vacua at the loop base point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Holonomy {
    /// 4x4 unitary in the labeled frame.
    pub u: Vec<Vec<(f64, f64)>>,
    pub unitarity_defect: f64,
    pub predicted_angle: f64,
    /// Eigenphases of U matched to the four labels.
    pub measured_angles: [f64; 4],
    /// Smallest per-state overlap at each step.
    pub min_overlap_trace: Vec<f64>,
    pub basis_labels: [String; 4],
}

impl Holonomy {
    pub fn matrix(&self) -> Array2<C64> {
        let mut m = Array2::<C64>::zeros((MANIFOLD_DIM, MANIFOLD_DIM));
        for i in 0..MANIFOLD_DIM {
            for j in 0..MANIFOLD_DIM {
                let (re, im) = self.u[i][j];
                m[[i, j]] = C64::new(re, im);
            }
        }
        m
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolonomyReport {
    /// Best-fit angle of the conditional-phase form exp(i phi diag(1,-1,-1,1)).
    pub best_phi: f64,
    /// Largest entry of U - exp(i best_phi diag(1,-1,-1,1)).
    pub deviation: f64,
    /// |best_phi - predicted_angle|.
    pub phi_vs_predicted: f64,
    /// Frobenius norm of the off-diagonal part of U in the labeled basis.
    pub leakage: f64,
}

/// Analytic geometric angle `2 A sqrt(N_C N_I) / omega_cav^2`.
pub fn geometric_angle(loop_spec: &LoopSpec, p0: &ModelParams) -> f64 {
    2.0 * loop_spec.enclosed_area() * ((p0.n_c as f64) * (p0.n_i as f64)).sqrt()
        / (p0.omega_cav * p0.omega_cav)
}

/// Ground frames (dim x 4) at every discretized loop point.
///
/// Every point must be doubly superradiant; per-step diagonalizations are
/// dense and independent.
pub fn loop_frames(
    loop_spec: &LoopSpec,
    p0: &ModelParams,
    basis: &BasisSpec,
) -> Result<Vec<Array2<C64>>> {
    let points = loop_spec.points();
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty loop".into()));
    }
    points
        .iter()
        .map(|&(oc, oi)| {
            let p = p0.with_couplings(oc, oi);
            let phase = classify_phase(&p, 1e-9)?;
            if phase.tag != PhaseTag::DoublySuperradiant {
                return Err(Error::Precondition(format!(
                    "loop leaves the doubly superradiant region at ({oc}, {oi})"
                )));
            }
            let h = build_hamiltonian(&p, basis)?;
            let spec = diagonalize(&h, (MANIFOLD_DIM + 2).min(h.matrix.dim))?;
            Ok(spec.eigenvectors.slice(s![.., 0..MANIFOLD_DIM]).to_owned())
        })
        .collect()
}

/// Accumulate the path-ordered product of polar-unitarized neighbor
/// overlaps over a closed frame sequence (frame 0 is reused as the final
/// frame). Returns the 4x4 unitary in the frame-0 basis and the per-step
/// minimum overlap trace.
pub fn holonomy_from_frames(frames: &[Array2<C64>]) -> Result<(Array2<C64>, Vec<f64>)> {
    let n = frames.len();
    let mut u = Array2::<C64>::eye(MANIFOLD_DIM);
    let mut trace = Vec::with_capacity(n);
    for step in 0..n {
        let here = &frames[step];
        let next = &frames[(step + 1) % n];
        // O_{kl} = <next_k | here_l>
        let overlap = conj_t(next).dot(here);
        let min_overlap = (0..MANIFOLD_DIM)
            .map(|l| {
                (0..MANIFOLD_DIM)
                    .map(|k| overlap[[k, l]].norm())
                    .fold(0.0f64, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        trace.push(min_overlap);
        if min_overlap < TRACKING_MIN_OVERLAP {
            return Err(Error::TrackingLoss {
                step,
                overlap: min_overlap,
            });
        }
        u = polar_unitary(&overlap)?.dot(&u);
    }
    Ok((u, trace))
}

pub fn wilson_loop_holonomy(
    loop_spec: &LoopSpec,
    p0: &ModelParams,
    basis: &BasisSpec,
) -> Result<Holonomy> {
    let frames = loop_frames(loop_spec, p0, basis)?;
    let (u_raw, trace) = holonomy_from_frames(&frames)?;

    // anchor the labeling at the base point via the deep-coupling vacua
    let (oc0, oi0) = loop_spec.points()[0];
    let p_base = p0.with_couplings(oc0, oi0);
    let vacua = asymptotic_vacua_with_margin(&p_base, basis, 1.0)?;
    let mut v = Array2::<C64>::zeros((MANIFOLD_DIM, MANIFOLD_DIM));
    for (k, g) in vacua.iter().enumerate() {
        let col = conj_t(&frames[0]).dot(&g.view().insert_axis(ndarray::Axis(1)).to_owned());
        v.slice_mut(s![.., k]).assign(&col.column(0));
    }
    let r = polar_unitary(&v)?;
    let u = conj_t(&r).dot(&u_raw).dot(&r);

    let defect = unitarity_defect(&u);
    let measured_angles = labeled_eigenphases(&u)?;

    let u_out = (0..MANIFOLD_DIM)
        .map(|i| {
            (0..MANIFOLD_DIM)
                .map(|j| (u[[i, j]].re, u[[i, j]].im))
                .collect()
        })
        .collect();

    Ok(Holonomy {
        u: u_out,
        unitarity_defect: defect,
        predicted_angle: geometric_angle(loop_spec, p0),
        measured_angles,
        min_overlap_trace: trace,
        basis_labels: ["++", "+-", "-+", "--"].map(str::to_string),
    })
}

/// Compare a holonomy with the conditional-phase form
/// `exp(i phi diag(1,-1,-1,1))`.
pub fn compare_holonomy(h: &Holonomy) -> HolonomyReport {
    let u = h.matrix();
    // minimize sum_j |U_jj - e^{i phi s_j}|^2 with s = (1,-1,-1,1):
    // phi = arg((U_00 + U_33) + conj(U_11 + U_22))
    let a = u[[0, 0]] + u[[3, 3]];
    let b = u[[1, 1]] + u[[2, 2]];
    let best_phi = (a + b.conj()).arg();

    let signs = [1.0, -1.0, -1.0, 1.0];
    let mut deviation = 0.0f64;
    let mut leakage = 0.0f64;
    for i in 0..MANIFOLD_DIM {
        for j in 0..MANIFOLD_DIM {
            let target = if i == j {
                C64::from_polar(1.0, best_phi * signs[i])
            } else {
                leakage += u[[i, j]].norm_sqr();
                C64::new(0.0, 0.0)
            };
            deviation = deviation.max((u[[i, j]] - target).norm());
        }
    }
    HolonomyReport {
        best_phi,
        deviation,
        phi_vs_predicted: (best_phi - h.predicted_angle).abs(),
        leakage: leakage.sqrt(),
    }
}

/// Eigenphases of the labeled unitary, assigned to the four labels by the
/// dominant component of each eigenvector (greedy, largest first).
fn labeled_eigenphases(u: &Array2<C64>) -> Result<[f64; 4]> {
    let (vals, vecs) = u
        .eig()
        .map_err(|e| Error::Eigensolver(format!("holonomy eigenphases: {e}")))?;
    let mut weighted: Vec<(f64, usize, usize)> = Vec::new(); // (weight, eig idx, label)
    for k in 0..MANIFOLD_DIM {
        for j in 0..MANIFOLD_DIM {
            weighted.push((vecs[[j, k]].norm(), k, j));
        }
    }
    weighted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut angles = [f64::NAN; 4];
    let mut used_eig = [false; 4];
    let mut used_label = [false; 4];
    for (_, k, j) in weighted {
        if !used_eig[k] && !used_label[j] {
            used_eig[k] = true;
            used_label[j] = true;
            angles[j] = vals[k].arg();
        }
    }
    Ok(angles)
}

fn conj_t(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let g = conj_t(u).dot(u);
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[[i, j]] - C64::new(expect, 0.0)).norm());
        }
    }
    worst
}

/// Nearest unitary by polar decomposition (SVD with singular values
/// replaced by 1).
fn polar_unitary(m: &Array2<C64>) -> Result<Array2<C64>> {
    let (w, _, vt) = m
        .svd(true, true)
        .map_err(|e| Error::Eigensolver(format!("polar decomposition: {e}")))?;
    let w = w.expect("requested U");
    let vt = vt.expect("requested V^T");
    Ok(w.dot(&vt))
}
