//! One-sided Jacobi SVD over complex matrices.
//!
//! Works on column pairs: each rotation orthogonalizes two columns of the
//! work matrix, accumulating the right factor; left vectors come from
//! normalizing the resulting columns and completing the basis. No outside
//! linear-algebra dependency is involved, so the rest of the crate can
//! treat this as its one source of spectral truth.

use num_complex::Complex64;

use super::mat::CMat;
use super::FindimError;

/// Full SVD `A = U Σ V^H` with `U` (m×m) and `V` (n×n) unitary and the
/// singular values sorted non-increasing.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v: CMat,
}

const CONV_EPS: f64 = 1e-13;
const MAX_SWEEPS: usize = 60;

pub fn svd(a: &CMat) -> Result<SvdResult, FindimError> {
    if a.entries()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(FindimError::NonFinite);
    }
    if a.rows() < a.cols() {
        // Decompose the adjoint and swap factors: A^H = U1 Σ V1^H gives
        // A = V1 Σ U1^H.
        let r = svd_tall(&a.adjoint())?;
        return Ok(SvdResult {
            u: r.v,
            singular_values: r.singular_values,
            v: r.u,
        });
    }
    svd_tall(a)
}

/// One-sided Jacobi on an m×n matrix with m ≥ n.
fn svd_tall(a: &CMat) -> Result<SvdResult, FindimError> {
    let m = a.rows();
    let n = a.cols();
    let mut w = a.clone();
    let mut v = CMat::identity(n);

    let mut converged = n < 2;
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0_f64;
                let mut aqq = 0.0_f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    app += wp.norm_sqr();
                    aqq += wq.norm_sqr();
                    apq += wp.conj() * wq;
                }
                let off = apq.norm();
                if off <= CONV_EPS * (app * aqq).sqrt() || off == 0.0 {
                    continue;
                }
                rotated = true;
                // Phase-align column q so the 2x2 Gram block is real,
                // then apply the classic symmetric Jacobi rotation.
                let phase = apq / off;
                let tau = (aqq - app) / (2.0 * off);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let phase_conj = phase.conj();
                for i in 0..m {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)] * phase_conj;
                    w[(i, p)] = wp * cs - wq * sn;
                    w[(i, q)] = wp * sn + wq * cs;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * phase_conj;
                    v[(i, p)] = vp * cs - vq * sn;
                    v[(i, q)] = vp * sn + vq * cs;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(FindimError::SvdNoConvergence);
    }

    // Column norms are the singular values; sort descending.
    let mut sigma: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let w_sorted = CMat::from_fn(m, n, |i, j| w[(i, order[j])]);
    let v_sorted = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    sigma = order.iter().map(|&j| sigma[j]).collect();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);

    // Left vectors: normalize nonzero columns, complete the rest to a
    // unitary basis with twice-iterated Gram-Schmidt over standard vectors.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for j in 0..n {
        if sigma[j] > sigma_max * 1e-14 && sigma[j] > 0.0 {
            let col: Vec<Complex64> = (0..m).map(|i| w_sorted[(i, j)] / sigma[j]).collect();
            u_cols.push(col);
        }
    }
    while u_cols.len() < m {
        // take the standard basis vector with the largest residual against
        // the current span; there is always one with residual^2 >= 1 - k/m
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..m {
            let mut cand = vec![Complex64::new(0.0, 0.0); m];
            cand[e] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for existing in &u_cols {
                    let inner: Complex64 = existing
                        .iter()
                        .zip(cand.iter())
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    for i in 0..m {
                        cand[i] -= inner * existing[i];
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().map(|(b, _)| norm > *b).unwrap_or(true) {
                best = Some((norm, cand));
            }
        }
        let (norm, mut cand) = best.expect("nonempty basis");
        if norm == 0.0 {
            return Err(FindimError::SvdNoConvergence);
        }
        for z in cand.iter_mut() {
            *z /= norm;
        }
        u_cols.push(cand);
    }
    let u = CMat::from_fn(m, m, |i, j| u_cols[j][i]);

    Ok(SvdResult {
        u,
        singular_values: sigma,
        v: v_sorted,
    })
}

impl SvdResult {
    pub fn reconstruct(&self) -> CMat {
        let m = self.u.rows();
        let n = self.v.rows();
        let k = self.singular_values.len();
        let mut sig = CMat::zeros(m, n);
        for i in 0..k {
            sig[(i, i)] = Complex64::new(self.singular_values[i], 0.0);
        }
        self.u.mul(&sig).mul(&self.v.adjoint())
    }

    /// `‖A − U Σ V^H‖_F / ‖A‖_F` (absolute when `A = 0`).
    pub fn reconstruction_residual(&self, a: &CMat) -> f64 {
        let num = self.reconstruct().sub(a).frobenius_norm();
        let den = a.frobenius_norm();
        if den > 0.0 {
            num / den
        } else {
            num
        }
    }

    /// Larger of `‖U^H U − I‖_F` and `‖V^H V − I‖_F`.
    pub fn orthonormality_residual(&self) -> f64 {
        let iu = self
            .u
            .adjoint()
            .mul(&self.u)
            .sub(&CMat::identity(self.u.rows()))
            .frobenius_norm();
        let iv = self
            .v
            .adjoint()
            .mul(&self.v)
            .sub(&CMat::identity(self.v.rows()))
            .frobenius_norm();
        iu.max(iv)
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `rel_tol * σ_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cut = self.sigma_max() * rel_tol;
        self.singular_values.iter().filter(|&&s| s > cut).count()
    }

    /// Reciprocal condition number σ_min / σ_max (0 for a zero matrix).
    pub fn rcond(&self) -> f64 {
        let smax = self.sigma_max();
        if smax == 0.0 {
            0.0
        } else {
            self.sigma_min() / smax
        }
    }

    /// `(smallest kept, largest dropped)` singular values around a rank cut.
    pub fn gap_at(&self, rank: usize) -> (Option<f64>, Option<f64>) {
        let kept = if rank >= 1 {
            self.singular_values.get(rank - 1).copied()
        } else {
            None
        };
        let dropped = self.singular_values.get(rank).copied();
        (kept, dropped)
    }
}
