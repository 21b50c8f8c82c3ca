//! Finite-rank perturbed conjugation: from an equivalence-after-extension
//! witness for (T, S), produce G, H and a finite-rank R with T = GSH + R.
//!
//! Two routes are offered. The structured route consumes the six blocks of
//! a witness in the special form `E = [[G11, T], [G21, G22]]`,
//! `F = [[H11, I], [H21·T, H22]]` and runs the invertible-plus-finite-rank
//! split of `I − H21·T`. The generic route reads the decomposition off the
//! corner blocks of an arbitrary witness.

use num_complex::Complex64;

use super::mat::{rank_normal_form, CMat};
use super::svd::svd;
use super::{FindimError, Tolerances};

/// Triple (G, H, R) with `T = G S H + R` and R of controlled rank.
#[derive(Clone, Debug)]
pub struct RanDecomposition {
    pub g: CMat,
    pub h: CMat,
    pub r: CMat,
    /// Numerical rank of R.
    pub rank_r: usize,
    /// A-priori bound the construction guarantees for rank R.
    pub rank_bound: usize,
    /// `‖T − (G S H + R)‖_F`.
    pub residual: f64,
}

/// The six free blocks of a structured witness.
#[derive(Clone, Debug)]
pub struct StructuredBlocks {
    pub g11: CMat,
    pub g21: CMat,
    pub g22: CMat,
    pub h11: CMat,
    pub h21: CMat,
    pub h22: CMat,
}

impl StructuredBlocks {
    /// `E = [[G11, T], [G21, G22]]`
    pub fn assemble_e(&self, t: &CMat) -> CMat {
        CMat::from_blocks(&self.g11, t, &self.g21, &self.g22)
    }

    /// `F = [[H11, I], [H21·T, H22]]`
    pub fn assemble_f(&self, t: &CMat) -> CMat {
        let l = self.h11.rows();
        CMat::from_blocks(&self.h11, &CMat::identity(l), &self.h21.mul(t), &self.h22)
    }
}

fn check_witness(
    e: &CMat,
    f: &CMat,
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<(f64, f64, f64), FindimError> {
    let k = t.rows();
    let l = s.rows();
    let lhs = t.extend_identity(l);
    let rhs = e.mul(&s.extend_identity(k)).mul(f);
    let residual = rhs.sub(&lhs).frobenius_norm();
    if residual > tols.tol_witness {
        return Err(FindimError::BadWitness {
            residual,
            tol: tols.tol_witness,
        });
    }
    let rc_e = svd(e)?.rcond();
    let rc_f = svd(f)?.rcond();
    for rc in [rc_e, rc_f] {
        if rc < tols.cond_floor {
            return Err(FindimError::IllConditioned {
                rcond: rc,
                floor: tols.cond_floor,
            });
        }
    }
    Ok((residual, rc_e, rc_f))
}

fn expect_shape(m: &CMat, rows: usize, cols: usize, name: &str) -> Result<(), FindimError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(FindimError::Shape(format!(
            "{name} must be {rows}x{cols}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Structured route. Splits `M = I − H21·T` into an invertible `L` plus a
/// finite-rank `K` by lifting every singular value of `M` below
/// `split_floor·‖M‖` (vectors kept), then returns
/// `G = G11`, `H = H11·L^{-1}`, `R = −T·K·L^{-1}`.
pub fn ranlemma_structured(
    blocks: &StructuredBlocks,
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<RanDecomposition, FindimError> {
    let k = t.rows();
    let l = s.rows();
    if !t.is_square() || !s.is_square() {
        return Err(FindimError::Shape("T and S must be square".into()));
    }
    expect_shape(&blocks.g11, k, l, "G11")?;
    expect_shape(&blocks.g21, l, l, "G21")?;
    expect_shape(&blocks.g22, l, k, "G22")?;
    expect_shape(&blocks.h11, l, k, "H11")?;
    expect_shape(&blocks.h21, k, k, "H21")?;
    expect_shape(&blocks.h22, k, l, "H22")?;

    let e = blocks.assemble_e(t);
    let f = blocks.assemble_f(t);
    check_witness(&e, &f, t, s, tols)?;

    let m = CMat::identity(k).sub(&blocks.h21.mul(t));
    let dec = svd(&m)?;
    let sigma_max = dec.sigma_max();
    let floor = if sigma_max > 0.0 {
        tols.split_floor * sigma_max
    } else {
        tols.split_floor
    };
    let mut lifted = 0usize;
    let sigma_l: Vec<f64> = dec
        .singular_values
        .iter()
        .map(|&sv| {
            if sv < floor {
                lifted += 1;
                floor
            } else {
                sv
            }
        })
        .collect();
    // L^{-1} = V Σ'^{-1} U^H; K = U (Σ − Σ') V^H is assembled from the
    // lifted triples alone so rank K equals the lifted count exactly
    let inv_sigma: Vec<f64> = sigma_l.iter().map(|&sv| 1.0 / sv).collect();
    let l_inv = dec.v.mul(&CMat::diag_real(&inv_sigma)).mul(&dec.u.adjoint());
    let mut k_mat = CMat::zeros(k, k);
    for (idx, (&sv, &lifted_sv)) in dec
        .singular_values
        .iter()
        .zip(sigma_l.iter())
        .enumerate()
    {
        if sv == lifted_sv {
            continue;
        }
        let delta = sv - lifted_sv;
        for i in 0..k {
            for j in 0..k {
                k_mat[(i, j)] += dec.u[(i, idx)] * delta * dec.v[(j, idx)].conj();
            }
        }
    }

    let g = blocks.g11.clone();
    let h = blocks.h11.mul(&l_inv);
    let r = t.mul(&k_mat).mul(&l_inv).scale(Complex64::new(-1.0, 0.0));

    let residual = t.sub(&g.mul(s).mul(&h).add(&r)).frobenius_norm();
    let rank_r = svd(&r)?.rank(tols.rank_tol);
    Ok(RanDecomposition {
        g,
        h,
        r,
        rank_r,
        rank_bound: lifted,
        residual,
    })
}

/// Generic route: with `E = [[E11, E12], [E21, E22]]`,
/// `F = [[F11, F12], [F21, F22]]` a valid witness, the (1,1) block of the
/// identity reads `T = E11·S·F11 + E12·F21` directly.
pub fn ranlemma_generic(
    e: &CMat,
    f: &CMat,
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<RanDecomposition, FindimError> {
    let k = t.rows();
    let l = s.rows();
    if !t.is_square() || !s.is_square() {
        return Err(FindimError::Shape("T and S must be square".into()));
    }
    expect_shape(e, k + l, k + l, "E")?;
    expect_shape(f, k + l, k + l, "F")?;
    check_witness(e, f, t, s, tols)?;

    let g = e.submatrix(0, k, 0, l);
    let e12 = e.submatrix(0, k, l, l + k);
    let h = f.submatrix(0, l, 0, k);
    let f21 = f.submatrix(l, l + k, 0, k);
    let r = e12.mul(&f21);
    let residual = t.sub(&g.mul(s).mul(&h).add(&r)).frobenius_norm();
    let rank_r = svd(&r)?.rank(tols.rank_tol);
    Ok(RanDecomposition {
        g,
        h,
        r,
        rank_r,
        // R lives on T's space, so its side length is the only a-priori bound
        rank_bound: k,
        residual,
    })
}

/// Pseudoinverse through the SVD (singular values below `rel_tol·σ_max`
/// dropped).
fn pseudo_inverse(a: &CMat, rel_tol: f64) -> Result<CMat, FindimError> {
    let dec = svd(a)?;
    let cut = dec.sigma_max() * rel_tol;
    let m = a.rows();
    let n = a.cols();
    let mut out = CMat::zeros(n, m);
    for t in 0..dec.singular_values.len() {
        let sv = dec.singular_values[t];
        if sv <= cut || sv == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..m {
                out[(i, j)] += dec.v[(i, t)] * (1.0 / sv) * dec.u[(j, t)].conj();
            }
        }
    }
    Ok(out)
}

/// Build structured blocks for a same-size pair with equal nullity and a
/// caller-chosen H21.
///
/// Rank-normal forms give invertible W1, W2 with `T = W1 S W2`; setting
/// `M = I − H21·T` the blocks
/// `G11 = W1`, `H11 = W2 M`, `H22 = −W2^{-1}`, `G22 = −W2 M`,
/// `G21 = (I − W2 M W2^{-1}) S^+`
/// satisfy the block identity exactly.
pub fn structured_from_pair(
    t: &CMat,
    s: &CMat,
    h21: &CMat,
    tols: &Tolerances,
) -> Result<StructuredBlocks, FindimError> {
    if !t.is_square() || !s.is_square() || t.rows() != s.rows() {
        return Err(FindimError::Shape(
            "structured construction requires same-size square T and S".into(),
        ));
    }
    let n = t.rows();
    expect_shape(h21, n, n, "H21")?;
    let rank_t = svd(t)?.rank(tols.rank_tol);
    let rank_s = svd(s)?.rank(tols.rank_tol);
    if rank_t != rank_s {
        return Err(FindimError::Shape(format!(
            "T and S must have equal rank (got {rank_t} vs {rank_s})"
        )));
    }
    let rnf_t = rank_normal_form(t, rank_t)?;
    let rnf_s = rank_normal_form(s, rank_s)?;
    let w1 = rnf_t.left.mul(&rnf_s.left.inverse()?);
    let w2 = rnf_s.right.inverse()?.mul(&rnf_t.right);
    let w2_inv = w2.inverse()?;

    let m = CMat::identity(n).sub(&h21.mul(t));
    let w2m = w2.mul(&m);
    let s_pinv = pseudo_inverse(s, tols.rank_tol)?;
    let g21 = CMat::identity(n).sub(&w2m.mul(&w2_inv)).mul(&s_pinv);

    Ok(StructuredBlocks {
        g11: w1,
        g21,
        g22: w2m.scale(Complex64::new(-1.0, 0.0)),
        h11: w2m,
        h21: h21.clone(),
        h22: w2_inv.scale(Complex64::new(-1.0, 0.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn invertible_pair_gives_exact_factorization() {
        // H21 = 0 means M = I, no lifting, R = 0 and T = GSH exactly.
        let t = CMat::diag_real(&[2.0, 1.0]);
        let s = CMat::diag_real(&[3.0, 5.0]);
        let blocks = structured_from_pair(&t, &s, &CMat::zeros(2, 2), &tols()).unwrap();
        let d = ranlemma_structured(&blocks, &t, &s, &tols()).unwrap();
        assert!(d.residual < 1e-12, "residual {}", d.residual);
        assert_eq!(d.rank_bound, 0);
        assert_eq!(d.rank_r, 0);
        assert!(d.r.frobenius_norm() < 1e-12);
    }

    #[test]
    fn rank_deficient_pair_with_random_h21() {
        let t = CMat::diag_real(&[1.0, 0.0]);
        let s = CMat::diag_real(&[5.0, 0.0]);
        let h21 = CMat::from_real(2, 2, &[0.3, -0.1, 0.2, 0.4]).unwrap();
        let blocks = structured_from_pair(&t, &s, &h21, &tols()).unwrap();
        let d = ranlemma_structured(&blocks, &t, &s, &tols()).unwrap();
        assert!(d.residual < 1e-8, "residual {}", d.residual);
        // rank_R never exceeds the number of lifted singular values
        assert!(d.rank_r <= d.rank_bound + 0, "{} > {}", d.rank_r, d.rank_bound);
    }

    #[test]
    fn zero_pair_has_finite_rank_r() {
        let t = CMat::zeros(2, 2);
        let s = CMat::zeros(2, 2);
        let h21 = CMat::from_real(2, 2, &[0.7, 0.0, 0.1, -0.2]).unwrap();
        let blocks = structured_from_pair(&t, &s, &h21, &tols()).unwrap();
        let d = ranlemma_structured(&blocks, &t, &s, &tols()).unwrap();
        assert!(d.residual < 1e-12);
        assert!(d.rank_r <= 2);
        // symmetric roles
        let blocks2 = structured_from_pair(&s, &t, &h21, &tols()).unwrap();
        let d2 = ranlemma_structured(&blocks2, &s, &t, &tols()).unwrap();
        assert!(d2.residual < 1e-12);
        assert!(d2.rank_r <= 2);
    }

    #[test]
    fn generic_route_from_invertible_witness() {
        let t = CMat::diag_real(&[2.0, 1.0]);
        let s = CMat::diag_real(&[3.0, 5.0]);
        let w = super::super::equivalence::construct_eae_invertible(&t, &s, &tols()).unwrap();
        let d = ranlemma_generic(&w.e, &w.f, &t, &s, &tols()).unwrap();
        // E12 = 0 for this construction, so R = 0 exactly
        assert!(d.r.frobenius_norm() == 0.0);
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn generic_route_from_decision_witness() {
        let t = CMat::diag_real(&[1.0, 0.0]);
        let s = CMat::diag_real(&[5.0, 0.0]);
        let dec = super::super::equivalence::decide_eae(&t, &s, &tols()).unwrap();
        let w = dec.witness.unwrap();
        let d = ranlemma_generic(&w.e, &w.f, &t, &s, &tols()).unwrap();
        assert!(d.residual < 1e-8, "residual {}", d.residual);
        assert!(d.rank_r <= d.rank_bound);
    }

    #[test]
    fn generic_route_rejects_invalid_witness() {
        let t = CMat::diag_real(&[1.0, 0.0]);
        let s = CMat::diag_real(&[5.0, 0.0]);
        let e = CMat::identity(4);
        let f = CMat::identity(4);
        assert!(matches!(
            ranlemma_generic(&e, &f, &t, &s, &tols()),
            Err(FindimError::BadWitness { .. })
        ));
    }

    #[test]
    fn structured_rejects_shape_mismatch() {
        let t = CMat::diag_real(&[1.0, 0.0]);
        let s = CMat::diag_real(&[5.0, 0.0]);
        let h21 = CMat::zeros(2, 2);
        let mut blocks = structured_from_pair(&t, &s, &h21, &tols()).unwrap();
        blocks.g11 = CMat::zeros(3, 3);
        assert!(matches!(
            ranlemma_structured(&blocks, &t, &s, &tols()),
            Err(FindimError::Shape(_))
        ));
    }
}
