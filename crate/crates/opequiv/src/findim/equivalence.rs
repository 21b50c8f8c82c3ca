//! Equivalence after extension for square complex matrices.
//!
//! At finite dimension the decision is nullity equality: `diag(T, I)` and
//! `diag(S, I)` are same-size square matrices, and two-sided
//! multiplication by invertibles preserves rank. A positive decision is
//! always accompanied by an explicit invertible witness pair, built from
//! rank-normal decompositions.

use serde::{Deserialize, Serialize};

use super::mat::{rank_normal_form, CMat};
use super::svd::svd;
use super::{FindimError, Tolerances};

/// Invertible pair (E, F) certifying `diag(T, I_l) = E · diag(S, I_k) · F`
/// (or the one-sided variant at the recorded sizes).
#[derive(Clone, Debug)]
pub struct EaeWitness {
    pub e: CMat,
    pub f: CMat,
    /// (dim of T's space, dim of S's space).
    pub dims: (usize, usize),
    pub residual: f64,
    pub rcond_e: f64,
    pub rcond_f: f64,
}

impl EaeWitness {
    /// Re-check the defining identity from the stored data alone.
    pub fn verify(&self, t: &CMat, s: &CMat) -> f64 {
        let (k, l) = self.dims;
        let lhs = t.extend_identity(l);
        let rhs = self.e.mul(&s.extend_identity(k)).mul(&self.f);
        rhs.sub(&lhs).frobenius_norm()
    }
}

/// How the rank cut looked for one operator: the smallest singular value
/// kept and the largest treated as zero.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RankCut {
    pub nullity: usize,
    pub smallest_kept: Option<f64>,
    pub largest_dropped: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct EaeDecision {
    pub eae: bool,
    pub cut_t: RankCut,
    pub cut_s: RankCut,
    /// Set when a treated-as-nonzero singular value sits within 10x of the
    /// rank tolerance, i.e. the nullity call is fragile.
    pub ill_conditioned: bool,
    pub witness: Option<EaeWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendedSide {
    T,
    S,
}

#[derive(Clone, Debug)]
pub struct EaoeDecision {
    pub eaoe: bool,
    pub side: Option<ExtendedSide>,
    pub extension_dim: Option<usize>,
    pub cut_t: RankCut,
    pub cut_s: RankCut,
    pub ill_conditioned: bool,
    pub witness: Option<EaeWitness>,
}

fn rank_cut(m: &CMat, tols: &Tolerances) -> Result<(usize, RankCut, bool), FindimError> {
    let dec = svd(m)?;
    let rank = dec.rank(tols.rank_tol);
    let (kept, dropped) = dec.gap_at(rank);
    let cut_threshold = dec.sigma_max() * tols.rank_tol;
    let fragile = kept.map(|s| s < 10.0 * cut_threshold).unwrap_or(false);
    Ok((
        rank,
        RankCut {
            nullity: m.rows() - rank,
            smallest_kept: kept,
            largest_dropped: dropped,
        },
        fragile,
    ))
}

fn require_square(m: &CMat, name: &str) -> Result<(), FindimError> {
    if !m.is_square() {
        return Err(FindimError::Shape(format!("{name} must be square")));
    }
    Ok(())
}

/// Build the witness pair from rank-normal decompositions of two
/// same-size matrices with equal rank.
fn witness_from_rank_normal(
    a: &CMat,
    b: &CMat,
    rank: usize,
    dims: (usize, usize),
) -> Result<EaeWitness, FindimError> {
    let rnf_a = rank_normal_form(a, rank)?;
    let rnf_b = rank_normal_form(b, rank)?;
    // a = Pa N Qa, b = Pb N Qb  =>  a = (Pa Pb^{-1}) b (Qb^{-1} Qa)
    let e = rnf_a.left.mul(&rnf_b.left.inverse()?);
    let f = rnf_b.right.inverse()?.mul(&rnf_a.right);
    let residual = e.mul(b).mul(&f).sub(a).frobenius_norm();
    let rcond_e = svd(&e)?.rcond();
    let rcond_f = svd(&f)?.rcond();
    Ok(EaeWitness {
        e,
        f,
        dims,
        residual,
        rcond_e,
        rcond_f,
    })
}

/// Decide equivalence after extension and, when it holds, construct an
/// explicit witness.
pub fn decide_eae(t: &CMat, s: &CMat, tols: &Tolerances) -> Result<EaeDecision, FindimError> {
    require_square(t, "T")?;
    require_square(s, "S")?;
    let (rank_t, cut_t, frag_t) = rank_cut(t, tols)?;
    let (rank_s, cut_s, frag_s) = rank_cut(s, tols)?;
    let nullity_t = t.rows() - rank_t;
    let nullity_s = s.rows() - rank_s;
    let eae = nullity_t == nullity_s;
    let witness = if eae {
        let k = t.rows();
        let l = s.rows();
        let a = t.extend_identity(l);
        let b = s.extend_identity(k);
        Some(witness_from_rank_normal(&a, &b, rank_t + l, (k, l))?)
    } else {
        None
    };
    Ok(EaeDecision {
        eae,
        cut_t,
        cut_s,
        ill_conditioned: frag_t || frag_s,
        witness,
    })
}

/// Decide equivalence after one-sided extension: same nullity, with the
/// identity extension placed on the smaller side.
pub fn decide_eaoe(t: &CMat, s: &CMat, tols: &Tolerances) -> Result<EaoeDecision, FindimError> {
    require_square(t, "T")?;
    require_square(s, "S")?;
    let (rank_t, cut_t, frag_t) = rank_cut(t, tols)?;
    let (rank_s, cut_s, frag_s) = rank_cut(s, tols)?;
    let nullity_t = t.rows() - rank_t;
    let nullity_s = s.rows() - rank_s;
    let eaoe = nullity_t == nullity_s;
    if !eaoe {
        return Ok(EaoeDecision {
            eaoe,
            side: None,
            extension_dim: None,
            cut_t,
            cut_s,
            ill_conditioned: frag_t || frag_s,
            witness: None,
        });
    }
    let k = t.rows();
    let l = s.rows();
    let (side, ext) = if k >= l {
        (ExtendedSide::S, k - l)
    } else {
        (ExtendedSide::T, l - k)
    };
    let (a, b) = match side {
        ExtendedSide::S => (t.clone(), s.extend_identity(ext)),
        ExtendedSide::T => (t.extend_identity(ext), s.clone()),
    };
    // after extension both matrices are max(k, l)-square with equal rank
    let rank = a.rows() - nullity_t;
    let witness = witness_from_rank_normal(&a, &b, rank, (k, l))?;
    Ok(EaoeDecision {
        eaoe,
        side: Some(side),
        extension_dim: Some(ext),
        cut_t,
        cut_s,
        ill_conditioned: frag_t || frag_s,
        witness: Some(witness),
    })
}

/// Verify a one-sided witness against the recorded side/extension.
pub fn verify_eaoe_witness(
    witness: &EaeWitness,
    t: &CMat,
    s: &CMat,
    side: ExtendedSide,
    ext: usize,
) -> f64 {
    let (lhs, rhs_core) = match side {
        ExtendedSide::S => (t.clone(), s.extend_identity(ext)),
        ExtendedSide::T => (t.extend_identity(ext), s.clone()),
    };
    witness.e.mul(&rhs_core).mul(&witness.f).sub(&lhs).frobenius_norm()
}

/// For invertible T and S the witness is immediate:
/// `E = diag(T, I) · diag(S, I)^{-1}`, `F = I`.
pub fn construct_eae_invertible(
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<EaeWitness, FindimError> {
    require_square(t, "T")?;
    require_square(s, "S")?;
    for (m, _name) in [(t, "T"), (s, "S")] {
        let rc = svd(m)?.rcond();
        if rc < tols.cond_floor {
            return Err(FindimError::IllConditioned {
                rcond: rc,
                floor: tols.cond_floor,
            });
        }
    }
    let k = t.rows();
    let l = s.rows();
    let lhs = t.extend_identity(l);
    let rhs = s.extend_identity(k);
    let e = lhs.mul(&rhs.inverse()?);
    let f = CMat::identity(k + l);
    let residual = e.mul(&rhs).mul(&f).sub(&lhs).frobenius_norm();
    let rcond_e = svd(&e)?.rcond();
    Ok(EaeWitness {
        e,
        f,
        dims: (k, l),
        residual,
        rcond_e,
        rcond_f: 1.0,
    })
}
