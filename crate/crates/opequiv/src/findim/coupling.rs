//! Verification of matricial coupling and Schur coupling identities for
//! explicit block matrices.

use serde::Serialize;

use super::mat::CMat;
use super::svd::svd;
use super::{FindimError, Tolerances};

/// Matricial coupling check: `T = U11` and `S = (U^{-1})22`.
#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub ok: bool,
    pub residual_t: f64,
    pub residual_s: f64,
    pub rcond_u: f64,
}

pub fn verify_mc(
    u: &CMat,
    split: usize,
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<McReport, FindimError> {
    if !u.is_square() {
        return Err(FindimError::Shape("U must be square".into()));
    }
    let n = u.rows();
    if split == 0 || split >= n {
        return Err(FindimError::Shape(format!(
            "block split {split} must lie strictly inside 1..{n}"
        )));
    }
    let k = split;
    let l = n - split;
    if t.rows() != k || t.cols() != k || s.rows() != l || s.cols() != l {
        return Err(FindimError::Shape(format!(
            "expected T {k}x{k} and S {l}x{l} for split ({k}, {l})"
        )));
    }
    let rcond_u = svd(u)?.rcond();
    let v = u.inverse()?;
    let residual_t = u.submatrix(0, k, 0, k).sub(t).frobenius_norm();
    let residual_s = v.submatrix(k, n, k, n).sub(s).frobenius_norm();
    Ok(McReport {
        ok: residual_t <= tols.tol_witness && residual_s <= tols.tol_witness,
        residual_t,
        residual_s,
        rcond_u,
    })
}

/// Schur coupling check: `T = A − B D^{-1} C` and `S = D − C A^{-1} B`.
///
/// A non-invertible A or D is a definitional failure, reported rather
/// than raised.
#[derive(Clone, Debug, Serialize)]
pub struct ScReport {
    pub ok: bool,
    /// The diagonal blocks failed to be invertible, so the coupling is not
    /// even well defined.
    pub definitional_failure: bool,
    pub residual_t: Option<f64>,
    pub residual_s: Option<f64>,
    pub rcond_a: f64,
    pub rcond_d: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn verify_sc(
    a: &CMat,
    b: &CMat,
    c: &CMat,
    d: &CMat,
    t: &CMat,
    s: &CMat,
    tols: &Tolerances,
) -> Result<ScReport, FindimError> {
    if !a.is_square() || !d.is_square() {
        return Err(FindimError::Shape("A and D must be square".into()));
    }
    let k = a.rows();
    let l = d.rows();
    if b.rows() != k || b.cols() != l || c.rows() != l || c.cols() != k {
        return Err(FindimError::Shape(
            "off-diagonal blocks must be B (k x l) and C (l x k)".into(),
        ));
    }
    if t.rows() != k || t.cols() != k || s.rows() != l || s.cols() != l {
        return Err(FindimError::Shape(
            "T must match A's size and S must match D's size".into(),
        ));
    }
    let rcond_a = svd(a)?.rcond();
    let rcond_d = svd(d)?.rcond();
    if rcond_a < tols.cond_floor || rcond_d < tols.cond_floor {
        return Ok(ScReport {
            ok: false,
            definitional_failure: true,
            residual_t: None,
            residual_s: None,
            rcond_a,
            rcond_d,
        });
    }
    let a_inv = a.inverse()?;
    let d_inv = d.inverse()?;
    let schur_t = a.sub(&b.mul(&d_inv).mul(c));
    let schur_s = d.sub(&c.mul(&a_inv).mul(b));
    let residual_t = schur_t.sub(t).frobenius_norm();
    let residual_s = schur_s.sub(s).frobenius_norm();
    Ok(ScReport {
        ok: residual_t <= tols.tol_witness && residual_s <= tols.tol_witness,
        definitional_failure: false,
        residual_t: Some(residual_t),
        residual_s: Some(residual_s),
        rcond_a,
        rcond_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_coupling() {
        let u = CMat::identity(2);
        let t = CMat::identity(1);
        let s = CMat::identity(1);
        let r = verify_mc(&u, 1, &t, &s, &tols()).unwrap();
        assert!(r.ok);
        assert!(r.residual_t < 1e-15 && r.residual_s < 1e-15);
    }

    #[test]
    fn swap_coupling_zero_blocks() {
        // U = [[0,1],[1,0]] is its own inverse; V22 = 0.
        let u = CMat::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let t = CMat::zeros(1, 1);
        let s = CMat::zeros(1, 1);
        let r = verify_mc(&u, 1, &t, &s, &tols()).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn mismatched_block_detected() {
        let u = CMat::identity(2);
        let t = CMat::diag_real(&[2.0]);
        let s = CMat::identity(1);
        let r = verify_mc(&u, 1, &t, &s, &tols()).unwrap();
        assert!(!r.ok);
        assert!((r.residual_t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_u_rejected() {
        let u = CMat::zeros(2, 2);
        let t = CMat::zeros(1, 1);
        let s = CMat::zeros(1, 1);
        assert!(verify_mc(&u, 1, &t, &s, &tols()).is_err());
    }

    #[test]
    fn schur_decoupled_case() {
        let t = CMat::diag_real(&[2.0]);
        let s = CMat::diag_real(&[3.0]);
        let b = CMat::zeros(1, 1);
        let c = CMat::zeros(1, 1);
        let r = verify_sc(&t, &b, &c, &s, &t, &s, &tols()).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn schur_scalar_example() {
        // A=2, B=C=1, D=1: T = 2 - 1 = 1, S = 1 - 1/2 = 1/2.
        let a = CMat::diag_real(&[2.0]);
        let b = CMat::diag_real(&[1.0]);
        let c = CMat::diag_real(&[1.0]);
        let d = CMat::diag_real(&[1.0]);
        let t = CMat::diag_real(&[1.0]);
        let s = CMat::diag_real(&[0.5]);
        let r = verify_sc(&a, &b, &c, &d, &t, &s, &tols()).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn schur_definitional_failure() {
        let a = CMat::diag_real(&[2.0]);
        let b = CMat::diag_real(&[1.0]);
        let c = CMat::diag_real(&[1.0]);
        let d = CMat::zeros(1, 1);
        let t = CMat::diag_real(&[1.0]);
        let s = CMat::diag_real(&[0.5]);
        let r = verify_sc(&a, &b, &c, &d, &t, &s, &tols()).unwrap();
        assert!(r.definitional_failure);
        assert!(!r.ok);
    }
}
