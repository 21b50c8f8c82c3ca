//! Property-test harness for s-functions: the five defining axioms plus
//! the ideal-sum and shift bounds, evaluated over seeded random matrix
//! ensembles.
//!
//! Search-method s-numbers are upper-bound estimates, so inequalities
//! whose large side is a searched value get one-sided widened slack; the
//! reports record the slack in force. Identical seeds produce identical
//! reports.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::findim::mat::CMat;
use crate::findim::norms::{op_norm, NormMethod};
use crate::findim::snumber::{s_number_with_ceiling, SNumberKind};
use crate::findim::svd::svd;
use crate::findim::{FindimError, LpExponent, MatrixOperator, Tolerances};

#[derive(Debug, Error)]
pub enum AxiomsError {
    #[error("factor shapes do not compose with T")]
    ShapeMismatch,
    #[error("decomposition identity residual {residual:.3e} exceeds {tol:.3e}")]
    IdentityResidual { residual: f64, tol: f64 },
    #[error(transparent)]
    Findim(#[from] FindimError),
}

/// An s-number rule under test: deterministic map (operator, index) → value.
pub trait SFunction {
    fn eval(&self, a: &MatrixOperator, index: usize) -> Result<f64, FindimError>;
    fn method(&self) -> NormMethod;
    fn label(&self) -> String;
    /// Exponent pair the ensemble should generate operators at.
    fn exponents(&self) -> (LpExponent, LpExponent) {
        (LpExponent::TWO, LpExponent::TWO)
    }
}

/// The crate's own s-number computation, fixed to one kind and one
/// exponent pair.
pub struct SNumberFunction {
    pub kind: SNumberKind,
    pub p_dom: LpExponent,
    pub p_cod: LpExponent,
    pub ceiling: usize,
}

impl SNumberFunction {
    pub fn hilbert() -> Self {
        SNumberFunction {
            kind: SNumberKind::HilbertSingular,
            p_dom: LpExponent::TWO,
            p_cod: LpExponent::TWO,
            ceiling: 8,
        }
    }

    pub fn new(kind: SNumberKind, p_dom: LpExponent, p_cod: LpExponent, ceiling: usize) -> Self {
        SNumberFunction {
            kind,
            p_dom,
            p_cod,
            ceiling,
        }
    }

}

impl SFunction for SNumberFunction {
    fn eval(&self, a: &MatrixOperator, index: usize) -> Result<f64, FindimError> {
        let min_dim = a.rows().min(a.cols());
        if index > min_dim {
            // rank is at most min_dim, so every s-number past it vanishes
            return Ok(0.0);
        }
        Ok(s_number_with_ceiling(a, self.kind, index, self.ceiling)?.value)
    }

    fn method(&self) -> NormMethod {
        if self.kind == SNumberKind::HilbertSingular
            || (self.p_dom.is_two() && self.p_cod.is_two())
        {
            NormMethod::Exact
        } else {
            NormMethod::Search
        }
    }

    fn label(&self) -> String {
        format!("{} on l^{} -> l^{}", self.kind, self.p_dom, self.p_cod)
    }

    fn exponents(&self) -> (LpExponent, LpExponent) {
        (self.p_dom, self.p_cod)
    }
}

/// A concrete counterexample: the failed inequality with both sides and
/// the inputs (exchange-format matrices) needed to re-evaluate it.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub id: String,
    pub s_function: String,
    pub samples_run: usize,
    pub violations: Vec<Violation>,
    pub seed: u64,
    pub ensemble: String,
    pub slack: f64,
    pub note: Option<String>,
}

impl AxiomReport {
    fn new(id: &str, s: &dyn SFunction, seed: u64, slack: f64) -> Self {
        AxiomReport {
            id: id.to_string(),
            s_function: s.label(),
            samples_run: 0,
            violations: Vec::new(),
            seed,
            ensemble: "complex gaussian entries, optional rank conditioning by truncated SVD"
                .to_string(),
            slack,
            note: None,
        }
    }

    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

// ── ensembles ───────────────────────────────────────────────────────

pub fn gaussian_cmat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        ) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Gaussian matrix conditioned to an exact rank by zeroing trailing
/// singular values.
pub fn gaussian_with_rank(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> CMat {
    let g = gaussian_cmat(rng, n, n);
    let dec = svd(&g).expect("svd of gaussian");
    let mut out = CMat::zeros(n, n);
    for t in 0..rank.min(dec.singular_values.len()) {
        let s = dec.singular_values[t];
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += dec.u[(i, t)] * s * dec.v[(j, t)].conj();
            }
        }
    }
    out
}

fn slack_for(s: &dyn SFunction) -> f64 {
    match s.method() {
        NormMethod::Exact => 1e-7,
        NormMethod::Search => 1e-3,
    }
}

// ── the five axioms ─────────────────────────────────────────────────

pub fn check_axioms(
    s: &dyn SFunction,
    sample_count: usize,
    dim_ceiling: usize,
    seed: u64,
) -> Vec<AxiomReport> {
    let slack = slack_for(s);
    let mut reports = vec![
        AxiomReport::new("axiom1_norm_and_monotone", s, seed, slack),
        AxiomReport::new("axiom2_additive", s, seed, slack),
        AxiomReport::new("axiom3_multiplicative", s, seed, slack),
        AxiomReport::new("axiom4_rank_vanishing", s, seed, slack),
        AxiomReport::new("axiom5_hilbert_identity", s, seed, 0.0),
    ];

    let sf = |a: &MatrixOperator, k: usize| s.eval(a, k).unwrap_or(f64::NAN);

    // axiom 1: ||T|| = s_1(T) >= s_2(T) >= ... >= 0
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
        let report = &mut reports[0];
        for _ in 0..sample_count {
            let n = rng.gen_range(1..=dim_ceiling);
            let a = operator_sample(&mut rng, s, n, n);
            report.samples_run += 1;
            let norm = op_norm(&a).value;
            let s1 = sf(&a, 1);
            if (s1 - norm).abs() > slack {
                report.violations.push(Violation {
                    description: format!("s_1(T) = {s1} differs from ||T|| = {norm}"),
                    lhs: s1,
                    rhs: norm,
                    inputs: vec![a.to_text()],
                });
            }
            let mut prev = s1;
            for k in 2..=n {
                let sk = sf(&a, k);
                if sk > prev + slack || sk < -slack {
                    report.violations.push(Violation {
                        description: format!("s_{k}(T) = {sk} breaks monotonicity after {prev}"),
                        lhs: sk,
                        rhs: prev,
                        inputs: vec![a.to_text()],
                    });
                }
                prev = sk;
            }
        }
    }

    // axiom 2: s_{n+m-1}(S+T) <= s_n(S) + s_m(T)
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
        let report = &mut reports[1];
        for _ in 0..sample_count {
            let dim = rng.gen_range(2..=dim_ceiling);
            let a = operator_sample(&mut rng, s, dim, dim);
            let b = operator_sample(&mut rng, s, dim, dim);
            let n = rng.gen_range(1..=dim);
            let m = rng.gen_range(1..=(dim + 1 - n));
            report.samples_run += 1;
            let sum = MatrixOperator {
                matrix: a.matrix.add(&b.matrix),
                p_dom: a.p_dom,
                p_cod: a.p_cod,
            };
            let lhs = sf(&sum, n + m - 1);
            let rhs = sf(&a, n) + sf(&b, m);
            if lhs > rhs + slack {
                report.violations.push(Violation {
                    description: format!("s_{}(S+T) = {lhs} > s_{n}(S) + s_{m}(T) = {rhs}", n + m - 1),
                    lhs,
                    rhs,
                    inputs: vec![a.to_text(), b.to_text()],
                });
            }
        }
    }

    // axiom 3: s_n(STR) <= ||S|| ||R|| s_n(T)
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
        let report = &mut reports[2];
        for _ in 0..sample_count {
            let dim = rng.gen_range(1..=dim_ceiling);
            let t = operator_sample(&mut rng, s, dim, dim);
            let left = MatrixOperator {
                matrix: gaussian_cmat(&mut rng, dim, dim),
                p_dom: t.p_cod,
                p_cod: t.p_cod,
            };
            let right = MatrixOperator {
                matrix: gaussian_cmat(&mut rng, dim, dim),
                p_dom: t.p_dom,
                p_cod: t.p_dom,
            };
            let n = rng.gen_range(1..=dim);
            report.samples_run += 1;
            let product = MatrixOperator {
                matrix: left.matrix.mul(&t.matrix).mul(&right.matrix),
                p_dom: t.p_dom,
                p_cod: t.p_cod,
            };
            let lhs = sf(&product, n);
            let rhs = op_norm(&left).value * op_norm(&right).value * sf(&t, n);
            if lhs > rhs + slack {
                report.violations.push(Violation {
                    description: format!("s_{n}(STR) = {lhs} > ||S||·||R||·s_{n}(T) = {rhs}"),
                    lhs,
                    rhs,
                    inputs: vec![left.to_text(), t.to_text(), right.to_text()],
                });
            }
        }
    }

    // axiom 4: rank T < n implies s_n(T) = 0
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
        let report = &mut reports[3];
        for _ in 0..sample_count {
            let dim = rng.gen_range(2..=dim_ceiling);
            let rank = rng.gen_range(1..dim);
            let m = gaussian_with_rank(&mut rng, dim, rank);
            let (p_dom, p_cod) = s.exponents();
            let a = MatrixOperator {
                matrix: m,
                p_dom,
                p_cod,
            };
            report.samples_run += 1;
            let v = sf(&a, rank + 1);
            if v.abs() > slack {
                report.violations.push(Violation {
                    description: format!("rank T = {rank} but s_{}(T) = {v}", rank + 1),
                    lhs: v,
                    rhs: 0.0,
                    inputs: vec![a.to_text()],
                });
            }
        }
    }

    // axiom 5: s_n(id on l2_n) = 1, exactly
    {
        let report = &mut reports[4];
        for n in 1..=dim_ceiling {
            let id = MatrixOperator::hilbert(CMat::identity(n));
            report.samples_run += 1;
            let v = sf(&id, n);
            if v != 1.0 {
                report.violations.push(Violation {
                    description: format!("s_{n}(id on l2_{n}) = {v} != 1"),
                    lhs: v,
                    rhs: 1.0,
                    inputs: vec![id.to_text()],
                });
            }
        }
    }

    reports
}

fn operator_sample(
    rng: &mut ChaCha8Rng,
    s: &dyn SFunction,
    rows: usize,
    cols: usize,
) -> MatrixOperator {
    let m = gaussian_cmat(rng, rows, cols);
    let (p_dom, p_cod) = s.exponents();
    MatrixOperator {
        matrix: m,
        p_dom,
        p_cod,
    }
}

// ── ideal-sum bound ─────────────────────────────────────────────────

/// With S = Σ_j R_j T R_j' and M = Σ_j ||R_j||·||R_j'||, check
/// `s_{m(n−1)+j}(S) ≤ M·s_n(T)` for all n and j ∈ {1,…,m} within the
/// matrix size.
///
/// The additivity axiom composed over the m summands bounds index
/// m(n−1)+1, and monotonicity extends the bound through index mn, i.e.
/// j ∈ {1,…,m}; the windows for consecutive n tile every index ≥ 1. The
/// variant starting at j = 0 would need `s_{m(n−1)}(S) ≤ M·s_n(T)`, which
/// already fails for S = T with one identity factor pair, so it is
/// excluded here and the exclusion recorded in the report.
pub fn check_ideal_bound(
    t: &MatrixOperator,
    factors: &[(MatrixOperator, MatrixOperator)],
    s: &dyn SFunction,
    horizon: usize,
    seed: u64,
) -> Result<AxiomReport, AxiomsError> {
    if factors.is_empty() {
        return Err(AxiomsError::ShapeMismatch);
    }
    let dim = t.rows();
    for (l, r) in factors {
        if l.cols() != t.rows()
            || r.rows() != t.cols()
            || !l.matrix.is_square()
            || !r.matrix.is_square()
        {
            return Err(AxiomsError::ShapeMismatch);
        }
    }
    let m_count = factors.len();
    let slack = slack_for(s);
    let mut report = AxiomReport::new("ideal_sum_bound", s, seed, slack);
    report.note = Some(
        "index set j in {1,…,m} (the j = 0 variant admits counterexamples, e.g. a single \
         identity factor pair); the shifted-index ideal criterion uses j in {1,…,m−1}"
            .to_string(),
    );

    let mut sum = CMat::zeros(dim, dim);
    let mut constant = 0.0;
    for (l, r) in factors {
        sum = sum.add(&l.matrix.mul(&t.matrix).mul(&r.matrix));
        constant += op_norm(l).value * op_norm(r).value;
    }
    let s_op = MatrixOperator {
        matrix: sum,
        p_dom: t.p_dom,
        p_cod: t.p_cod,
    };

    let sf = |a: &MatrixOperator, k: usize| s.eval(a, k).unwrap_or(f64::NAN);
    for n in 1..=horizon.min(dim) {
        for j in 1..=m_count {
            let idx = m_count * (n - 1) + j;
            if idx < 1 || idx > dim {
                continue;
            }
            report.samples_run += 1;
            let lhs = sf(&s_op, idx);
            let rhs = constant * sf(t, n);
            if lhs > rhs + slack {
                report.violations.push(Violation {
                    description: format!(
                        "s_{idx}(sum) = {lhs} > M·s_{n}(T) = {rhs} (m = {m_count})"
                    ),
                    lhs,
                    rhs,
                    inputs: vec![t.to_text(), s_op.to_text()],
                });
            }
        }
    }
    Ok(report)
}

// ── shift bound from a decomposition ────────────────────────────────

/// With T = G·S·H + R verified, check `s_{n+m}(T) ≤ ||G||·||H||·s_n(S)`
/// for m = rank R.
pub fn check_shift_bound(
    t: &MatrixOperator,
    s_op: &MatrixOperator,
    g: &CMat,
    h: &CMat,
    r: &CMat,
    s: &dyn SFunction,
    tols: &Tolerances,
    seed: u64,
) -> Result<AxiomReport, AxiomsError> {
    let reconstructed = g.mul(&s_op.matrix).mul(h).add(r);
    let residual = t.matrix.sub(&reconstructed).frobenius_norm();
    if residual > tols.tol_witness {
        return Err(AxiomsError::IdentityResidual {
            residual,
            tol: tols.tol_witness,
        });
    }
    let rank_r = svd(r)?.rank(tols.rank_tol);
    let slack = slack_for(s);
    let mut report = AxiomReport::new("shift_bound", s, seed, slack);

    let g_norm = op_norm(&MatrixOperator {
        matrix: g.clone(),
        p_dom: s_op.p_cod,
        p_cod: t.p_cod,
    })
    .value;
    let h_norm = op_norm(&MatrixOperator {
        matrix: h.clone(),
        p_dom: t.p_dom,
        p_cod: s_op.p_dom,
    })
    .value;

    let sf = |a: &MatrixOperator, k: usize| s.eval(a, k).unwrap_or(f64::NAN);
    let max_n = t.rows().min(t.cols()).saturating_sub(rank_r);
    for n in 1..=max_n.max(1).min(t.rows().min(t.cols())) {
        if n + rank_r > t.rows().min(t.cols()) + 1 {
            break;
        }
        report.samples_run += 1;
        let lhs = sf(t, n + rank_r);
        let rhs = g_norm * h_norm * sf(s_op, n);
        if lhs > rhs + slack {
            report.violations.push(Violation {
                description: format!(
                    "s_{}(T) = {lhs} > ||G||·||H||·s_{n}(S) = {rhs} (rank R = {rank_r})",
                    n + rank_r
                ),
                lhs,
                rhs,
                inputs: vec![t.to_text(), s_op.to_text()],
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_axioms_clean() {
        let sfn = SNumberFunction::hilbert();
        let reports = check_axioms(&sfn, 40, 6, 7);
        for r in &reports {
            assert!(r.clean(), "{}: {:?}", r.id, r.violations.first());
            assert!(r.samples_run > 0);
        }
    }

    #[test]
    fn axiom5_exact() {
        let sfn = SNumberFunction::hilbert();
        let reports = check_axioms(&sfn, 1, 6, 0);
        let a5 = reports.iter().find(|r| r.id.contains("axiom5")).unwrap();
        assert!(a5.clean());
        assert_eq!(a5.samples_run, 6);
    }

    #[test]
    fn determinism_same_seed_same_report() {
        let sfn = SNumberFunction::hilbert();
        let a = check_axioms(&sfn, 10, 5, 42);
        let b = check_axioms(&sfn, 10, 5, 42);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn ideal_bound_identity_factor() {
        // single factor pair (I, I): S = T, M = 1, bound is monotonicity
        let t = MatrixOperator::hilbert(CMat::diag_real(&[1.0, 0.5, 0.25, 0.125]));
        let id = MatrixOperator::hilbert(CMat::identity(4));
        let sfn = SNumberFunction::hilbert();
        let report =
            check_ideal_bound(&t, &[(id.clone(), id.clone())], &sfn, 16, 3).unwrap();
        assert!(report.clean(), "{:?}", report.violations.first());
    }

    #[test]
    fn ideal_bound_random_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = MatrixOperator::hilbert(CMat::diag_real(&[1.0, 0.5, 0.25, 0.125]));
        let sfn = SNumberFunction::hilbert();
        let factors: Vec<_> = (0..2)
            .map(|_| {
                (
                    MatrixOperator::hilbert(gaussian_cmat(&mut rng, 4, 4)),
                    MatrixOperator::hilbert(gaussian_cmat(&mut rng, 4, 4)),
                )
            })
            .collect();
        let report = check_ideal_bound(&t, &factors, &sfn, 16, 11).unwrap();
        assert!(report.clean(), "{:?}", report.violations.first());
    }

    #[test]
    fn ideal_bound_scaling_invariance() {
        // scaling the factors scales both sides together
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = MatrixOperator::hilbert(gaussian_cmat(&mut rng, 4, 4));
        let l = gaussian_cmat(&mut rng, 4, 4);
        let r = gaussian_cmat(&mut rng, 4, 4);
        let sfn = SNumberFunction::hilbert();
        for &c in &[1.0, 10.0] {
            let scaled = (
                MatrixOperator::hilbert(l.scale(Complex64::new(c, 0.0))),
                MatrixOperator::hilbert(r.clone()),
            );
            let report = check_ideal_bound(&t, &[scaled], &sfn, 8, 5).unwrap();
            assert!(report.clean());
        }
    }

    #[test]
    fn shift_bound_zero_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s_mat = gaussian_cmat(&mut rng, 4, 4);
        let g = gaussian_cmat(&mut rng, 4, 4);
        let h = gaussian_cmat(&mut rng, 4, 4);
        let t_mat = g.mul(&s_mat).mul(&h);
        let t = MatrixOperator::hilbert(t_mat);
        let s_op = MatrixOperator::hilbert(s_mat);
        let sfn = SNumberFunction::hilbert();
        let report = check_shift_bound(
            &t,
            &s_op,
            &g,
            &h,
            &CMat::zeros(4, 4),
            &sfn,
            &Tolerances::default(),
            3,
        )
        .unwrap();
        assert!(report.clean(), "{:?}", report.violations.first());
    }

    #[test]
    fn shift_bound_rank_one_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s_mat = gaussian_cmat(&mut rng, 4, 4);
        let g = gaussian_cmat(&mut rng, 4, 4);
        let h = gaussian_cmat(&mut rng, 4, 4);
        let r = gaussian_with_rank(&mut rng, 4, 1);
        let t_mat = g.mul(&s_mat).mul(&h).add(&r);
        let t = MatrixOperator::hilbert(t_mat);
        let s_op = MatrixOperator::hilbert(s_mat);
        let sfn = SNumberFunction::hilbert();
        let report =
            check_shift_bound(&t, &s_op, &g, &h, &r, &sfn, &Tolerances::default(), 9).unwrap();
        assert!(report.clean(), "{:?}", report.violations.first());
    }

    #[test]
    fn shift_bound_rejects_bad_identity() {
        let t = MatrixOperator::hilbert(CMat::identity(3));
        let s_op = MatrixOperator::hilbert(CMat::identity(3));
        let z = CMat::zeros(3, 3);
        let sfn = SNumberFunction::hilbert();
        let err = check_shift_bound(
            &t,
            &s_op,
            &z,
            &z,
            &z,
            &sfn,
            &Tolerances::default(),
            0,
        );
        assert!(matches!(err, Err(AxiomsError::IdentityResidual { .. })));
    }

    #[test]
    fn violations_are_reverifiable() {
        // force a violation with a deliberately broken s-function
        struct Broken;
        impl SFunction for Broken {
            fn eval(&self, a: &MatrixOperator, index: usize) -> Result<f64, FindimError> {
                // too large at index 2: breaks monotonicity
                if index == 2 {
                    Ok(1e6)
                } else {
                    Ok(s_number_with_ceiling(a, SNumberKind::HilbertSingular, index, 8)?.value)
                }
            }
            fn method(&self) -> NormMethod {
                NormMethod::Exact
            }
            fn label(&self) -> String {
                "broken on l^2 -> l^2".into()
            }
        }
        let reports = check_axioms(&Broken, 10, 4, 1);
        let a1 = &reports[0];
        assert!(!a1.clean());
        for v in &a1.violations {
            // stored inputs parse back and reproduce the failed comparison
            let op = MatrixOperator::from_text(&v.inputs[0]).unwrap();
            assert!(op.rows() >= 2);
            assert!(v.lhs > v.rhs);
        }
    }
}
