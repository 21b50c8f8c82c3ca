//! Operator norms between finite ℓ^p spaces.
//!
//! Hilbert → Hilbert is exact through the SVD, ℓ^1 domains and ℓ^∞
//! codomains have closed forms, and everything else is multi-start
//! projected gradient ascent over the domain sphere plus a deterministic
//! axis/sign grid. Searched values are lower-bound certified by the
//! returned witness vector.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::mat::CMat;
use super::svd::svd;
use super::{FindimError, LpExponent, MatrixOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMethod {
    /// Closed form or SVD; the value is the norm.
    Exact,
    /// Multi-start ascent; the value is a certified lower bound and the
    /// best estimate available.
    Search,
}

#[derive(Clone, Debug)]
pub struct OpNormResult {
    pub value: f64,
    pub witness: Vec<Complex64>,
    pub method: NormMethod,
}

/// ℓ^p norm of a complex vector.
pub fn lp_norm(x: &[Complex64], p: LpExponent) -> f64 {
    match p {
        LpExponent::Infinity => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
        LpExponent::Finite(p) => {
            if p == 1.0 {
                x.iter().map(|z| z.norm()).sum()
            } else if p == 2.0 {
                x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
            } else {
                x.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }
}

fn normalize(x: &mut [Complex64], p: LpExponent) -> bool {
    let n = lp_norm(x, p);
    if n == 0.0 || !n.is_finite() {
        return false;
    }
    for z in x.iter_mut() {
        *z /= n;
    }
    true
}

/// Norm of the identity on ℂ^n viewed ℓ^p → ℓ^q: `n^{max(0, 1/q − 1/p)}`.
///
/// For n ≤ 6 the closed form is cross-checked against the search path and
/// an error is raised if they disagree beyond 1e-6.
pub fn lp_identity_norm(n: usize, p: LpExponent, q: LpExponent) -> Result<f64, FindimError> {
    if n == 0 {
        return Err(FindimError::Shape("identity on dimension 0".into()));
    }
    let exponent = (q.reciprocal() - p.reciprocal()).max(0.0);
    let value = (n as f64).powf(exponent);
    if n <= 6 {
        let op = MatrixOperator::new(CMat::identity(n), p, q)?;
        let searched = op_norm(&op).value;
        if (searched - value).abs() > 1e-6 {
            return Err(FindimError::CrossCheck(format!(
                "identity norm closed form {value} vs searched {searched} (n={n}, p={p}, q={q})"
            )));
        }
    }
    Ok(value)
}

/// Operator norm of `A: ℓ^{p_dom} → ℓ^{p_cod}` with an attaining (or best
/// found) unit vector. The witness always reproduces the returned value.
pub fn op_norm(a: &MatrixOperator) -> OpNormResult {
    op_norm_with_budget(a, &SearchBudget::default())
}

/// Knobs for the ascent search; the inner s-number loops shrink these.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub random_starts: usize,
    pub max_iters: usize,
    pub sign_grid_max_dim: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            random_starts: 32,
            max_iters: 400,
            sign_grid_max_dim: 10,
            seed: 0x5eed_0a11,
        }
    }
}

impl SearchBudget {
    pub fn lite() -> Self {
        SearchBudget {
            random_starts: 8,
            max_iters: 120,
            sign_grid_max_dim: 6,
            seed: 0x5eed_0a11,
        }
    }
}

pub fn op_norm_with_budget(a: &MatrixOperator, budget: &SearchBudget) -> OpNormResult {
    let m = a.rows();
    let n = a.cols();

    // Hilbert case: top singular value and right singular vector.
    if a.is_hilbert() {
        let dec = svd(&a.matrix).expect("svd of finite matrix");
        let value = dec.sigma_max();
        let witness = dec.v.column(0);
        return OpNormResult {
            value,
            witness,
            method: NormMethod::Exact,
        };
    }

    // ℓ^1 domain: the unit ball's extreme points are phase multiples of
    // basis vectors, so the norm is the best column.
    if a.p_dom == LpExponent::Finite(1.0) {
        let mut best = (0usize, -1.0_f64);
        for j in 0..n {
            let v = lp_norm(&a.matrix.column(j), a.p_cod);
            if v > best.1 {
                best = (j, v);
            }
        }
        let mut witness = vec![Complex64::new(0.0, 0.0); n];
        witness[best.0] = Complex64::new(1.0, 0.0);
        return OpNormResult {
            value: best.1,
            witness,
            method: NormMethod::Exact,
        };
    }

    // ℓ^∞ codomain: the norm is the largest dual norm of a row, attained
    // by that row's duality vector.
    if a.p_cod == LpExponent::Infinity {
        let dual = a.p_dom.conjugate();
        let mut best = (0usize, -1.0_f64);
        for i in 0..m {
            let v = lp_norm(&a.matrix.row(i), dual);
            if v > best.1 {
                best = (i, v);
            }
        }
        let row = a.matrix.row(best.0);
        let witness = dual_attainer(&row, a.p_dom);
        let value = row
            .iter()
            .zip(&witness)
            .map(|(r, w)| r * w)
            .sum::<Complex64>()
            .norm();
        return OpNormResult {
            value,
            witness,
            method: NormMethod::Exact,
        };
    }

    // General case: multi-start projected gradient ascent.
    let mut best_val = -1.0_f64;
    let mut best_x = vec![Complex64::new(0.0, 0.0); n];
    let mut consider = |x: &mut Vec<Complex64>, val_cache: Option<f64>| {
        let val = match val_cache {
            Some(v) => v,
            None => lp_norm(&a.matrix.matvec(x), a.p_cod),
        };
        if val > best_val {
            best_val = val;
            best_x = x.clone();
        }
    };

    for x0 in start_points(a, budget) {
        let mut x = x0;
        if !normalize(&mut x, a.p_dom) {
            continue;
        }
        let val = ascend(a, &mut x, budget.max_iters);
        consider(&mut x, Some(val));
    }

    // Recompute from the best witness so the pair is self-consistent.
    let mut witness = best_x;
    normalize(&mut witness, a.p_dom);
    let value = lp_norm(&a.matrix.matvec(&witness), a.p_cod);
    OpNormResult {
        value,
        witness,
        method: NormMethod::Search,
    }
}

/// Unit vector x (in ℓ^p) maximizing |⟨a, x⟩| for a given row `a`, i.e. a
/// vector attaining the dual norm.
fn dual_attainer(row: &[Complex64], p_dom: LpExponent) -> Vec<Complex64> {
    let n = row.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    match p_dom {
        LpExponent::Infinity => {
            // dual is ℓ^1: align all phases
            for (j, &r) in row.iter().enumerate() {
                x[j] = if r.norm() > 0.0 {
                    r.conj() / r.norm()
                } else {
                    Complex64::new(1.0, 0.0)
                };
            }
        }
        LpExponent::Finite(p) if p == 1.0 => {
            // dual is ℓ^∞: best single coordinate
            let j = row
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .map(|(j, _)| j)
                .unwrap_or(0);
            x[j] = if row[j].norm() > 0.0 {
                row[j].conj() / row[j].norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
        }
        LpExponent::Finite(p) => {
            let pc = p / (p - 1.0); // dual exponent
            for (j, &r) in row.iter().enumerate() {
                let mag = r.norm();
                if mag > 0.0 {
                    x[j] = (r.conj() / mag) * mag.powf(pc - 1.0);
                }
            }
            if !normalize(&mut x, p_dom) {
                x[0] = Complex64::new(1.0, 0.0);
            }
        }
    }
    x
}

fn start_points(a: &MatrixOperator, budget: &SearchBudget) -> Vec<Vec<Complex64>> {
    let n = a.cols();
    let mut starts = Vec::new();
    // axis vectors
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    // uniform vector
    starts.push(vec![Complex64::new(1.0, 0.0); n]);
    // all real sign patterns (first coordinate fixed +1)
    if n >= 2 && n <= budget.sign_grid_max_dim {
        for bits in 0..(1u32 << (n - 1)) {
            let mut v = vec![Complex64::new(1.0, 0.0); n];
            for (idx, item) in v.iter_mut().enumerate().skip(1) {
                if bits >> (idx - 1) & 1 == 1 {
                    *item = Complex64::new(-1.0, 0.0);
                }
            }
            starts.push(v);
        }
    }
    // seeded random complex starts; per-start seed keeps the sweep
    // deterministic under any evaluation order
    for k in 0..budget.random_starts {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (k as u64).wrapping_mul(0x9e37));
        let v: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        starts.push(v);
    }
    starts
}

/// Projected gradient ascent of ‖Ax‖_{p_cod} over the unit ℓ^{p_dom}
/// sphere, in place. Returns the final objective value.
fn ascend(a: &MatrixOperator, x: &mut Vec<Complex64>, max_iters: usize) -> f64 {
    let mut value = lp_norm(&a.matrix.matvec(x), a.p_cod);
    let mut step = 0.5;
    let mut stall = 0;
    for _ in 0..max_iters {
        let y = a.matrix.matvec(x);
        let g = gradient(a, &y, value);
        let gnorm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gnorm == 0.0 {
            break;
        }
        let mut improved = false;
        let mut local = step;
        for _ in 0..25 {
            let mut cand: Vec<Complex64> =
                x.iter().zip(&g).map(|(&xi, &gi)| xi + gi * local).collect();
            if !normalize(&mut cand, a.p_dom) {
                local *= 0.5;
                continue;
            }
            let v = lp_norm(&a.matrix.matvec(&cand), a.p_cod);
            if v > value {
                *x = cand;
                value = v;
                step = local * 1.3;
                improved = true;
                break;
            }
            local *= 0.5;
        }
        if !improved {
            stall += 1;
            if stall >= 2 {
                break;
            }
        } else {
            stall = 0;
        }
    }
    value
}

/// Ascent direction of x ↦ ‖Ax‖_q at y = Ax (real inner product Re⟨·,·⟩).
fn gradient(a: &MatrixOperator, y: &[Complex64], value: f64) -> Vec<Complex64> {
    let m = y.len();
    let mut u = vec![Complex64::new(0.0, 0.0); m];
    match a.p_cod {
        LpExponent::Infinity => {
            let mut imax = 0;
            let mut best = -1.0;
            for (i, z) in y.iter().enumerate() {
                if z.norm() > best {
                    best = z.norm();
                    imax = i;
                }
            }
            if best > 0.0 {
                u[imax] = y[imax] / best;
            }
        }
        LpExponent::Finite(q) => {
            if value == 0.0 {
                return vec![Complex64::new(0.0, 0.0); a.cols()];
            }
            let scale = value.powf(1.0 - q);
            for (i, z) in y.iter().enumerate() {
                let mag = z.norm();
                if mag > 0.0 {
                    u[i] = z * mag.powf(q - 2.0) * scale;
                }
            }
        }
    }
    // gradient = A^H u
    let mut g = vec![Complex64::new(0.0, 0.0); a.cols()];
    for j in 0..a.cols() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..m {
            acc += a.matrix[(i, j)].conj() * u[i];
        }
        g[j] = acc;
    }
    g
}
