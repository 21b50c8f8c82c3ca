//! s-numbers of finite-dimensional operators: Hilbert singular values
//! exactly, and searched approximation / Kolmogorov / Gelfand numbers for
//! general ℓ^p exponents at small dimensions.
//!
//! Search-method values are upper-bound estimates of the defining infima;
//! each result carries a certified lower bound obtained from the Hilbert
//! singular value divided by the identity-embedding constants between
//! ℓ^p_n and ℓ²_n.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::mat::CMat;
use super::norms::{lp_norm, op_norm_with_budget, NormMethod, SearchBudget};
use super::svd::svd;
use super::{FindimError, LpExponent, MatrixOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SNumberKind {
    /// Singular values of the underlying matrix (the ℓ² s-numbers).
    HilbertSingular,
    /// a_k: distance to operators of rank below k.
    Approximation,
    /// d_k: worst-case distance of the image of the unit ball to a
    /// subspace of dimension below k.
    Kolmogorov,
    /// c_k: norm of the restriction to a subspace of codimension below k.
    Gelfand,
}

impl SNumberKind {
    pub fn parse(s: &str) -> Result<Self, FindimError> {
        match s.to_ascii_lowercase().as_str() {
            "hilbert" | "singular" | "hilbert-singular" => Ok(SNumberKind::HilbertSingular),
            "approximation" | "approx" => Ok(SNumberKind::Approximation),
            "kolmogorov" => Ok(SNumberKind::Kolmogorov),
            "gelfand" => Ok(SNumberKind::Gelfand),
            other => Err(FindimError::Parse(format!("unknown s-number kind `{other}`"))),
        }
    }
}

impl std::fmt::Display for SNumberKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SNumberKind::HilbertSingular => "hilbert",
            SNumberKind::Approximation => "approximation",
            SNumberKind::Kolmogorov => "kolmogorov",
            SNumberKind::Gelfand => "gelfand",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SNumberResult {
    pub kind: SNumberKind,
    pub index: usize,
    pub value: f64,
    pub method: NormMethod,
    pub certified_lower_bound: f64,
}

pub const DEFAULT_SEARCH_CEILING: usize = 6;

pub fn s_number(
    a: &MatrixOperator,
    kind: SNumberKind,
    k: usize,
) -> Result<SNumberResult, FindimError> {
    s_number_with_ceiling(a, kind, k, DEFAULT_SEARCH_CEILING)
}

pub fn s_number_with_ceiling(
    a: &MatrixOperator,
    kind: SNumberKind,
    k: usize,
    ceiling: usize,
) -> Result<SNumberResult, FindimError> {
    let min_dim = a.rows().min(a.cols());
    if k == 0 || k > min_dim + 1 {
        return Err(FindimError::IndexOutOfRange {
            index: k,
            max: min_dim + 1,
        });
    }

    let dec = svd(&a.matrix)?;
    let sigma = |idx: usize| -> f64 {
        dec.singular_values.get(idx - 1).copied().unwrap_or(0.0)
    };

    // Hilbert s-numbers all coincide with the singular values.
    if kind == SNumberKind::HilbertSingular || a.is_hilbert() {
        let value = sigma(k);
        return Ok(SNumberResult {
            kind,
            index: k,
            value,
            method: NormMethod::Exact,
            certified_lower_bound: value,
        });
    }

    let dim = a.rows().max(a.cols());
    if dim > ceiling {
        return Err(FindimError::AboveSearchCeiling { dim, ceiling });
    }

    // Rank below k: the defining infimum is attained at zero exactly.
    let rank = dec.rank(1e-9);
    if k > rank {
        return Ok(SNumberResult {
            kind,
            index: k,
            value: 0.0,
            method: NormMethod::Exact,
            certified_lower_bound: 0.0,
        });
    }

    let budget = SearchBudget::lite();
    let value = match kind {
        SNumberKind::Approximation => approximation_number(a, k, &dec.u, &dec.v, &budget),
        SNumberKind::Kolmogorov => kolmogorov_number(a, k, &dec.u, &budget),
        SNumberKind::Gelfand => gelfand_number(a, k, &dec.v, &budget),
        SNumberKind::HilbertSingular => unreachable!(),
    };

    // σ_k ≤ ‖id_{q→2}‖·‖id_{2→p}‖·s_k(A_{p→q}), so dividing by the two
    // embedding norms certifies a lower bound.
    let c_cod = (a.rows() as f64).powf((0.5 - a.p_cod.reciprocal()).max(0.0));
    let c_dom = (a.cols() as f64).powf((a.p_dom.reciprocal() - 0.5).max(0.0));
    let certified_lower_bound = sigma(k) / (c_cod * c_dom);

    Ok(SNumberResult {
        kind,
        index: k,
        value,
        method: NormMethod::Search,
        certified_lower_bound,
    })
}

fn norm_of(a: &MatrixOperator, budget: &SearchBudget) -> f64 {
    op_norm_with_budget(a, budget).value
}

fn seeded_rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_31a7 ^ tag)
}

fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize, scale: f64) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        ) * scale
    })
}

/// Truncate a matrix to rank ≤ r via SVD.
fn truncate_rank(f: &CMat, r: usize) -> CMat {
    let dec = match svd(f) {
        Ok(d) => d,
        Err(_) => return f.clone(),
    };
    let m = f.rows();
    let n = f.cols();
    let mut out = CMat::zeros(m, n);
    for t in 0..r.min(dec.singular_values.len()) {
        let s = dec.singular_values[t];
        if s == 0.0 {
            continue;
        }
        for i in 0..m {
            for j in 0..n {
                out[(i, j)] += dec.u[(i, t)] * s * dec.v[(j, t)].conj();
            }
        }
    }
    out
}

/// Duality weight u at y for the q-norm: d‖y‖_q = Re⟨u, dy⟩.
fn duality_weight(y: &[Complex64], q: LpExponent) -> Vec<Complex64> {
    let mut u = vec![Complex64::new(0.0, 0.0); y.len()];
    match q {
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
            let val = lp_norm(y, LpExponent::Finite(q));
            if val == 0.0 {
                return u;
            }
            let scale = val.powf(1.0 - q);
            for (i, z) in y.iter().enumerate() {
                let mag = z.norm();
                if mag > 0.0 {
                    u[i] = z * mag.powf(q - 2.0) * scale;
                }
            }
        }
    }
    u
}

// ── approximation numbers ───────────────────────────────────────────

fn approximation_number(
    a: &MatrixOperator,
    k: usize,
    u_basis: &CMat,
    v_basis: &CMat,
    budget: &SearchBudget,
) -> f64 {
    let r = k - 1;
    if r == 0 {
        return norm_of(a, budget);
    }
    let m = a.rows();
    let n = a.cols();
    let dec = svd(&a.matrix).expect("svd");

    // start 0: the truncated SVD (optimal at p = q = 2)
    let mut truncated = CMat::zeros(m, n);
    for t in 0..r.min(dec.singular_values.len()) {
        let s = dec.singular_values[t];
        for i in 0..m {
            for j in 0..n {
                truncated[(i, j)] += u_basis[(i, t)] * s * v_basis[(j, t)].conj();
            }
        }
    }
    let mut rng = seeded_rng(0xa11c);
    let scale = a.matrix.max_abs().max(1e-12) * 0.1;
    let mut starts = vec![truncated.clone()];
    for _ in 0..2 {
        starts.push(truncated.add(&truncate_rank(&random_mat(&mut rng, m, n, scale), r)));
    }

    let mut best_val = f64::INFINITY;
    for f0 in starts {
        let mut f = f0;
        let mut local_best = eval_residual_norm(a, &f, budget);
        let mut local_best_f = f.clone();
        for step in 0..120 {
            let resid = MatrixOperator::new(a.matrix.sub(&f), a.p_dom, a.p_cod).unwrap();
            let r_norm = op_norm_with_budget(&resid, &SearchBudget::lite());
            let y = resid.matrix.matvec(&r_norm.witness);
            let u = duality_weight(&y, a.p_cod);
            // subgradient step toward reducing ‖A − F‖
            let eta = 0.3 * r_norm.value / (1.0 + step as f64 / 12.0);
            let mut f_next = f.clone();
            for i in 0..m {
                for j in 0..n {
                    f_next[(i, j)] += u[i] * r_norm.witness[j].conj() * eta;
                }
            }
            f = truncate_rank(&f_next, r);
            let v = eval_residual_norm(a, &f, budget);
            if v < local_best {
                local_best = v;
                local_best_f = f.clone();
            }
        }
        // final evaluation at full budget keeps the estimate honest
        let final_val = eval_residual_norm_full(a, &local_best_f);
        if final_val < best_val {
            best_val = final_val;
        }
    }
    best_val
}

fn eval_residual_norm(a: &MatrixOperator, f: &CMat, budget: &SearchBudget) -> f64 {
    let resid = MatrixOperator::new(a.matrix.sub(f), a.p_dom, a.p_cod).unwrap();
    norm_of(&resid, budget)
}

fn eval_residual_norm_full(a: &MatrixOperator, f: &CMat) -> f64 {
    let resid = MatrixOperator::new(a.matrix.sub(f), a.p_dom, a.p_cod).unwrap();
    norm_of(&resid, &SearchBudget::default())
}

// ── Kolmogorov numbers ──────────────────────────────────────────────

/// min_c ‖y − W c‖_q by convex descent (least-squares warm start).
fn dist_to_subspace(y: &[Complex64], w: &CMat, q: LpExponent) -> (f64, Vec<Complex64>) {
    let m = y.len();
    let r = w.cols();
    if r == 0 {
        return (lp_norm(y, q), vec![]);
    }
    // least-squares coefficients as the starting point
    let wt = w.adjoint();
    let gram = wt.mul(w);
    let yv = CMat::from_vec(m, 1, y.to_vec()).unwrap();
    let rhs = wt.mul(&yv);
    let mut c: Vec<Complex64> = match gram.solve(&rhs) {
        Ok(sol) => (0..r).map(|i| sol[(i, 0)]).collect(),
        Err(_) => vec![Complex64::new(0.0, 0.0); r],
    };
    if q.is_two() {
        let res: Vec<Complex64> = (0..m)
            .map(|i| y[i] - (0..r).map(|t| w[(i, t)] * c[t]).sum::<Complex64>())
            .collect();
        return (lp_norm(&res, q), c);
    }
    let eval = |c: &[Complex64]| -> (f64, Vec<Complex64>) {
        let res: Vec<Complex64> = (0..m)
            .map(|i| y[i] - (0..r).map(|t| w[(i, t)] * c[t]).sum::<Complex64>())
            .collect();
        (lp_norm(&res, q), res)
    };
    let (mut val, mut res) = eval(&c);
    let mut step = 0.5;
    for _ in 0..60 {
        let u = duality_weight(&res, q);
        // gradient wrt c is −W^H u
        let mut g = vec![Complex64::new(0.0, 0.0); r];
        for t in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                acc += w[(i, t)].conj() * u[i];
            }
            g[t] = acc;
        }
        let gn = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gn < 1e-14 {
            break;
        }
        let mut improved = false;
        let mut local = step;
        for _ in 0..20 {
            let cand: Vec<Complex64> = c.iter().zip(&g).map(|(&ci, &gi)| ci + gi * local).collect();
            let (v, rv) = eval(&cand);
            if v < val - 1e-15 {
                c = cand;
                val = v;
                res = rv;
                step = local * 1.2;
                improved = true;
                break;
            }
            local *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (val, c)
}

fn orthonormalize_columns(w: &CMat) -> CMat {
    let m = w.rows();
    let r = w.cols();
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..r {
        let mut v = w.column(j);
        for _ in 0..2 {
            for e in &cols {
                let inner: Complex64 = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for i in 0..m {
                    v[i] -= inner * e[i];
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            for z in v.iter_mut() {
                *z /= norm;
            }
            cols.push(v);
        }
    }
    while cols.len() < r {
        // degenerate column: replace with a fresh basis direction
        for e in 0..m {
            let mut v = vec![Complex64::new(0.0, 0.0); m];
            v[e] = Complex64::new(1.0, 0.0);
            for ex in &cols {
                let inner: Complex64 = ex.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for i in 0..m {
                    v[i] -= inner * ex[i];
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                for z in v.iter_mut() {
                    *z /= norm;
                }
                cols.push(v);
                break;
            }
        }
    }
    CMat::from_fn(m, r, |i, j| cols[j][i])
}

/// sup over the domain sphere of x ↦ dist_q(Ax, range W).
fn sup_dist(a: &MatrixOperator, w: &CMat, warm: Option<&[Complex64]>) -> (f64, Vec<Complex64>) {
    let n = a.cols();
    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    starts.push(vec![Complex64::new(1.0, 0.0); n]);
    let mut rng = seeded_rng(0xd157);
    for _ in 0..4 {
        starts.push((0..n).map(|_| Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )).collect());
    }
    if let Some(x) = warm {
        starts.push(x.to_vec());
    }

    let mut best = (0.0_f64, starts[0].clone());
    for mut x in starts {
        let nx = lp_norm(&x, a.p_dom);
        if nx == 0.0 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= nx;
        }
        let mut val = dist_to_subspace(&a.matrix.matvec(&x), w, a.p_cod).0;
        let mut step = 0.5;
        for _ in 0..80 {
            let y = a.matrix.matvec(&x);
            let (_, c) = dist_to_subspace(&y, w, a.p_cod);
            let res: Vec<Complex64> = (0..a.rows())
                .map(|i| y[i] - (0..w.cols()).map(|t| w[(i, t)] * c[t]).sum::<Complex64>())
                .collect();
            let u = duality_weight(&res, a.p_cod);
            // envelope theorem: gradient through the optimal c vanishes
            let mut g = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..a.rows() {
                    acc += a.matrix[(i, j)].conj() * u[i];
                }
                g[j] = acc;
            }
            let mut improved = false;
            let mut local = step;
            for _ in 0..15 {
                let mut cand: Vec<Complex64> =
                    x.iter().zip(&g).map(|(&xi, &gi)| xi + gi * local).collect();
                let cn = lp_norm(&cand, a.p_dom);
                if cn == 0.0 {
                    local *= 0.5;
                    continue;
                }
                for z in cand.iter_mut() {
                    *z /= cn;
                }
                let v = dist_to_subspace(&a.matrix.matvec(&cand), w, a.p_cod).0;
                if v > val + 1e-15 {
                    x = cand;
                    val = v;
                    step = local * 1.2;
                    improved = true;
                    break;
                }
                local *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if val > best.0 {
            best = (val, x);
        }
    }
    best
}

fn kolmogorov_number(a: &MatrixOperator, k: usize, u_basis: &CMat, _budget: &SearchBudget) -> f64 {
    let r = k - 1;
    if r == 0 {
        return norm_of(a, &SearchBudget::default());
    }
    let m = a.rows();
    // init: span of the top left singular vectors
    let mut w = CMat::from_fn(m, r, |i, j| u_basis[(i, j)]);
    let mut warm: Option<Vec<Complex64>> = None;
    let (mut best_val, mut x_star) = sup_dist(a, &w, None);
    let mut best_w = w.clone();
    for step in 0..60 {
        let y = a.matrix.matvec(&x_star);
        let (_, c) = dist_to_subspace(&y, &w, a.p_cod);
        let res: Vec<Complex64> = (0..m)
            .map(|i| y[i] - (0..r).map(|t| w[(i, t)] * c[t]).sum::<Complex64>())
            .collect();
        let u = duality_weight(&res, a.p_cod);
        let eta = 0.4 / (1.0 + step as f64 / 10.0);
        let mut w_next = w.clone();
        for i in 0..m {
            for t in 0..r {
                w_next[(i, t)] += u[i] * c[t].conj() * eta;
            }
        }
        w = orthonormalize_columns(&w_next);
        let (v, xs) = sup_dist(a, &w, warm.as_deref());
        warm = Some(xs.clone());
        x_star = xs;
        if v < best_val {
            best_val = v;
            best_w = w.clone();
        }
    }
    // final evaluation with a fresh inner sweep
    sup_dist(a, &best_w, None).0
}

// ── Gelfand numbers ─────────────────────────────────────────────────

/// sup over z of ‖A B z‖_q / ‖B z‖_p.
fn sup_restricted(a: &MatrixOperator, b: &CMat) -> (f64, Vec<Complex64>) {
    let d = b.cols();
    let ab = a.matrix.mul(b);
    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..d {
        let mut e = vec![Complex64::new(0.0, 0.0); d];
        e[j] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    starts.push(vec![Complex64::new(1.0, 0.0); d]);
    let mut rng = seeded_rng(0x6e1f);
    for _ in 0..4 {
        starts.push((0..d).map(|_| Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )).collect());
    }

    let ratio = |z: &[Complex64]| -> f64 {
        let den = lp_norm(&b.matvec(z), a.p_dom);
        if den == 0.0 {
            return 0.0;
        }
        lp_norm(&ab.matvec(z), a.p_cod) / den
    };

    let mut best = (0.0_f64, starts[0].clone());
    for mut z in starts {
        let zn = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        if zn == 0.0 {
            continue;
        }
        for w in z.iter_mut() {
            *w /= zn;
        }
        let mut val = ratio(&z);
        let mut step = 0.5;
        for _ in 0..80 {
            let num_vec = ab.matvec(&z);
            let den_vec = b.matvec(&z);
            let num = lp_norm(&num_vec, a.p_cod);
            let den = lp_norm(&den_vec, a.p_dom);
            if den == 0.0 || num == 0.0 {
                break;
            }
            let u_num = duality_weight(&num_vec, a.p_cod);
            let u_den = duality_weight(&den_vec, a.p_dom);
            // quotient-rule ascent direction
            let mut g = vec![Complex64::new(0.0, 0.0); d];
            for t in 0..d {
                let mut gn = Complex64::new(0.0, 0.0);
                for i in 0..ab.rows() {
                    gn += ab[(i, t)].conj() * u_num[i];
                }
                let mut gd = Complex64::new(0.0, 0.0);
                for i in 0..b.rows() {
                    gd += b[(i, t)].conj() * u_den[i];
                }
                g[t] = (gn * den - gd * num) / (den * den);
            }
            let mut improved = false;
            let mut local = step;
            for _ in 0..15 {
                let mut cand: Vec<Complex64> =
                    z.iter().zip(&g).map(|(&zi, &gi)| zi + gi * local).collect();
                let cn = cand.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
                if cn == 0.0 {
                    local *= 0.5;
                    continue;
                }
                for w in cand.iter_mut() {
                    *w /= cn;
                }
                let v = ratio(&cand);
                if v > val + 1e-15 {
                    z = cand;
                    val = v;
                    step = local * 1.2;
                    improved = true;
                    break;
                }
                local *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if val > best.0 {
            best = (val, z);
        }
    }
    best
}

fn gelfand_number(a: &MatrixOperator, k: usize, v_basis: &CMat, _budget: &SearchBudget) -> f64 {
    let r = k - 1;
    if r == 0 {
        return norm_of(a, &SearchBudget::default());
    }
    let n = a.cols();
    let d = n - r;
    if d == 0 {
        return 0.0;
    }
    // init: span of the bottom right singular vectors
    let mut b = CMat::from_fn(n, d, |i, j| v_basis[(i, n - 1 - j)]);
    let (mut best_val, _) = sup_restricted(a, &b);
    let mut rng = seeded_rng(0x6e20);
    for step in 0..60 {
        let (val, z_star) = sup_restricted(a, &b);
        if val < best_val {
            best_val = val;
        }
        // perturbation hill-descent on the subspace basis
        let eta = 0.3 / (1.0 + step as f64 / 8.0);
        let _ = (val, &z_star);
        let cand = orthonormalize_columns(&b.add(&random_mat(&mut rng, n, d, eta)));
        let (cand_val, _) = sup_restricted(a, &cand);
        if cand_val < best_val {
            best_val = cand_val;
            b = cand;
        }
    }
    best_val
}
