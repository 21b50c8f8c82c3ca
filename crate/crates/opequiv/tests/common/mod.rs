//! Independent oracles for the integration suites. Nothing here calls the
//! crate's SVD or norm-search code paths: eigenvalues come from Householder
//! tridiagonalization plus Sturm bisection, and the norm oracles are grid
//! or sampling searches with local polish.

#![allow(dead_code)]

use num_complex::Complex64;
use opequiv::findim::CMat;

// ── Hermitian eigenvalues by tridiagonalization + Sturm bisection ───

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(b: &CMat) -> Vec<f64> {
    let n = b.rows();
    assert!(b.is_square());
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![b[(0, 0)].re];
    }
    let (diag, off) = tridiagonalize(b);
    let scale = diag
        .iter()
        .map(|d| d.abs())
        .chain(off.iter().map(|e| e.abs()))
        .fold(1.0_f64, f64::max);
    // Gershgorin interval
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += off[i - 1].abs();
        }
        if i < n - 1 {
            radius += off[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    lo -= scale * 1e-12;
    hi += scale * 1e-12;

    (0..n)
        .map(|k| {
            // k-th smallest eigenvalue: bisection on the Sturm count
            let mut a = lo;
            let mut b_ = hi;
            for _ in 0..200 {
                let mid = 0.5 * (a + b_);
                if mid <= a || mid >= b_ {
                    break;
                }
                if sturm_count_below(&diag, &off, mid) > k {
                    b_ = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b_)
        })
        .collect()
}

/// Householder reduction of a Hermitian matrix to real symmetric
/// tridiagonal form (diagonal, off-diagonal magnitudes).
fn tridiagonalize(b: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = b.rows();
    let mut a = b.clone();
    for k in 0..n.saturating_sub(2) {
        // eliminate column k below the first subdiagonal
        let mut norm_sq = 0.0;
        for i in (k + 1)..n {
            norm_sq += a[(i, k)].norm_sqr();
        }
        if norm_sq == 0.0 {
            continue;
        }
        let norm = norm_sq.sqrt();
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x - alpha e_1
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for i in (k + 1)..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // A <- H A H with H = I - 2 v v^H
        let w = CMat::from_fn(n, 1, |i, _| v[i]);
        let wh_a = w.adjoint().mul(&a); // 1 x n
        let mut h_a = a.clone();
        for i in 0..n {
            for j in 0..n {
                h_a[(i, j)] -= 2.0 * v[i] * wh_a[(0, j)];
            }
        }
        let a_w = h_a.mul(&w); // n x 1
        for i in 0..n {
            for j in 0..n {
                h_a[(i, j)] -= 2.0 * a_w[(i, 0)] * v[j].conj();
            }
        }
        a = h_a;
    }
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let off: Vec<f64> = (0..n - 1).map(|i| a[(i + 1, i)].norm()).collect();
    (diag, off)
}

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
fn sturm_count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let e2 = off[i - 1] * off[i - 1];
        let denom = if q == 0.0 { 1e-300 } else { q };
        q = diag[i] - x - e2 / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Singular values of an arbitrary matrix, descending, computed from the
/// eigenvalues of the smaller Gram matrix.
pub fn singular_values_oracle(a: &CMat) -> Vec<f64> {
    let gram = if a.rows() >= a.cols() {
        a.adjoint().mul(a)
    } else {
        a.mul(&a.adjoint())
    };
    let mut eigs = hermitian_eigenvalues(&gram);
    eigs.reverse();
    eigs.iter().map(|&l| l.max(0.0).sqrt()).collect()
}

// ── brute-force identity norm on the ℓ^p sphere ─────────────────────

/// max ‖x‖_q over ‖x‖_p = 1 on ℝ^n by coarse grid plus pairwise-transfer
/// polish (magnitude profiles suffice by symmetry).
pub fn brute_force_identity_norm(n: usize, p: f64, q: f64) -> f64 {
    assert!(n >= 1 && n <= 8);
    let value_of = |t: &[f64]| -> f64 {
        // t_i = |x_i|^p (simplex) for finite p, or |x_i| in [0,1] for p = inf
        if p.is_finite() {
            if q.is_finite() {
                t.iter().map(|&ti| ti.powf(q / p)).sum::<f64>().powf(1.0 / q)
            } else {
                t.iter().cloned().fold(0.0, f64::max).powf(1.0 / p)
            }
        } else if q.is_finite() {
            t.iter().map(|&mi| mi.powf(q)).sum::<f64>().powf(1.0 / q)
        } else {
            t.iter().cloned().fold(0.0, f64::max)
        }
    };

    let mut best_t: Vec<f64>;
    let mut best = -1.0_f64;
    if p.is_finite() {
        // compositions of GRID parts over n cells
        const GRID: usize = 12;
        let mut stack = vec![(Vec::<usize>::new(), GRID)];
        best_t = vec![0.0; n];
        while let Some((prefix, remaining)) = stack.pop() {
            if prefix.len() == n - 1 {
                let mut t: Vec<f64> = prefix.iter().map(|&k| k as f64 / GRID as f64).collect();
                t.push(remaining as f64 / GRID as f64);
                let v = value_of(&t);
                if v > best {
                    best = v;
                    best_t = t;
                }
                continue;
            }
            for k in 0..=remaining {
                let mut next = prefix.clone();
                next.push(k);
                stack.push((next, remaining - k));
            }
        }
        // pairwise mass transfers with golden-section refinement
        for _round in 0..400 {
            let mut improved = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let pool = best_t[i] + best_t[j];
                    if pool == 0.0 {
                        continue;
                    }
                    let eval = |share: f64| {
                        let mut t = best_t.clone();
                        t[i] = pool * share;
                        t[j] = pool * (1.0 - share);
                        value_of(&t)
                    };
                    let mut a = 0.0;
                    let mut b = 1.0;
                    const PHI: f64 = 0.6180339887498949;
                    let mut x1 = b - PHI * (b - a);
                    let mut x2 = a + PHI * (b - a);
                    let mut f1 = eval(x1);
                    let mut f2 = eval(x2);
                    for _ in 0..80 {
                        if f1 < f2 {
                            a = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = a + PHI * (b - a);
                            f2 = eval(x2);
                        } else {
                            b = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = b - PHI * (b - a);
                            f1 = eval(x1);
                        }
                    }
                    let share = 0.5 * (a + b);
                    let v = eval(share);
                    if v > best + 1e-15 {
                        let pool_i = pool * share;
                        best_t[i] = pool_i;
                        best_t[j] = pool - pool_i;
                        best = v;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    } else {
        // p = inf: coordinatewise monotone, grid over {0, 1/4, ..., 1}^n
        let steps = [0.0, 0.25, 0.5, 0.75, 1.0];
        let mut idx = vec![0usize; n];
        loop {
            let t: Vec<f64> = idx.iter().map(|&k| steps[k]).collect();
            if t.iter().cloned().fold(0.0, f64::max) == 1.0 {
                let v = value_of(&t);
                if v > best {
                    best = v;
                }
            }
            let mut c = 0;
            loop {
                idx[c] += 1;
                if idx[c] < steps.len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
                if c == n {
                    return best;
                }
            }
        }
    }
    best
}

// ── sampling-based operator norm and rank-one approximation oracle ──

struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    fn next_complex(&mut self) -> Complex64 {
        Complex64::new(self.next_f64(), self.next_f64())
    }
}

fn lp_norm_vec(x: &[Complex64], p: f64) -> f64 {
    if p.is_finite() {
        x.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
    } else {
        x.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Sampling + hill-climb estimate of the ℓ^p → ℓ^p operator norm. For
/// p = 1 the exact column rule is used.
pub fn norm_oracle_lp(m: &CMat, p: f64, seed: u64) -> f64 {
    let n = m.cols();
    if p == 1.0 {
        let mut best = 0.0_f64;
        for j in 0..n {
            let col: Vec<Complex64> = (0..m.rows()).map(|i| m[(i, j)]).collect();
            best = best.max(lp_norm_vec(&col, 1.0));
        }
        return best;
    }
    let eval = |x: &[Complex64]| -> f64 {
        let den = lp_norm_vec(x, p);
        if den == 0.0 {
            return 0.0;
        }
        let y: Vec<Complex64> = (0..m.rows())
            .map(|i| (0..n).map(|j| m[(i, j)] * x[j]).sum())
            .collect();
        lp_norm_vec(&y, p) / den
    };
    let mut rng = Lcg::new(seed);
    let mut best_x: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
    best_x[0] = Complex64::new(1.0, 0.0);
    let mut best = eval(&best_x);
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        let v = eval(&e);
        if v > best {
            best = v;
            best_x = e;
        }
    }
    let uniform = vec![Complex64::new(1.0, 0.0); n];
    if eval(&uniform) > best {
        best = eval(&uniform);
        best_x = uniform;
    }
    for _ in 0..2000 {
        let x: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
        let v = eval(&x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    // hill climb with shrinking radius
    let mut radius = 0.5;
    for _ in 0..4000 {
        let cand: Vec<Complex64> = best_x
            .iter()
            .map(|&z| z + rng.next_complex() * radius)
            .collect();
        let v = eval(&cand);
        if v > best {
            best = v;
            best_x = cand;
        } else {
            radius *= 0.999;
            if radius < 1e-9 {
                break;
            }
        }
    }
    best
}

/// Brute-force second approximation number of a small matrix on ℓ^p:
/// multi-start minimization of ‖A − u v^H‖ over rank-one perturbations,
/// with the independent sampling norm inside.
pub fn rank_one_approx_oracle(a: &CMat, p: f64, seed: u64) -> f64 {
    let m = a.rows();
    let n = a.cols();
    let eval = |u: &[Complex64], v: &[Complex64]| -> f64 {
        let f = CMat::from_fn(m, n, |i, j| u[i] * v[j].conj());
        norm_oracle_lp(&a.sub(&f), p, seed ^ 0x77)
    };
    let mut rng = Lcg::new(seed);
    // start from the dominant diagonal direction plus random restarts
    let mut starts: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::new();
    for d in 0..m.min(n) {
        let mut u = vec![Complex64::new(0.0, 0.0); m];
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        u[d] = a[(d, d)];
        v[d] = Complex64::new(1.0, 0.0);
        starts.push((u, v));
    }
    for _ in 0..12 {
        starts.push((
            (0..m).map(|_| rng.next_complex()).collect(),
            (0..n).map(|_| rng.next_complex()).collect(),
        ));
    }
    let mut best = f64::INFINITY;
    for (mut u, mut v) in starts {
        let mut val = eval(&u, &v);
        let mut radius = 0.4;
        for _ in 0..1500 {
            let cu: Vec<Complex64> = u.iter().map(|&z| z + rng.next_complex() * radius).collect();
            let cv: Vec<Complex64> = v.iter().map(|&z| z + rng.next_complex() * radius).collect();
            let c = eval(&cu, &cv);
            if c < val {
                val = c;
                u = cu;
                v = cv;
            } else {
                radius *= 0.997;
                if radius < 1e-7 {
                    break;
                }
            }
        }
        best = best.min(val);
    }
    best
}
