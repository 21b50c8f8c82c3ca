//! Dense complex matrices and the elimination kernels the equivalence
//! engine is built on.
//!
//! Everything here is plain row-major storage over `Complex64`. The only
//! nontrivial algorithms are Gaussian elimination with full pivoting
//! (inverses, solves, rank-normal decompositions) — the SVD lives in
//! [`super::svd`].

use num_complex::Complex64;
use std::fmt;

use super::FindimError;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, FindimError> {
        if data.len() != rows * cols {
            return Err(FindimError::Shape(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FindimError::NonFinite);
        }
        Ok(CMat { rows, cols, data })
    }

    /// Build from real entries, row-major.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, FindimError> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        CMat::from_vec(rows, cols, data)
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = CMat::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let vs: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        CMat::diag(&vs)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex64> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len());
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Top-left `r0..r1` x `c0..c1` submatrix (half-open ranges).
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> CMat {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        CMat::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Assemble a 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = CMat::zeros(a.rows + c.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)];
            }
            for j in 0..b.cols {
                m[(i, a.cols + j)] = b[(i, j)];
            }
        }
        for i in 0..c.rows {
            for j in 0..c.cols {
                m[(a.rows + i, j)] = c[(i, j)];
            }
            for j in 0..d.cols {
                m[(a.rows + i, a.cols + j)] = d[(i, j)];
            }
        }
        m
    }

    /// `diag(self, I_n)` — the operator extended by an identity block.
    pub fn extend_identity(&self, n: usize) -> CMat {
        let b = CMat::zeros(self.rows, n);
        let c = CMat::zeros(n, self.cols);
        let d = CMat::identity(n);
        CMat::from_blocks(self, &b, &c, &d)
    }

    /// Solve `self * X = B` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &CMat) -> Result<CMat, FindimError> {
        if !self.is_square() {
            return Err(FindimError::Shape("solve requires a square matrix".into()));
        }
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for k in 0..n {
            // pivot
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in (k + 1)..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Err(FindimError::Singular);
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                }
                for j in 0..x.cols {
                    x.data.swap(k * x.cols + j, piv * x.cols + j);
                }
            }
            let d = a[(k, k)];
            for i in (k + 1)..n {
                let factor = a[(i, k)] / d;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= factor * akj;
                }
                for j in 0..x.cols {
                    let xkj = x[(k, j)];
                    x[(i, j)] -= factor * xkj;
                }
            }
        }
        // back substitution
        for j in 0..x.cols {
            for i in (0..n).rev() {
                let mut acc = x[(i, j)];
                for k in (i + 1)..n {
                    acc -= a[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = acc / a[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMat, FindimError> {
        self.solve(&CMat::identity(self.rows))
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank-normal decomposition `A = P · N · Q` with `N = diag(I_r, 0)` and
/// `P`, `Q` invertible, computed by Gaussian elimination with full pivoting.
///
/// The rank `r` is supplied by the caller (normally from an SVD rank
/// decision) so that the factorization and the rank decision cannot
/// disagree; elimination runs exactly `r` steps.
pub struct RankNormalForm {
    pub left: CMat,
    pub right: CMat,
    pub rank: usize,
    /// `‖A − P N Q‖_F` of the reassembled product.
    pub residual: f64,
}

pub fn rank_normal_form(a: &CMat, rank: usize) -> Result<RankNormalForm, FindimError> {
    if !a.is_square() {
        return Err(FindimError::Shape(
            "rank-normal form requires a square matrix".into(),
        ));
    }
    let n = a.rows();
    assert!(rank <= n);
    let mut u = a.clone();
    let mut row_perm: Vec<usize> = (0..n).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    // L stored as the unit-lower multipliers in place below the diagonal.
    let mut lower = CMat::identity(n);

    for k in 0..rank {
        // full pivot over the trailing block
        let (mut pi, mut pj, mut best) = (k, k, 0.0_f64);
        for i in k..n {
            for j in k..n {
                let v = u[(i, j)].norm();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best == 0.0 {
            return Err(FindimError::RankDeficient {
                requested: rank,
                found: k,
            });
        }
        if pi != k {
            for j in 0..n {
                let t = u[(k, j)];
                u[(k, j)] = u[(pi, j)];
                u[(pi, j)] = t;
            }
            for j in 0..k {
                let t = lower[(k, j)];
                lower[(k, j)] = lower[(pi, j)];
                lower[(pi, j)] = t;
            }
            row_perm.swap(k, pi);
        }
        if pj != k {
            for i in 0..n {
                let t = u[(i, k)];
                u[(i, k)] = u[(i, pj)];
                u[(i, pj)] = t;
            }
            col_perm.swap(k, pj);
        }
        let d = u[(k, k)];
        for i in (k + 1)..n {
            let factor = u[(i, k)] / d;
            lower[(i, k)] = factor;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let ukj = u[(k, j)];
                u[(i, j)] -= factor * ukj;
            }
        }
    }
    // Entries beyond step `rank` are elimination residue below the rank
    // tolerance; zero them so N is exact.
    for i in rank..n {
        for j in rank..n {
            u[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }

    // A = Pr^T L [U_r; 0] Pc^T where U_r holds the first `rank` rows of u.
    // Split [U_r; 0] = N * W with W = [[U11, U12], [0, I]] invertible.
    let mut w = CMat::identity(n);
    for i in 0..rank {
        for j in i..n {
            w[(i, j)] = u[(i, j)];
        }
    }
    // left = Pr^T * L
    let mut left = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            left[(row_perm[i], j)] = lower[(i, j)];
        }
    }
    // right = W * Pc^T  (column j of W lands at original column col_perm[j])
    let mut right = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            right[(i, col_perm[j])] = w[(i, j)];
        }
    }

    let mut nmat = CMat::zeros(n, n);
    for i in 0..rank {
        nmat[(i, i)] = Complex64::new(1.0, 0.0);
    }
    let residual = left.mul(&nmat).mul(&right).sub(a).frobenius_norm();
    Ok(RankNormalForm {
        left,
        right,
        rank,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_and_identity() {
        let a = CMat::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let i3 = CMat::identity(3);
        assert_eq!(a.mul(&i3), a);
        let at = a.adjoint();
        let g = at.mul(&a);
        assert_eq!(g.rows(), 3);
        assert!((g[(0, 0)].re - 17.0).abs() < 1e-12);
    }

    #[test]
    fn solve_small_complex() {
        let a = CMat::from_vec(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)])
            .unwrap();
        let b = CMat::from_vec(2, 1, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let x = a.solve(&b).unwrap();
        let r = a.mul(&x).sub(&b).frobenius_norm();
        assert!(r < 1e-13, "residual {r}");
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CMat::from_real(3, 3, &[4.0, 1.0, -1.0, 1.0, 3.0, 2.0, -1.0, 2.0, 5.0]).unwrap();
        let inv = a.inverse().unwrap();
        let r = a.mul(&inv).sub(&CMat::identity(3)).frobenius_norm();
        assert!(r < 1e-12, "residual {r}");
    }

    #[test]
    fn singular_solve_rejected() {
        let a = CMat::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(a.inverse(), Err(FindimError::Singular)));
    }

    #[test]
    fn rank_normal_form_full_rank() {
        let a = CMat::from_real(3, 3, &[0.0, 2.0, 1.0, 1.0, 0.0, 0.0, 3.0, 1.0, 4.0]).unwrap();
        let rnf = rank_normal_form(&a, 3).unwrap();
        assert!(rnf.residual < 1e-12, "residual {}", rnf.residual);
    }

    #[test]
    fn rank_normal_form_deficient() {
        // rank 1
        let a = CMat::from_real(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 3.0, 6.0, 9.0]).unwrap();
        let rnf = rank_normal_form(&a, 1).unwrap();
        assert!(rnf.residual < 1e-12, "residual {}", rnf.residual);
        // asking for more rank than exists fails
        assert!(rank_normal_form(&a, 2).is_err());
    }

    #[test]
    fn blocks_and_extension() {
        let t = CMat::diag_real(&[2.0, 3.0]);
        let e = t.extend_identity(2);
        assert_eq!(e.rows(), 4);
        assert_eq!(e[(2, 2)], c(1.0, 0.0));
        assert_eq!(e[(0, 0)], c(2.0, 0.0));
        assert_eq!(e[(0, 2)], c(0.0, 0.0));
        let s = e.submatrix(0, 2, 0, 2);
        assert_eq!(s, t);
    }
}
