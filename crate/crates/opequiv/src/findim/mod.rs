//! Finite-dimensional engine: matrices between ℓ^p spaces, SVD, operator
//! norms, s-numbers, equivalence decisions with explicit witnesses, and
//! block-identity verification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod coupling;
pub mod equivalence;
pub mod mat;
pub mod norms;
pub mod ranlemma;
pub mod snumber;
pub mod svd;

pub use coupling::{verify_mc, verify_sc, McReport, ScReport};
pub use equivalence::{
    construct_eae_invertible, decide_eae, decide_eaoe, EaeDecision, EaeWitness, EaoeDecision,
    ExtendedSide,
};
pub use mat::CMat;
pub use norms::{lp_identity_norm, op_norm, NormMethod, OpNormResult};
pub use ranlemma::{
    ranlemma_generic, ranlemma_structured, structured_from_pair, RanDecomposition,
    StructuredBlocks,
};
pub use snumber::{s_number, s_number_with_ceiling, SNumberKind, SNumberResult};
pub use svd::{svd, SvdResult};

#[derive(Debug, Error)]
pub enum FindimError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is numerically singular at the requested rank (requested {requested}, found {found})")]
    RankDeficient { requested: usize, found: usize },
    #[error("SVD did not converge")]
    SvdNoConvergence,
    #[error("exponent must satisfy p >= 1 (got {0})")]
    BadExponent(f64),
    #[error("s-number index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension {dim} exceeds the search ceiling {ceiling} for non-Hilbert s-numbers")]
    AboveSearchCeiling { dim: usize, ceiling: usize },
    #[error("operator must be invertible (reciprocal condition {rcond:.3e} below floor {floor:.3e})")]
    IllConditioned { rcond: f64, floor: f64 },
    #[error("witness does not satisfy its defining identity (residual {residual:.3e} > {tol:.3e})")]
    BadWitness { residual: f64, tol: f64 },
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent of an ℓ^p norm; infinity is its own variant, never a large
/// finite stand-in.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LpExponent {
    Finite(f64),
    Infinity,
}

impl LpExponent {
    pub fn new(p: f64) -> Result<Self, FindimError> {
        if p.is_infinite() && p > 0.0 {
            Ok(LpExponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(LpExponent::Finite(p))
        } else {
            Err(FindimError::BadExponent(p))
        }
    }

    pub const TWO: LpExponent = LpExponent::Finite(2.0);

    pub fn is_two(&self) -> bool {
        matches!(self, LpExponent::Finite(p) if *p == 2.0)
    }

    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(&self) -> f64 {
        match self {
            LpExponent::Finite(p) => 1.0 / p,
            LpExponent::Infinity => 0.0,
        }
    }

    /// Conjugate exponent p' with 1/p + 1/p' = 1.
    pub fn conjugate(&self) -> LpExponent {
        match self {
            LpExponent::Infinity => LpExponent::Finite(1.0),
            LpExponent::Finite(p) if *p == 1.0 => LpExponent::Infinity,
            LpExponent::Finite(p) => LpExponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn parse(token: &str) -> Result<Self, FindimError> {
        let t = token.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(LpExponent::Infinity);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| FindimError::Parse(format!("bad exponent token `{t}`")))?;
        LpExponent::new(p)
    }
}

impl std::fmt::Display for LpExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpExponent::Finite(p) => write!(f, "{p}"),
            LpExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite complex matrix viewed as an operator ℓ^{p_dom} → ℓ^{p_cod}.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOperator {
    pub matrix: CMat,
    pub p_dom: LpExponent,
    pub p_cod: LpExponent,
}

impl MatrixOperator {
    pub fn new(matrix: CMat, p_dom: LpExponent, p_cod: LpExponent) -> Result<Self, FindimError> {
        if matrix
            .entries()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(FindimError::NonFinite);
        }
        Ok(MatrixOperator {
            matrix,
            p_dom,
            p_cod,
        })
    }

    /// Hilbert-space view (p = q = 2) of a plain matrix.
    pub fn hilbert(matrix: CMat) -> Self {
        MatrixOperator {
            matrix,
            p_dom: LpExponent::TWO,
            p_cod: LpExponent::TWO,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_hilbert(&self) -> bool {
        self.p_dom.is_two() && self.p_cod.is_two()
    }

    /// Serialize in the plain-text exchange format:
    /// a `rows cols p_dom p_cod` header, then row-major `re im` pairs.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.rows(),
            self.cols(),
            self.p_dom,
            self.p_cod
        );
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| {
                    let z = self.matrix[(i, j)];
                    format!("{} {}", z.re, z.im)
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FindimError> {
        let mut tokens = text.split_whitespace();
        let mut next = |what: &str| {
            tokens
                .next()
                .ok_or_else(|| FindimError::Parse(format!("missing {what}")))
        };
        let rows: usize = next("row count")?
            .parse()
            .map_err(|_| FindimError::Parse("bad row count".into()))?;
        let cols: usize = next("column count")?
            .parse()
            .map_err(|_| FindimError::Parse("bad column count".into()))?;
        if rows == 0 || cols == 0 {
            return Err(FindimError::Parse("matrix dimensions must be >= 1".into()));
        }
        let p_dom = LpExponent::parse(next("domain exponent")?)?;
        let p_cod = LpExponent::parse(next("codomain exponent")?)?;
        let mut data = Vec::with_capacity(rows * cols);
        for k in 0..rows * cols {
            let re: f64 = next(&format!("entry {k} (re)"))?
                .parse()
                .map_err(|_| FindimError::Parse(format!("bad real part at entry {k}")))?;
            let im: f64 = next(&format!("entry {k} (im)"))?
                .parse()
                .map_err(|_| FindimError::Parse(format!("bad imaginary part at entry {k}")))?;
            data.push(Complex64::new(re, im));
        }
        if tokens.next().is_some() {
            return Err(FindimError::Parse("trailing tokens after matrix data".into()));
        }
        let matrix = CMat::from_vec(rows, cols, data)?;
        MatrixOperator::new(matrix, p_dom, p_cod)
    }
}

/// Shared numeric knobs for decisions and witness checks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    /// SVD reconstruction/orthonormality requirement (relative).
    pub tol_svd: f64,
    /// Residual allowed when a witness identity is verified (absolute,
    /// Frobenius).
    pub tol_witness: f64,
    /// A singular value below `rank_tol * σ_max` counts as zero.
    pub rank_tol: f64,
    /// Singular values of `I − H21·T` below `split_floor * σ_max` are
    /// lifted to make the invertible part safely invertible (relative).
    pub split_floor: f64,
    /// Witness matrices must have reciprocal condition at least this.
    pub cond_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_svd: 1e-10,
            tol_witness: 1e-8,
            rank_tol: 1e-9,
            split_floor: 1e-6,
            cond_floor: 1e-8,
        }
    }
}
