//! Singular-value sequence models: non-increasing nonnegative sequences
//! with a classified decay tail, standing in for the s-numbers of a
//! compact operator.
//!
//! All evaluation is available both in plain double precision (with
//! underflow flagged) and in the log domain, which the criterion code
//! uses whenever geometric tails run past a few hundred terms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeqError {
    #[error("geometric base must lie strictly in (0, 1), got {0}")]
    BadBase(f64),
    #[error("polynomial exponent must be strictly positive, got {0}")]
    BadExponent(f64),
    #[error("explicit values must be a non-empty, non-increasing, nonnegative list")]
    BadExplicit,
    #[error("tail value {tail} at index {index} exceeds the last explicit value {last}")]
    TailJump { tail: f64, last: f64, index: usize },
    #[error("scale must be positive and finite, got {0}")]
    BadScale(f64),
    #[error("sequence spec parse error: {0}")]
    Parse(String),
}

/// Decay shape of a sequence tail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayClass {
    /// base^n with base in (0, 1).
    Geometric { base: f64 },
    /// n^{-exponent} with exponent > 0.
    Polynomial { exponent: f64 },
    /// A finite non-increasing prefix; beyond it either the declared tail
    /// applies (evaluated at the same global index) or the last value is
    /// held frozen.
    Explicit {
        values: Vec<f64>,
        tail: Option<Box<DecayClass>>,
    },
}

impl DecayClass {
    pub fn geometric(base: f64) -> Result<Self, SeqError> {
        if !(base > 0.0 && base < 1.0) {
            return Err(SeqError::BadBase(base));
        }
        Ok(DecayClass::Geometric { base })
    }

    pub fn polynomial(exponent: f64) -> Result<Self, SeqError> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(SeqError::BadExponent(exponent));
        }
        Ok(DecayClass::Polynomial { exponent })
    }

    pub fn explicit(values: Vec<f64>, tail: Option<DecayClass>) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::BadExplicit);
        }
        for w in values.windows(2) {
            if !(w[0] >= w[1]) {
                return Err(SeqError::BadExplicit);
            }
        }
        if values.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(SeqError::BadExplicit);
        }
        if let Some(t) = &tail {
            if matches!(t, DecayClass::Explicit { .. }) {
                return Err(SeqError::Parse(
                    "explicit tails must be geometric or polynomial".into(),
                ));
            }
            let first_tail_index = values.len() + 1;
            let tail_value = t.raw_value(first_tail_index).value;
            let last = *values.last().unwrap();
            if tail_value > last {
                return Err(SeqError::TailJump {
                    tail: tail_value,
                    last,
                    index: first_tail_index,
                });
            }
        }
        Ok(DecayClass::Explicit {
            values,
            tail: tail.map(Box::new),
        })
    }

    /// The classified tail shape, looking through explicit prefixes.
    /// `None` means the sequence freezes at its last explicit value.
    pub fn tail_class(&self) -> Option<&DecayClass> {
        match self {
            DecayClass::Geometric { .. } | DecayClass::Polynomial { .. } => Some(self),
            DecayClass::Explicit { tail, .. } => tail.as_deref().and_then(|t| t.tail_class()),
        }
    }

    /// Length of the explicit prefix before the classified tail applies.
    pub fn prefix_len(&self) -> usize {
        match self {
            DecayClass::Explicit { values, .. } => values.len(),
            _ => 0,
        }
    }

    fn raw_value(&self, n: usize) -> RawValue {
        debug_assert!(n >= 1);
        match self {
            DecayClass::Geometric { base } => {
                let log = (n as f64) * base.ln();
                let value = if n <= i32::MAX as usize {
                    base.powi(n as i32)
                } else {
                    log.exp()
                };
                RawValue {
                    value,
                    log: Some(log),
                    frozen: false,
                }
            }
            DecayClass::Polynomial { exponent } => {
                let log = -exponent * (n as f64).ln();
                RawValue {
                    value: (n as f64).powf(-exponent),
                    log: Some(log),
                    frozen: false,
                }
            }
            DecayClass::Explicit { values, tail } => {
                if n <= values.len() {
                    let v = values[n - 1];
                    RawValue {
                        value: v,
                        log: if v > 0.0 { Some(v.ln()) } else { None },
                        frozen: false,
                    }
                } else {
                    match tail {
                        Some(t) => t.raw_value(n),
                        None => {
                            let v = *values.last().unwrap();
                            RawValue {
                                value: v,
                                log: if v > 0.0 { Some(v.ln()) } else { None },
                                frozen: true,
                            }
                        }
                    }
                }
            }
        }
    }
}

struct RawValue {
    value: f64,
    /// ln(value) when the value is positive; None encodes an exact zero.
    log: Option<f64>,
    frozen: bool,
}

/// Evaluated term of a sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeqValue {
    pub value: f64,
    /// Exact log-domain value; None when the term is exactly zero.
    pub log_value: Option<f64>,
    /// The index ran past an explicit prefix with no declared tail.
    pub frozen_tail: bool,
    /// The double-precision value underflowed to zero while the log-domain
    /// value is still finite.
    pub underflow: bool,
}

/// A scaled decay class: term(n) = scale · class(n).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularSequence {
    pub class: DecayClass,
    pub scale: f64,
}

impl SingularSequence {
    pub fn new(class: DecayClass, scale: f64) -> Result<Self, SeqError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(SeqError::BadScale(scale));
        }
        Ok(SingularSequence { class, scale })
    }

    pub fn unit(class: DecayClass) -> Self {
        SingularSequence { class, scale: 1.0 }
    }

    /// Term at 1-based index n.
    pub fn value_at(&self, n: usize) -> SeqValue {
        assert!(n >= 1, "sequence indices are 1-based");
        let raw = self.class.raw_value(n);
        let value = self.scale * raw.value;
        let log_value = raw.log.map(|l| l + self.scale.ln());
        let underflow = value == 0.0 && log_value.is_some();
        SeqValue {
            value,
            log_value,
            frozen_tail: raw.frozen,
            underflow,
        }
    }

    /// Plain numeric term (0.0 on underflow).
    pub fn value(&self, n: usize) -> f64 {
        self.value_at(n).value
    }

    pub fn tail_class(&self) -> Option<&DecayClass> {
        self.class.tail_class()
    }

    pub fn prefix_len(&self) -> usize {
        self.class.prefix_len()
    }
}

/// Ratio numerator(n) / denominator(n + m), with the conventions
/// +∞ for positive/zero and a flagged 1 for zero/zero.
#[derive(Clone, Copy, Debug)]
pub struct RatioValue {
    pub value: f64,
    /// ln of the ratio when both terms are positive.
    pub log_value: Option<f64>,
    /// Both terms were exactly zero; the value 1 is conventional.
    pub zero_over_zero: bool,
    /// Either term came from a frozen explicit tail.
    pub frozen: bool,
}

pub fn shifted_ratio(
    numerator: &SingularSequence,
    denominator: &SingularSequence,
    m: usize,
    n: usize,
) -> RatioValue {
    assert!(n >= 1, "sequence indices are 1-based");
    let num = numerator.value_at(n);
    let den = denominator.value_at(n + m);
    let frozen = num.frozen_tail || den.frozen_tail;
    match (num.log_value, den.log_value) {
        (Some(ln), Some(ld)) => {
            let log = ln - ld;
            RatioValue {
                value: log.exp(),
                log_value: Some(log),
                zero_over_zero: false,
                frozen,
            }
        }
        (Some(_), None) => RatioValue {
            value: f64::INFINITY,
            log_value: None,
            zero_over_zero: false,
            frozen,
        },
        (None, Some(_)) => RatioValue {
            value: 0.0,
            log_value: None,
            zero_over_zero: false,
            frozen,
        },
        (None, None) => RatioValue {
            value: 1.0,
            log_value: Some(0.0),
            zero_over_zero: true,
            frozen,
        },
    }
}

// ── operator metadata for the geometry rules ────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceLabel {
    Hilbert,
    LpSequence { p: f64 },
    Unspecified,
}

/// What is known about the operator behind a sequence: the space it acts
/// on and whether it is compact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorMeta {
    pub space: SpaceLabel,
    pub compact: bool,
}

impl OperatorMeta {
    pub fn lp(p: f64, compact: bool) -> Result<Self, SeqError> {
        if !(p >= 1.0) {
            return Err(SeqError::Parse(format!("lp exponent must be >= 1, got {p}")));
        }
        Ok(OperatorMeta {
            space: SpaceLabel::LpSequence { p },
            compact,
        })
    }

    pub fn hilbert(compact: bool) -> Self {
        OperatorMeta {
            space: SpaceLabel::Hilbert,
            compact,
        }
    }

    pub fn unspecified() -> Self {
        OperatorMeta {
            space: SpaceLabel::Unspecified,
            compact: false,
        }
    }
}

// ── textual sequence specs ──────────────────────────────────────────

/// Parse `geometric:r=0.5`, `polynomial:alpha=1.0`,
/// `explicit:[1,0.5,0.25];tail=geometric:r=0.5`, each with an optional
/// `;scale=...`.
pub fn parse_sequence_spec(spec: &str) -> Result<SingularSequence, SeqError> {
    let mut scale = 1.0_f64;
    let mut tail: Option<DecayClass> = None;
    let mut segments = spec.split(';');
    let head = segments
        .next()
        .ok_or_else(|| SeqError::Parse("empty sequence spec".into()))?
        .trim();
    let mut head_class: Option<(&str, &str)> = None;
    if let Some((kind, args)) = head.split_once(':') {
        head_class = Some((kind.trim(), args.trim()));
    }
    let (kind, args) = head_class.ok_or_else(|| {
        SeqError::Parse(format!("expected `kind:params`, got `{head}`"))
    })?;

    for seg in segments {
        let seg = seg.trim();
        if seg.is_empty() {
            continue;
        }
        let (key, value) = seg
            .split_once('=')
            .ok_or_else(|| SeqError::Parse(format!("expected key=value, got `{seg}`")))?;
        match key.trim() {
            "scale" => {
                scale = value
                    .trim()
                    .parse()
                    .map_err(|_| SeqError::Parse(format!("bad scale `{value}`")))?;
            }
            "tail" => {
                tail = Some(parse_class_head(value.trim())?);
            }
            other => {
                return Err(SeqError::Parse(format!("unknown key `{other}`")));
            }
        }
    }

    let class = match kind {
        "geometric" => {
            if tail.is_some() {
                return Err(SeqError::Parse("tail only applies to explicit specs".into()));
            }
            parse_class(kind, args)?
        }
        "polynomial" => {
            if tail.is_some() {
                return Err(SeqError::Parse("tail only applies to explicit specs".into()));
            }
            parse_class(kind, args)?
        }
        "explicit" => {
            let values = parse_value_list(args)?;
            DecayClass::explicit(values, tail)?
        }
        other => return Err(SeqError::Parse(format!("unknown sequence kind `{other}`"))),
    };
    SingularSequence::new(class, scale)
}

fn parse_class_head(spec: &str) -> Result<DecayClass, SeqError> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| SeqError::Parse(format!("expected `kind:params` in tail, got `{spec}`")))?;
    parse_class(kind.trim(), args.trim())
}

fn parse_class(kind: &str, args: &str) -> Result<DecayClass, SeqError> {
    match kind {
        "geometric" => {
            let r = parse_named_number(args, "r")?;
            DecayClass::geometric(r)
        }
        "polynomial" => {
            let alpha = parse_named_number(args, "alpha")?;
            DecayClass::polynomial(alpha)
        }
        other => Err(SeqError::Parse(format!("unknown sequence kind `{other}`"))),
    }
}

fn parse_named_number(args: &str, name: &str) -> Result<f64, SeqError> {
    let (key, value) = args
        .split_once('=')
        .ok_or_else(|| SeqError::Parse(format!("expected `{name}=<value>`, got `{args}`")))?;
    if key.trim() != name {
        return Err(SeqError::Parse(format!(
            "expected parameter `{name}`, got `{}`",
            key.trim()
        )));
    }
    value
        .trim()
        .parse()
        .map_err(|_| SeqError::Parse(format!("bad number `{}`", value.trim())))
}

fn parse_value_list(args: &str) -> Result<Vec<f64>, SeqError> {
    let inner = args
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| SeqError::Parse(format!("expected `[v1,v2,...]`, got `{args}`")))?;
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| SeqError::Parse(format!("bad number `{}`", tok.trim())))
        })
        .collect()
}
