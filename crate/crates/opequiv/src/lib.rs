//! Toolkit for deciding, certifying, and refuting the criteria that govern
//! when two compact operators are equivalent after extension or generate
//! the same operator ideal, together with a finite-dimensional engine that
//! constructs and verifies explicit witnesses.
//!
//! The crate has four working layers:
//!
//! - [`seq`] models singular-value sequences with classified decay tails
//!   (geometric, polynomial, explicit) and log-domain evaluation.
//! - [`criteria`] decides the Schatten same-ideal test and the Timotin
//!   shifted-ratio test by finite-horizon search plus a closed-form table,
//!   and applies the ℓ^p geometry obstruction rules.
//! - [`findim`] is the desk-scale matrix engine: an in-house SVD, ℓ^p
//!   operator norms, s-numbers, equivalence-after-extension decisions
//!   with explicit invertible witnesses, the G·S·H + R decomposition, and
//!   matricial/Schur coupling verification.
//! - [`axioms`] property-tests any s-number rule against the five
//!   s-function axioms and the ideal/shift bounds.
//!
//! The `opequiv` binary exposes all of it, batch-style, with
//! deterministic JSON reports; `examples/` holds one runnable walk-through
//! per capability.

pub mod axioms;
pub mod cli;
pub mod config;
pub mod criteria;
pub mod findim;
pub mod report;
pub mod seq;

pub use criteria::{
    analytic_decision, geometry_obstruction, schatten_test, timotin_test, Criterion,
    CriterionVerdict, CriterionWitness, Obstruction, RefutationCertificate, Relation,
    SchattenWitness, TimotinWitness,
};
pub use findim::{CMat, LpExponent, MatrixOperator, SNumberKind, Tolerances};
pub use seq::{
    parse_sequence_spec, shifted_ratio, DecayClass, OperatorMeta, SingularSequence, SpaceLabel,
};
