//! Noncommutative operator calculus.
//!
//! Expressions are formal sums of words over a fixed alphabet of generators
//! with exact complex-rational coefficients. A [`RuleSet`] declares which
//! pairs commute, anticommute or have a commutator, which generators square
//! to a value, and which composites expand by substitution. [`normalize`]
//! rewrites an expression to canonical form under those facts; everything
//! else in this module is built on it.

mod expr;
mod generator;
pub mod identities;
mod ledger;
mod normalize;
mod parse;
mod rules;

pub use expr::{Expr, Word};
pub use generator::{Generator, Grading};
pub use ledger::{prove_zero, Obligation, ProofLedger};
pub use normalize::{
    anticommutator, commutator, explicit_time_derivative, heisenberg_derivative,
    heisenberg_rate_expr, is_normal_word, normalize, normalize_traced, normalize_with_budget,
    substitution, RewriteStep, DEFAULT_STEP_BUDGET,
};
pub use parse::parse;
pub use rules::{Relation, RuleSet};

pub use identities::square_identity_check;

/// Long-form alias of [`Expr`].
pub type OperatorExpression = Expr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpcalcError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rewrite budget of {budget} steps exceeded; the rule set does not terminate on this input")]
    BudgetExceeded { budget: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("relation `{0}` conflicts with an existing one")]
    ConflictingRelation(String),
    #[error("invalid relation `{0}`")]
    InvalidRelation(String),
}
