//! Derivation scripts for the ZX-calculus: embeddings are supplied by the
//! script, every step is checked and replayed, and the `invariant_r` bit is
//! tracked along the way.

mod builder;
mod bundled;
mod embedding;
mod script;
mod twins;

pub use builder::ScriptBuilder;
pub use bundled::{bundled, bundled_names, bundled_text};
pub use embedding::{infer_boundary, rewrite, validate_embedding, Embedding, Rejection};
pub use script::{
    apply_step, check_derivation, check_derivation_with_tol, Applied, DerivationReport, Direction, LedgerEntry, Script,
    Step, Verdict, DEFAULT_TOL, TWINS,
};
pub use twins::{local_instance, merge_twins};

use zx_interp::InterpError;
use zx_rules::RuleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DeriveError {
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("rule {rule} is not in {ruleset} and is not an imported lemma")]
    NotInRuleset { rule: String, ruleset: &'static str },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("{0}")]
    Embedding(#[from] Rejection),
    #[error("imported rule {rule} fails on this instance: {witness}")]
    Unsound { rule: String, witness: String },
    #[error("{0}")]
    Twins(String),
    #[error("{0}")]
    Names(String),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("script format: {0}")]
    Format(String),
}
