//! The standard interpretation of ZX-diagrams.
//!
//! Every node becomes a sparse tensor and the network is contracted
//! greedily. The exact backend computes over `Z[zeta_M]` and keeps the
//! `1/sqrt 2` normalisations as a separate count until the very end, so
//! entries only meet the field arithmetic once.

mod interpret;
mod invariant;
mod matrix;
mod ring;
mod tensor;

pub use interpret::{
    choose_modulus, compare_diagrams, compare_diagrams_with_cap, interpret, interpret_auto, interpret_with_cap,
    DEFAULT_RANK_CAP,
};
pub use invariant::{invariant_g, invariant_r};
pub use matrix::{format_complex, format_real, matrix_compare, Backend, Comparison, Scalar, SemanticMatrix};

use zx_core::Violation;
use zx_cyclo::CycloError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InterpError {
    #[error("invalid diagram: {0}")]
    Invalid(Violation),
    #[error("node {node} has a float phase; the exact backend needs rational multiples of pi")]
    FloatPhase { node: String },
    #[error("contraction needs a rank-{rank} tensor, above the limit of {limit}")]
    Resource { rank: usize, limit: usize },
    #[error("dimension mismatch: {left:?} vs {right:?} (outputs, inputs)")]
    Dimension { left: (usize, usize), right: (usize, usize) },
    #[error("cannot mix exact and float matrices here")]
    BackendMismatch,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}
