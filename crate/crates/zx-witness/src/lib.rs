//! Mechanised witnesses: invariant separation of (E), the sqrt 2 membership
//! table, necessity of the prime supplementarity rules under angle scaling,
//! and the numerics behind the incompleteness of the general calculus.

mod report;
mod separation;
mod sqrt2;
mod supnec;
mod thm2;

pub use report::{SubCheck, WitnessReport};
pub use separation::{separation, witness_e_independence, Separation};
pub use sqrt2::{sqrt2_membership, witness_sqrt2};
pub use supnec::{is_prime, witness_sup_necessity, SupConfig};
pub use thm2::{d1, d2, find_alpha_solutions, plug, quartic_at, witness_theorem2, Thm2Constants, QUARTIC_AT_TEN};

use zx_cyclo::CycloError;
use zx_interp::InterpError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("bad witness input: {0}")]
    Input(String),
}
