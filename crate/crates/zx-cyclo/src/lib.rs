//! Exact cyclotomic arithmetic.
//!
//! Elements of `Q(zeta_M)` are kept reduced modulo the `M`-th cyclotomic
//! polynomial, so equality is coefficient equality once two scalars are
//! lifted to a common modulus. Every modulus used here is a multiple of 8,
//! which puts `sqrt(2) = zeta_8 + zeta_8^7` inside the field.

mod poly;
mod scalar;
mod solve;

pub use poly::{cyclotomic_polynomial, lcm, totient};
pub use scalar::{common_modulus, root_of_unity, sqrt_two, CycloScalar};
pub use solve::{membership_solve, Membership};

pub use num::{BigInt, BigRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("modulus {0} is not a positive multiple of 8")]
    ModulusNotMultipleOf8(u32),
    #[error("{divisor} does not divide modulus {modulus}")]
    NotDivisible { divisor: u32, modulus: u32 },
}
