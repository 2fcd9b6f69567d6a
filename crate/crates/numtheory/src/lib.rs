//! Classical number theory used as the reference oracle for every reversible
//! arithmetic circuit: modular contexts, Montgomery representation, the two
//! formulations of Kaliski's almost-inverse algorithm and primality helpers.
//!
//! All functions are pure and operate on arbitrary-precision naturals. Register
//! widths are carried by [`ModulusContext`] and never inferred from values.

mod kaliski;
mod modular;
mod prime;

pub use kaliski::{
    kaliski_oracle, kaliski_oracle_traced, kaliski_swaps_oracle, kaliski_swaps_traced,
    KaliskiState, KaliskiSwapStep, KaliskiSwapTrace, KaliskiTrace,
};
pub use modular::{mod_inverse, mont_decode, mont_encode, mont_mul_oracle, ModulusContext};
pub use prime::{is_probable_prime, largest_prime_below_pow2};

pub use num_bigint::BigUint;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Errors raised by the classical oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumTheoryError {
    /// The modulus is not an odd prime larger than two.
    #[error("invalid modulus {0}: expected an odd prime > 2")]
    InvalidModulus(Natural),
    /// An operand lies outside the range accepted by the operation.
    #[error("operand {value} outside [{lo}, {hi})")]
    Domain { value: Natural, lo: Natural, hi: Natural },
    /// A loop postcondition of the Kaliski iteration failed.
    #[error("kaliski postcondition violated: {0}")]
    Postcondition(&'static str),
}

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, NumTheoryError>;

/// Builds a [`Natural`] from a machine integer.
pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}
