//! Reversible arithmetic circuit builders.
//!
//! Every builder takes a [`revsim::Circuit`] and register handles, emits gate
//! events and returns output registers. Builders never look at register
//! values, so the same call produces the same stream on every sink; values
//! only exist inside a [`revsim::Simulator`].
//!
//! Registers are little-endian. Unless stated otherwise a builder leaves every
//! ancilla it allocates released and zero.

mod adder;
mod constant;
mod division;
mod ec;
mod kaliski;
mod lookup;
mod mcx;
mod modular;
mod montgomery;
mod shor;

pub use adder::{
    add_into, build_adder, build_ctrl_adder, compare_uncompute, sub_into, with_less_than, AdderVariant,
};
pub use constant::{build_const_arith, const_add, const_compare_geq, const_sub, ConstOp};
pub use division::{build_mod_div, mod_div};
pub use ec::{
    build_ec_add_lookup, build_ec_scalar_mul, ec_add_lookup, ec_add_lookup_reference, ec_add_tables, scalar_mul_offset,
    window_layout, EcAddTables, EcRegisters, PointAccess,
};
pub use kaliski::{build_kaliski_step, kaliski_step, mod_inverse, release_inverse, InverseRegisters, KaliskiRegisters};
pub use lookup::{build_lookup, lookup_closed_form, LookupMode, LookupTable};
pub use mcx::build_multi_ctrl_not;
pub use modular::{
    build_mod_add, build_mod_double, build_mod_reduce, ctrl_negate_nonzero, mod_add, mod_double, mod_negate,
    mod_reduce, mod_sub, ReduceVariant,
};
pub use montgomery::{
    build_mont_mul, mont_mul_clean, mont_mul_dirty, mont_square_clean, mont_square_dirty, mont_square_subtract,
    montgomery_table, DirtyProduct, MontKind,
};
pub use shor::{build_shor_f, count_shor, count_shor_with, shor_curve_for_bits, ShorInstance, ShorLayout, MAX_BUILD_BITS};

use numtheory::Natural;

/// Errors reported by builders before any event is emitted.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QarithError {
    /// Operand registers do not have the required widths.
    #[error("width mismatch: {0}")]
    Width(String),
    /// A classical parameter is out of range.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested build exceeds the resource guard.
    #[error("build refused: {0}")]
    Refused(String),
}

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, QarithError>;

/// Window widths of the scalar multiplication (`w_e`) and of the Montgomery
/// multiplication (`w_m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowParams {
    pub w_e: usize,
    pub w_m: usize,
}

impl WindowParams {
    /// Validates `1 <= w_m <= n` and `1 <= w_e <= n_e`.
    pub fn new(w_e: usize, w_m: usize, n: usize, n_e: usize) -> Result<Self> {
        if w_m == 0 || w_m > n {
            return Err(QarithError::Domain(format!("w_m = {w_m} outside [1, {n}]")));
        }
        if w_e == 0 || w_e > n_e {
            return Err(QarithError::Domain(format!("w_e = {w_e} outside [1, {n_e}]")));
        }
        Ok(Self { w_e, w_m })
    }
}

pub(crate) fn bit(k: &Natural, i: usize) -> bool {
    k.bit(i as u64)
}

pub(crate) fn check_width(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(QarithError::Width(format!("{what}: expected {want} wires, got {got}")));
    }
    Ok(())
}
