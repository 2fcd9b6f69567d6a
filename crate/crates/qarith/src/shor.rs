//! The full `f(x1, x2) = x1 G - x2 P` circuit with semiclassical index
//! registers, and its resource count at arbitrary sizes.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use ecc::{secp256k1, AffinePoint, CurveParams};
use num_bigint::BigUint;
use numtheory::{largest_prime_below_pow2, mont_encode, ModulusContext};
use revsim::{Circuit, Counter, GateCounts, GateSink, Note, QRegister};

use crate::ec::{ec_add_lookup, ec_add_tables, window_layout, EcRegisters, PointAccess};
use crate::{QarithError, Result};

/// Largest field size accepted by [`build_shor_f`].
pub const MAX_BUILD_BITS: usize = 16;

/// Problem instance: curve, target point `P` and the initial accumulator
/// point `P0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorInstance {
    pub curve: CurveParams,
    pub target: AffinePoint,
    pub initial: AffinePoint,
}

/// Wires and input/measurement indices of a built circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorLayout {
    /// Accumulator `x` coordinate in Montgomery form.
    pub x: QRegister,
    /// Accumulator `y` coordinate in Montgomery form.
    pub y: QRegister,
    /// Scalar width of each of `x1` and `x2`.
    pub n_e: usize,
    /// Windows `(start, width)` of each scalar.
    pub windows: Vec<(usize, usize)>,
}

fn domain(e: impl std::fmt::Display) -> QarithError {
    QarithError::Domain(e.to_string())
}

/// Builds the circuit. Index bits are read with `Input` events numbered
/// `0..n_e` for `x1` and `n_e..2 n_e` for `x2`, used by one lookup-addition
/// and measured under the same number. The accumulator starts at `P0`.
pub fn build_shor_f<S: GateSink>(c: &mut Circuit<S>, inst: &ShorInstance, w_e: usize, w_m: usize) -> Result<ShorLayout> {
    let curve = &inst.curve;
    let ctx = ModulusContext::new(curve.p.clone()).map_err(domain)?;
    let n = ctx.n();
    if n > MAX_BUILD_BITS {
        return Err(QarithError::Refused(format!("{n}-bit field exceeds the {MAX_BUILD_BITS}-bit build limit")));
    }
    let n_e = curve.r.bits() as usize;
    if w_e == 0 || w_e > n_e {
        return Err(domain(format!("w_e = {w_e} outside [1, {n_e}]")));
    }
    let x = c.alloc_reg(n);
    let y = c.alloc_reg(n);
    for (reg, v) in [(&x, &inst.initial.x), (&y, &inst.initial.y)] {
        let enc = mont_encode(v, &ctx).map_err(domain)?;
        for i in 0..n {
            if enc.bit(i as u64) {
                c.x(reg.bit(i));
            }
        }
    }
    let windows = window_layout(n_e, w_e);
    let minus_p = curve.negate(&inst.target);
    for (scalar, base) in [(0usize, &curve.g), (1, &minus_p)] {
        for &(s, wj) in &windows {
            let shifted = ecc::ec_scalar_mul(&(BigUint::from(1u32) << s), base, curve).map_err(domain)?;
            let tables = ec_add_tables(curve, &shifted, wj)?;
            let first = (scalar * n_e + s) as u32;
            let index: Vec<_> = (0..wj as u32).map(|i| c.input(first + i)).collect();
            let index = QRegister::new(index);
            let regs = EcRegisters { index: index.clone(), x: x.clone(), y: y.clone() };
            ec_add_lookup(c, &ctx, w_m, &regs, &PointAccess::Tables(tables))?;
            c.note(Note::SemiclassicalQft { bits: wj as u32 });
            for (i, w) in index.iter().enumerate() {
                c.measure(w, first + i as u32);
            }
        }
    }
    Ok(ShorLayout { x, y, n_e, windows })
}

/// Field modulus used for counts at `n` bits: the secp256k1 prime at 256
/// bits, otherwise the largest prime below `2^n`.
pub fn shor_curve_for_bits(n: usize) -> BigUint {
    if n == 256 {
        secp256k1().p
    } else {
        largest_prime_below_pow2(n)
    }
}

/// Counts of one lookup-addition block with an index of width `w`.
fn block_counts(n: usize, w: usize, w_m: usize) -> Result<GateCounts> {
    type Key = (usize, usize, usize);
    static CACHE: OnceLock<Mutex<HashMap<Key, GateCounts>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("count cache poisoned").get(&(n, w, w_m)) {
        return Ok(*hit);
    }
    let ctx = ModulusContext::new(shor_curve_for_bits(n)).map_err(domain)?;
    let mut c = Circuit::new(Counter::new());
    let x = c.alloc_reg(n);
    let y = c.alloc_reg(n);
    let index = QRegister::new((0..w as u32).map(|i| c.input(i)).collect());
    let regs = EcRegisters { index: index.clone(), x, y };
    ec_add_lookup(&mut c, &ctx, w_m, &regs, &PointAccess::Estimated)?;
    c.note(Note::SemiclassicalQft { bits: w as u32 });
    for (i, wire) in index.iter().enumerate() {
        c.measure(wire, i as u32);
    }
    let counts = c.sink().counts();
    cache.lock().expect("count cache poisoned").insert((n, w, w_m), counts);
    Ok(counts)
}

/// Gate counts of the full circuit on an `n`-bit field with scalars of `n`
/// bits, windows of width `w_e` and Montgomery windows of width `w_m`.
/// Lookups are charged in closed form with average-weight entries.
pub fn count_shor(n: usize, w_e: usize, w_m: usize) -> Result<GateCounts> {
    count_shor_with(n, n, w_e, w_m)
}

/// As [`count_shor`] with an explicit scalar width `n_e`.
pub fn count_shor_with(n: usize, n_e: usize, w_e: usize, w_m: usize) -> Result<GateCounts> {
    if n < 3 {
        return Err(domain(format!("field size {n} too small")));
    }
    if w_m == 0 || w_m > n {
        return Err(domain(format!("w_m = {w_m} outside [1, {n}]")));
    }
    if w_e == 0 || w_e > n_e {
        return Err(domain(format!("w_e = {w_e} outside [1, {n_e}]")));
    }
    let mut total = GateCounts::default();
    for (_, wj) in window_layout(n_e, w_e) {
        total += block_counts(n, wj, w_m)?.scaled(2);
    }
    Ok(total)
}
