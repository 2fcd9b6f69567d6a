//! Arithmetic modulo an odd prime `p` on `n`-bit registers: reductions,
//! addition, subtraction, doubling and negation.

use num_bigint::BigUint;
use num_traits::One;
use numtheory::ModulusContext;
use revsim::{Circuit, Ctrl, GateSink, QRegister, Wire};

use crate::adder::{add_core, compare_uncompute};
use crate::constant::{const_add, const_add_general, const_compare_geq, const_sub};
use crate::mcx::mcx;
use crate::{bit, check_width, Result};

/// Implementation of the reduction of `z < 2p` to `z mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReduceVariant {
    /// Subtract `p`, copy the sign, add `p` back when negative.
    V1,
    /// Compare against `p`, then subtract `p` under control.
    V2,
    /// One semiclassical addition of `2^(n+1) - p` whose carry-out is also
    /// its control.
    #[default]
    V3,
}

/// Reduces the `n + 1`-wire register `z` (holding `z < 2p`) in place and
/// XORs the quotient bit `z >= p` into `out`.
pub fn mod_reduce<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    z: &QRegister,
    out: Wire,
    variant: ReduceVariant,
) -> Result<()> {
    let n = ctx.n();
    check_width("reduction register", z.len(), n + 1)?;
    let p = ctx.p();
    let full = BigUint::one() << (n + 1);
    match variant {
        ReduceVariant::V3 => {
            let k = &full - p;
            const_add_general(c, z.wires(), &k, Some(out), Some(out), true);
        }
        ReduceVariant::V1 => {
            const_sub(c, z, p, None)?;
            c.cnot(z.msb(), out);
            const_add(c, z, p, Some(out))?;
            c.x(out);
        }
        ReduceVariant::V2 => {
            const_compare_geq(c, z, p, out)?;
            let k = &full - p;
            const_add(c, z, &k, Some(out))?;
        }
    }
    Ok(())
}

/// Allocates the quotient wire, reduces `z` and returns the wire.
pub fn build_mod_reduce<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    z: &QRegister,
    variant: ReduceVariant,
) -> Result<Wire> {
    check_width("reduction register", z.len(), ctx.n() + 1)?;
    let out = c.alloc();
    mod_reduce(c, ctx, z, out, variant)?;
    Ok(out)
}

/// `|x>|y> -> |x>|x + y mod p>` with every ancilla restored.
pub fn mod_add<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, x: &QRegister, y: &QRegister) -> Result<()> {
    let n = ctx.n();
    check_width("mod_add x", x.len(), n)?;
    check_width("mod_add y", y.len(), n)?;
    let top = c.alloc();
    add_core(c, x.wires(), y.wires(), None, Some(top), None);
    let quotient = c.alloc();
    mod_reduce(c, ctx, &y.with_msb(top), quotient, ReduceVariant::V3)?;
    compare_uncompute(c, x, y, quotient)?;
    c.free(quotient);
    c.free(top);
    Ok(())
}

/// Same as [`mod_add`]; kept under the builder naming of the other modules.
pub fn build_mod_add<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, x: &QRegister, y: &QRegister) -> Result<()> {
    mod_add(c, ctx, x, y)
}

/// `|x>|y> -> |x>|y - x mod p>`, emitted as the exact inverse of [`mod_add`].
pub fn mod_sub<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, x: &QRegister, y: &QRegister) -> Result<()> {
    check_width("mod_sub x", x.len(), ctx.n())?;
    check_width("mod_sub y", y.len(), ctx.n())?;
    c.inverse_of(|c| mod_add(c, ctx, x, y))
}

/// `|r> -> |2r mod p>`. The result occupies a rotated set of wires: a fresh
/// least significant wire is prepended and the old most significant wire is
/// released. `quotient` optionally names a zero wire to use as the
/// reduction flag; otherwise one is allocated.
pub fn mod_double<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    r: &QRegister,
    quotient: Option<Wire>,
) -> Result<QRegister> {
    let n = ctx.n();
    check_width("mod_double", r.len(), n)?;
    let low = c.alloc();
    let z = r.with_lsb(low);
    let flag = quotient.unwrap_or_else(|| c.alloc());
    mod_reduce(c, ctx, &z, flag, ReduceVariant::V3)?;
    c.cnot(z.bit(0), flag);
    if quotient.is_none() {
        c.free(flag);
    }
    c.free(z.msb());
    Ok(z.slice(0..n))
}

/// Same as [`mod_double`] with an internally allocated flag.
pub fn build_mod_double<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, r: &QRegister) -> Result<QRegister> {
    mod_double(c, ctx, r, None)
}

/// Flips every bit of `z` then adds `p + 1` modulo `2^n`, conditioned on
/// `ctrl`: maps `z` to `p - z` for `z != 0` and leaves `0` at `p`.
pub(crate) fn negate_raw<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, z: &QRegister, ctrl: Option<Wire>) -> Result<()> {
    let n = ctx.n();
    for w in z.iter() {
        match ctrl {
            None => c.x(w),
            Some(t) => c.cnot(t, w),
        }
    }
    let k = (ctx.p() + 1u32) % (BigUint::one() << n);
    const_add(c, z, &k, ctrl)
}

/// `|z> -> |p - z>` iff `ctrl`, valid for `0 < z < p`.
pub fn ctrl_negate_nonzero<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, ctrl: Wire, z: &QRegister) -> Result<()> {
    check_width("negation", z.len(), ctx.n())?;
    negate_raw(c, ctx, z, Some(ctrl))
}

/// `|z> -> |-z mod p>` for every `z < p`, including zero.
pub fn mod_negate<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, z: &QRegister) -> Result<()> {
    let n = ctx.n();
    check_width("negation", z.len(), n)?;
    negate_raw(c, ctx, z, None)?;
    let p = ctx.p();
    let is_p: Vec<Ctrl> = (0..n).map(|i| Ctrl { wire: z.bit(i), positive: bit(p, i) }).collect();
    let t = c.alloc();
    mcx(c, &is_p, t);
    let targets: Vec<Wire> = (0..n).filter(|&i| bit(p, i)).map(|i| z.bit(i)).collect();
    c.multi_cnot(t, &targets);
    let is_zero: Vec<Ctrl> = z.iter().map(Ctrl::neg).collect();
    mcx(c, &is_zero, t);
    c.free(t);
    Ok(())
}
