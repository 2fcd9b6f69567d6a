//! Modular division as inversion, multiplication, copy and uncomputation.

use numtheory::ModulusContext;
use revsim::{Circuit, GateSink, QRegister, Wire};

use crate::kaliski::{mod_inverse, release_inverse};
use crate::montgomery::mont_mul_dirty;
use crate::{check_width, Result};

/// `|x>|y>|t> -> |x>|y>|t ^ (y x^-1 2^n mod p)>` for `x != 0`, conditioned
/// on `ctrl` when present. Every intermediate register is uncomputed.
pub fn mod_div<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w_m: usize,
    x: &QRegister,
    y: &QRegister,
    target: &QRegister,
    ctrl: Option<Wire>,
) -> Result<()> {
    let n = ctx.n();
    check_width("divisor", x.len(), n)?;
    check_width("dividend", y.len(), n)?;
    check_width("quotient target", target.len(), n)?;
    let (prod, tape) = c.record(|c| -> Result<QRegister> {
        let inv = mod_inverse(c, ctx, x)?;
        release_inverse(c, ctx, &inv);
        Ok(mont_mul_dirty(c, ctx, w_m, y, inv.result())?.result)
    });
    let prod = prod?;
    for (src, dst) in prod.iter().zip(target.iter()) {
        match ctrl {
            None => c.cnot(src, dst),
            Some(t) => c.toffoli(t, src, dst),
        }
    }
    c.replay_inverse(&tape);
    Ok(())
}

/// Builder-style alias of [`mod_div`] with an explicit control flag.
pub fn build_mod_div<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w_m: usize,
    x: &QRegister,
    y: &QRegister,
    target: &QRegister,
    ctrl: Option<Wire>,
) -> Result<()> {
    mod_div(c, ctx, w_m, x, y, target, ctrl)
}
