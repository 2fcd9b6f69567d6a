//! Windowed Montgomery multiplication `x * y * 2^-n mod p`, interleaving the
//! schoolbook product with a table-driven division by `2^w` per window.

use num_bigint::BigUint;
use num_traits::One;
use numtheory::{mod_inverse, ModulusContext};
use revsim::{Circuit, GateSink, QRegister, Wire};

use crate::adder::add_core;
use crate::lookup::{build_lookup, LookupMode, LookupTable};
use crate::modular::{mod_reduce, mod_sub, ReduceVariant};
use crate::{check_width, QarithError, Result};

/// Variant selected by [`build_mont_mul`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MontKind {
    /// Product plus garbage.
    Dirty,
    /// Product with garbage uncomputed.
    Clean,
    /// Square of one input, garbage uncomputed.
    Square,
    /// Subtracts the square of one input from a supplied register.
    SquareSubtract,
}

/// Output of a dirty multiplication: the product register and the garbage
/// left behind (window digits and the final reduction bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirtyProduct {
    pub result: QRegister,
    pub garbage: QRegister,
}

/// Table `T[g] = ((-g * p^-1) mod 2^w) * p` addressed by the low `w` bits of
/// the accumulator.
pub fn montgomery_table(ctx: &ModulusContext, w: usize) -> LookupTable {
    let p = ctx.p();
    let modulus = BigUint::one() << w;
    let p_inv = mod_inverse(&(p % &modulus), &modulus).expect("odd modulus is invertible modulo a power of two");
    let entries = (0..1u64 << w)
        .map(|g| {
            let m = (&modulus - (BigUint::from(g) * &p_inv) % &modulus) % &modulus;
            m * p
        })
        .collect();
    LookupTable::new(w, ctx.n() + w, entries).expect("table entries fit by construction")
}

fn windows(n: usize, w: usize) -> Vec<(usize, usize)> {
    (0..n).step_by(w).map(|start| (start, w.min(n - start))).collect()
}

fn check_window(n: usize, w: usize) -> Result<()> {
    if w == 0 || w > n {
        return Err(QarithError::Domain(format!("window width {w} outside [1, {n}]")));
    }
    Ok(())
}

/// Shared body of the dirty product. `y_bits(c, start, width)` returns the
/// wires to use as multiplier bits for one window and `y_release` undoes any
/// preparation it did.
fn dirty_core<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
    y_bits: &mut dyn FnMut(&mut Circuit<S>, usize, usize) -> Vec<Wire>,
    y_release: &mut dyn FnMut(&mut Circuit<S>, usize, &[Wire]),
) -> Result<DirtyProduct> {
    let n = ctx.n();
    check_window(n, w)?;
    check_width("multiplicand", x.len(), n)?;
    let mut t = c.alloc_reg(n + w + 1);
    let mut garbage = Vec::with_capacity(n + 1);
    for (start, wi) in windows(n, w) {
        let ctl = y_bits(c, start, wi);
        for (j, &yb) in ctl.iter().enumerate() {
            let ts = t.wires();
            add_core(c, x.wires(), &ts[j..j + n], Some(ts[j + n]), Some(ts[j + n + 1]), Some(yb));
        }
        y_release(c, start, &ctl);
        let g = c.alloc_reg(wi);
        for i in 0..wi {
            c.cnot(t.bit(i), g.bit(i));
        }
        let table = montgomery_table(ctx, wi);
        let tv = c.alloc_reg(n + wi);
        build_lookup(c, &table, &g, &tv, LookupMode::Load)?;
        let ts = t.wires();
        add_core(c, tv.wires(), &ts[0..n + wi], Some(ts[n + wi]), None, None);
        build_lookup(c, &table, &g, &tv, LookupMode::Unload)?;
        c.free_reg(&tv);
        garbage.extend(g.iter());
        t = t.slice(wi..t.len()).concat(&t.slice(0..wi));
    }
    let quotient = c.alloc();
    mod_reduce(c, ctx, &t.slice(0..n + 1), quotient, ReduceVariant::V3)?;
    garbage.push(quotient);
    c.free_reg(&t.slice(n..t.len()));
    Ok(DirtyProduct { result: t.slice(0..n), garbage: QRegister::new(garbage) })
}

/// `|x>|y> -> |x>|y>|x y 2^-n mod p>|garbage>`.
pub fn mont_mul_dirty<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
    y: &QRegister,
) -> Result<DirtyProduct> {
    check_width("multiplier", y.len(), ctx.n())?;
    let mut bits = |_: &mut Circuit<S>, start: usize, wi: usize| y.wires()[start..start + wi].to_vec();
    let mut release = |_: &mut Circuit<S>, _: usize, _: &[Wire]| {};
    dirty_core(c, ctx, w, x, &mut bits, &mut release)
}

/// `|x> -> |x>|x^2 2^-n mod p>|garbage>`; multiplier bits are copied to
/// fresh wires per window.
pub fn mont_square_dirty<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
) -> Result<DirtyProduct> {
    let mut bits = |c: &mut Circuit<S>, start: usize, wi: usize| {
        (start..start + wi)
            .map(|i| {
                let copy = c.alloc();
                c.cnot(x.bit(i), copy);
                copy
            })
            .collect()
    };
    let mut release = |c: &mut Circuit<S>, start: usize, copies: &[Wire]| {
        for (k, &copy) in copies.iter().enumerate().rev() {
            c.cnot(x.bit(start + k), copy);
            c.free(copy);
        }
    };
    dirty_core(c, ctx, w, x, &mut bits, &mut release)
}

/// Runs `dirty`, XORs its result into `target` with `copy`, then emits the
/// inverse of `dirty`.
fn clean_with<S: GateSink>(
    c: &mut Circuit<S>,
    dirty: impl FnOnce(&mut Circuit<S>) -> Result<DirtyProduct>,
    copy: impl FnOnce(&mut Circuit<S>, &QRegister) -> Result<()>,
) -> Result<()> {
    let (prod, tape) = c.record(dirty);
    let prod = prod?;
    copy(c, &prod.result)?;
    c.replay_inverse(&tape);
    Ok(())
}

fn xor_into<S: GateSink>(c: &mut Circuit<S>, src: &QRegister, dst: &QRegister) {
    for (s, d) in src.iter().zip(dst.iter()) {
        c.cnot(s, d);
    }
}

/// `|x>|y>|t> -> |x>|y>|t ^ (x y 2^-n mod p)>` with no garbage.
pub fn mont_mul_clean<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
    y: &QRegister,
    target: &QRegister,
) -> Result<()> {
    check_width("product target", target.len(), ctx.n())?;
    clean_with(
        c,
        |c| mont_mul_dirty(c, ctx, w, x, y),
        |c, r| {
            xor_into(c, r, target);
            Ok(())
        },
    )
}

/// `|x>|t> -> |x>|t ^ (x^2 2^-n mod p)>` with no garbage.
pub fn mont_square_clean<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
    target: &QRegister,
) -> Result<()> {
    check_width("product target", target.len(), ctx.n())?;
    clean_with(
        c,
        |c| mont_square_dirty(c, ctx, w, x),
        |c, r| {
            xor_into(c, r, target);
            Ok(())
        },
    )
}

/// `|x>|t> -> |x>|t - x^2 2^-n mod p>` for `t < p`, with no garbage.
pub fn mont_square_subtract<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    x: &QRegister,
    target: &QRegister,
) -> Result<()> {
    check_width("subtraction target", target.len(), ctx.n())?;
    clean_with(c, |c| mont_square_dirty(c, ctx, w, x), |c, r| mod_sub(c, ctx, r, target))
}

/// Dispatches on [`MontKind`]. `y` is ignored by the squaring kinds;
/// `target` receives the product (XOR) or the subtraction. For
/// [`MontKind::Dirty`] the product register is returned and `target` is
/// unused.
pub fn build_mont_mul<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w: usize,
    kind: MontKind,
    x: &QRegister,
    y: &QRegister,
    target: &QRegister,
) -> Result<Option<DirtyProduct>> {
    match kind {
        MontKind::Dirty => mont_mul_dirty(c, ctx, w, x, y).map(Some),
        MontKind::Clean => mont_mul_clean(c, ctx, w, x, y, target).map(|_| None),
        MontKind::Square => mont_square_clean(c, ctx, w, x, target).map(|_| None),
        MontKind::SquareSubtract => mont_square_subtract(c, ctx, w, x, target).map(|_| None),
    }
}
