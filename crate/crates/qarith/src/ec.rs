//! Elliptic-curve point addition with a looked-up addend, and windowed
//! scalar multiplication built from it. Coordinates are held in Montgomery
//! form and only the generic case of the addition law is implemented.

use ecc::{ec_add, ec_scalar_mul, AffinePoint, CurveParams};
use num_bigint::BigUint;
use num_traits::One;
use numtheory::{mont_encode, ModulusContext};
use revsim::{Circuit, GateSink, QRegister, Wire};

use crate::constant::{const_add, const_sub};
use crate::division::mod_div;
use crate::lookup::{build_lookup, lookup_closed_form, LookupMode, LookupTable};
use crate::modular::{ctrl_negate_nonzero, mod_add, mod_negate, mod_sub};
use crate::montgomery::{mont_mul_clean, mont_square_subtract};
use crate::{check_width, QarithError, Result};

/// Tables for one window: `T[j] = j P'` for `j >= 1` and `T[0] = 2^h P'`
/// where `h` is the window width minus one, as `(x, y)` pairs and as `3x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcAddTables {
    pub xy: LookupTable,
    pub three_x: LookupTable,
}

/// Source of the addend coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointAccess {
    /// Exact classical tables.
    Tables(EcAddTables),
    /// Lookups charged in closed form with half of the value bits set on
    /// average; used for resource counts at cryptographic sizes.
    Estimated,
}

/// Index and accumulator registers of a lookup-addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcRegisters {
    pub index: QRegister,
    pub x: QRegister,
    pub y: QRegister,
}

/// Builds the tables for a window of width `w >= 1` over the base `p_base`.
pub fn ec_add_tables(curve: &CurveParams, p_base: &AffinePoint, w: usize) -> Result<EcAddTables> {
    if w == 0 {
        return Err(QarithError::Domain("window width must be positive".into()));
    }
    let ctx = ModulusContext::new(curve.p.clone()).map_err(|e| QarithError::Domain(e.to_string()))?;
    let n = ctx.n();
    let h = w - 1;
    let mut xy = Vec::with_capacity(1 << h);
    let mut three_x = Vec::with_capacity(1 << h);
    for j in 0..1u64 << h {
        let mult = if j == 0 { BigUint::one() << h } else { BigUint::from(j) };
        let pt = ec_scalar_mul(&mult, p_base, curve).map_err(|e| QarithError::Domain(e.to_string()))?;
        if pt.at_infinity {
            return Err(QarithError::Domain(format!("table entry {j} is the neutral element")));
        }
        let enc = |v: &BigUint| mont_encode(v, &ctx).expect("coordinate below p");
        let (x, y) = (enc(&pt.x), enc(&pt.y));
        three_x.push((BigUint::from(3u32) * &x) % ctx.p());
        xy.push(x + (y << n));
    }
    Ok(EcAddTables {
        xy: LookupTable::new(h, 2 * n, xy).map_err(|e| QarithError::Domain(e.to_string()))?,
        three_x: LookupTable::new(h, n, three_x).map_err(|e| QarithError::Domain(e.to_string()))?,
    })
}

fn with_inverted<S: GateSink, R>(c: &mut Circuit<S>, w: Wire, f: impl FnOnce(&mut Circuit<S>) -> R) -> R {
    c.x(w);
    let out = f(c);
    c.x(w);
    out
}

/// Maps the low bits to `-low mod 2^h` when the most significant index bit
/// is zero, so that they address the table of positive multiples.
fn fold_index<S: GateSink>(c: &mut Circuit<S>, index: &QRegister) -> Result<()> {
    let h = index.len() - 1;
    if h == 0 {
        return Ok(());
    }
    let low = index.slice(0..h);
    with_inverted(c, index.msb(), |c| {
        for w in low.iter() {
            c.cnot(index.msb(), w);
        }
        const_add(c, &low, &BigUint::one(), Some(index.msb()))
    })
}

fn unfold_index<S: GateSink>(c: &mut Circuit<S>, index: &QRegister) -> Result<()> {
    let h = index.len() - 1;
    if h == 0 {
        return Ok(());
    }
    let low = index.slice(0..h);
    with_inverted(c, index.msb(), |c| {
        const_sub(c, &low, &BigUint::one(), Some(index.msb()))?;
        for w in low.iter() {
            c.cnot(index.msb(), w);
        }
        Ok(())
    })
}

struct Addend<'a> {
    ctx: &'a ModulusContext,
    access: &'a PointAccess,
    index: &'a QRegister,
}

impl Addend<'_> {
    fn low(&self) -> QRegister {
        self.index.slice(0..self.index.len() - 1)
    }

    fn lookup<S: GateSink>(&self, c: &mut Circuit<S>, coords: bool, target: &QRegister, mode: LookupMode) -> Result<()> {
        match self.access {
            PointAccess::Tables(t) => {
                let table = if coords { &t.xy } else { &t.three_x };
                build_lookup(c, table, &self.low(), target, mode)
            }
            PointAccess::Estimated => {
                let h = self.index.len() - 1;
                let entries = 1u64 << h;
                lookup_closed_form(c, h, entries, entries * target.len() as u64 / 2, mode);
                Ok(())
            }
        }
    }

    /// Loads `(x, y)` of the signed multiple into `(tx, ty)`.
    fn load_point<S: GateSink>(&self, c: &mut Circuit<S>, tx: &QRegister, ty: &QRegister) -> Result<()> {
        self.lookup(c, true, &tx.concat(ty), LookupMode::Load)?;
        let msb = self.index.msb();
        with_inverted(c, msb, |c| ctrl_negate_nonzero(c, self.ctx, msb, ty))
    }

    fn unload_point<S: GateSink>(&self, c: &mut Circuit<S>, tx: &QRegister, ty: &QRegister) -> Result<()> {
        let msb = self.index.msb();
        with_inverted(c, msb, |c| ctrl_negate_nonzero(c, self.ctx, msb, ty))?;
        self.lookup(c, true, &tx.concat(ty), LookupMode::Unload)
    }

    /// `Q -> Q - P` coordinate-wise.
    fn subtract_point<S: GateSink>(&self, c: &mut Circuit<S>, regs: &EcRegisters) -> Result<()> {
        let n = self.ctx.n();
        let tx = c.alloc_reg(n);
        let ty = c.alloc_reg(n);
        self.load_point(c, &tx, &ty)?;
        mod_sub(c, self.ctx, &tx, &regs.x)?;
        mod_sub(c, self.ctx, &ty, &regs.y)?;
        self.unload_point(c, &tx, &ty)?;
        c.free_reg(&ty);
        c.free_reg(&tx);
        Ok(())
    }
}

/// `|i>|Q> -> |i>|Q + (i - 2^(w-1)) P'>` for generic inputs, where the
/// accumulator holds Montgomery-form coordinates and `w` is the index width.
pub fn ec_add_lookup<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    w_m: usize,
    regs: &EcRegisters,
    access: &PointAccess,
) -> Result<()> {
    let n = ctx.n();
    check_width("accumulator x", regs.x.len(), n)?;
    check_width("accumulator y", regs.y.len(), n)?;
    if regs.index.is_empty() {
        return Err(QarithError::Width("empty index register".into()));
    }
    if let PointAccess::Tables(t) = access {
        check_width("table address", t.xy.address_width(), regs.index.len() - 1)?;
        check_width("table value", t.xy.value_width(), 2 * n)?;
    }
    let add = Addend { ctx, access, index: &regs.index };
    fold_index(c, &regs.index)?;
    add.subtract_point(c, regs)?;
    let lambda = c.alloc_reg(n);
    mod_div(c, ctx, w_m, &regs.x, &regs.y, &lambda, None)?;
    mont_mul_clean(c, ctx, w_m, &lambda, &regs.x, &regs.y)?;
    let tx = c.alloc_reg(n);
    add.lookup(c, false, &tx, LookupMode::Load)?;
    mod_add(c, ctx, &tx, &regs.x)?;
    add.lookup(c, false, &tx, LookupMode::Unload)?;
    c.free_reg(&tx);
    mont_square_subtract(c, ctx, w_m, &lambda, &regs.x)?;
    mont_mul_clean(c, ctx, w_m, &lambda, &regs.x, &regs.y)?;
    mod_div(c, ctx, w_m, &regs.x, &regs.y, &lambda, None)?;
    c.free_reg(&lambda);
    add.subtract_point(c, regs)?;
    mod_negate(c, ctx, &regs.x)?;
    unfold_index(c, &regs.index)
}

/// Builds the tables for `p_base` and applies [`ec_add_lookup`].
pub fn build_ec_add_lookup<S: GateSink>(
    c: &mut Circuit<S>,
    curve: &CurveParams,
    w_m: usize,
    p_base: &AffinePoint,
    regs: &EcRegisters,
) -> Result<()> {
    let ctx = ModulusContext::new(curve.p.clone()).map_err(|e| QarithError::Domain(e.to_string()))?;
    let tables = ec_add_tables(curve, p_base, regs.index.len())?;
    ec_add_lookup(c, &ctx, w_m, regs, &PointAccess::Tables(tables))
}

/// Windows `(start, width)` covering `n_e` scalar bits with width `w_e`;
/// the last window is narrower when `w_e` does not divide `n_e`.
pub fn window_layout(n_e: usize, w_e: usize) -> Vec<(usize, usize)> {
    assert!(w_e >= 1, "window width must be positive");
    (0..n_e).step_by(w_e).map(|s| (s, w_e.min(n_e - s))).collect()
}

/// Translation `-sum_j 2^(w_j - 1) 2^(s_j) P` accumulated by the signed
/// index encoding over the windows of [`window_layout`].
pub fn scalar_mul_offset(curve: &CurveParams, base: &AffinePoint, n_e: usize, w_e: usize) -> Result<AffinePoint> {
    let mut sum = BigUint::default();
    for (s, wj) in window_layout(n_e, w_e) {
        sum += BigUint::one() << (s + wj - 1);
    }
    let pos = ec_scalar_mul(&sum, base, curve).map_err(|e| QarithError::Domain(e.to_string()))?;
    Ok(curve.negate(&pos))
}

/// `|k>|Q> -> |k>|Q + k P + offset>` via one lookup-addition per window.
pub fn build_ec_scalar_mul<S: GateSink>(
    c: &mut Circuit<S>,
    curve: &CurveParams,
    w_e: usize,
    w_m: usize,
    base: &AffinePoint,
    scalar: &QRegister,
    x: &QRegister,
    y: &QRegister,
) -> Result<()> {
    let n_e = scalar.len();
    if w_e == 0 || w_e > n_e {
        return Err(QarithError::Domain(format!("w_e = {w_e} outside [1, {n_e}]")));
    }
    let ctx = ModulusContext::new(curve.p.clone()).map_err(|e| QarithError::Domain(e.to_string()))?;
    for (s, wj) in window_layout(n_e, w_e) {
        let shifted = ec_scalar_mul(&(BigUint::one() << s), base, curve).map_err(|e| QarithError::Domain(e.to_string()))?;
        let tables = ec_add_tables(curve, &shifted, wj)?;
        let regs = EcRegisters { index: scalar.slice(s..s + wj), x: x.clone(), y: y.clone() };
        ec_add_lookup(c, &ctx, w_m, &regs, &PointAccess::Tables(tables))?;
    }
    Ok(())
}

/// Classical reference for one lookup-addition; `None` marks the
/// exceptional cases outside the circuit's contract.
pub fn ec_add_lookup_reference(
    curve: &CurveParams,
    p_base: &AffinePoint,
    w: usize,
    index: u64,
    q: &AffinePoint,
) -> Option<AffinePoint> {
    let h = w - 1;
    if q.at_infinity || index == 1 << h {
        return None;
    }
    let k = index as i64 - (1i64 << h);
    let mult = ec_scalar_mul(&BigUint::from(k.unsigned_abs()), p_base, curve).ok()?;
    let addend = if k < 0 { curve.negate(&mult) } else { mult };
    if addend.x == q.x {
        return None;
    }
    let sum = ec_add(q, &addend, curve).ok()?;
    if sum.at_infinity || sum.x == addend.x {
        return None;
    }
    Some(sum)
}
