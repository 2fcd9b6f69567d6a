//! Reversible Kaliski inversion: `2n` identical iterations built from
//! conditional swaps, a controlled subtract/add pair, a halving by wire
//! relabeling and a modular doubling.

use num_bigint::BigUint;
use num_traits::One;
use numtheory::ModulusContext;
use revsim::{Circuit, Ctrl, GateSink, QRegister, Wire};

use crate::adder::{add_core, sub_core, with_less_than};
use crate::mcx::mcx;
use crate::modular::{mod_double, negate_raw};
use crate::{bit, check_width, Result};

/// Working registers of the inversion loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaliskiRegisters {
    pub u: QRegister,
    pub v: QRegister,
    pub r: QRegister,
    pub s: QRegister,
    pub f: Wire,
    pub a: Wire,
    pub b: Wire,
}

fn cswap_regs<S: GateSink>(c: &mut Circuit<S>, ctrl: Wire, x: &QRegister, y: &QRegister) {
    for (p, q) in x.iter().zip(y.iter()) {
        c.cswap(ctrl, p, q);
    }
}

/// Emits one iteration and returns the freshly allocated `m_i` wire, which
/// is left as garbage. `regs` is updated to the relabeled wires.
pub fn kaliski_step<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, regs: &mut KaliskiRegisters) -> Result<Wire> {
    let n = ctx.n();
    for (name, reg) in [("u", &regs.u), ("v", &regs.v), ("r", &regs.r), ("s", &regs.s)] {
        check_width(name, reg.len(), n)?;
    }
    let KaliskiRegisters { u, v, r, s, f, a, b } = regs.clone();

    let m = c.alloc();
    let mut stop: Vec<Ctrl> = v.iter().map(Ctrl::neg).collect();
    stop.push(Ctrl::pos(f));
    mcx(c, &stop, m);
    c.cnot(m, f);

    c.toffoli(f, Ctrl::neg(u.bit(0)), a);
    c.toffoli(f, u.bit(0), b);
    c.toffoli(b, Ctrl::neg(v.bit(0)), m);
    c.toffoli(f, u.bit(0), b);
    c.cnot(a, b);
    c.cnot(m, b);

    let t = c.alloc();
    c.toffoli(f, Ctrl::neg(b), t);
    with_less_than(c, &u, &v, |c, v_lt_u| {
        c.toffoli(t, v_lt_u, a);
        c.toffoli(t, v_lt_u, m);
    })?;

    cswap_regs(c, a, &u, &v);
    cswap_regs(c, a, &r, &s);
    sub_core(c, u.wires(), v.wires(), None, Some(t));
    add_core(c, r.wires(), s.wires(), None, None, Some(t));
    c.toffoli(f, Ctrl::neg(b), t);
    c.free(t);
    c.cnot(m, b);
    c.cnot(a, b);

    let v = v.slice(1..n).with_msb(v.bit(0));
    let r = mod_double(c, ctx, &r, Some(b))?;

    cswap_regs(c, a, &r, &s);
    cswap_regs(c, a, &u, &v);
    c.cnot(s.bit(0), a);
    c.x(a);

    *regs = KaliskiRegisters { u, v, r, s, f, a, b };
    Ok(m)
}

/// Builder-style alias of [`kaliski_step`].
pub fn build_kaliski_step<S: GateSink>(
    c: &mut Circuit<S>,
    ctx: &ModulusContext,
    regs: &mut KaliskiRegisters,
) -> Result<Wire> {
    kaliski_step(c, ctx, regs)
}

/// State left by [`mod_inverse`]: the loop registers (with `v = 0`,
/// `u = 1`, `s = p`, `f = 0`), the result register and the `2n` retained
/// `m_i` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseRegisters {
    pub loop_regs: KaliskiRegisters,
    pub garbage: QRegister,
}

impl InverseRegisters {
    /// Register holding `x^-1 2^(2n) mod p`.
    pub fn result(&self) -> &QRegister {
        &self.loop_regs.r
    }
}

fn set_const<S: GateSink>(c: &mut Circuit<S>, reg: &QRegister, k: &BigUint) {
    for i in 0..reg.len() {
        if bit(k, i) {
            c.x(reg.bit(i));
        }
    }
}

/// Runs the full inversion on `x` (`0 < x < p`), consuming it as `v`.
pub fn mod_inverse<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, x: &QRegister) -> Result<InverseRegisters> {
    let n = ctx.n();
    check_width("inversion input", x.len(), n)?;
    let u = c.alloc_reg(n);
    set_const(c, &u, ctx.p());
    let r = c.alloc_reg(n);
    let s = c.alloc_reg(n);
    c.x(s.bit(0));
    let f = c.alloc();
    c.x(f);
    let a = c.alloc();
    let b = c.alloc();
    let mut regs = KaliskiRegisters { u, v: x.clone(), r, s, f, a, b };
    let mut garbage = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        garbage.push(kaliski_step(c, ctx, &mut regs)?);
    }
    negate_raw(c, ctx, &regs.r, None)?;
    Ok(InverseRegisters { loop_regs: regs, garbage: QRegister::new(garbage) })
}

/// Releases the known-value loop registers after [`mod_inverse`]: `v`, `f`,
/// `a`, `b` are zero, `u = 1` and `s = p` are reset before release. The
/// result register and garbage stay live.
pub fn release_inverse<S: GateSink>(c: &mut Circuit<S>, ctx: &ModulusContext, inv: &InverseRegisters) {
    let KaliskiRegisters { u, v, s, f, a, b, .. } = &inv.loop_regs;
    c.free_reg(v);
    c.free(*a);
    c.free(*b);
    c.free(*f);
    set_const(c, u, &BigUint::one());
    c.free_reg(u);
    set_const(c, s, ctx.p());
    c.free_reg(s);
}
