//! Ripple-carry adders built from MAJ and UMA blocks, their controlled forms
//! and the carry-based comparator.

use revsim::{Circuit, GateSink, QRegister, Wire};

use crate::{check_width, Result};

/// Output convention of [`build_adder`] and [`build_ctrl_adder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdderVariant {
    /// The target gains one wire and receives the full `n + 1`-bit sum.
    CarryOut,
    /// The sum is reduced modulo `2^n`.
    Mod2n,
}

fn maj<S: GateSink>(c: &mut Circuit<S>, prev: Wire, y: Wire, x: Wire) {
    c.cnot(x, y);
    c.cnot(x, prev);
    c.toffoli(prev, y, x);
}

fn maj_inverse<S: GateSink>(c: &mut Circuit<S>, prev: Wire, y: Wire, x: Wire) {
    c.toffoli(prev, y, x);
    c.cnot(x, prev);
    c.cnot(x, y);
}

fn uma<S: GateSink>(c: &mut Circuit<S>, prev: Wire, y: Wire, x: Wire, ctrl: Option<Wire>) {
    match ctrl {
        None => {
            c.toffoli(prev, y, x);
            c.cnot(x, prev);
            c.cnot(prev, y);
        }
        Some(t) => {
            c.toffoli(prev, y, x);
            c.cnot(x, y);
            c.toffoli(t, prev, y);
            c.cnot(x, prev);
        }
    }
}

/// Adds `x` into `y` (optionally extended by `y_ext` as bit `n`), XORs the
/// final carry into `carry_out`, all conditioned on `ctrl` when present.
///
/// Without `y_ext` and `carry_out` the sum is taken modulo `2^n`.
pub(crate) fn add_core<S: GateSink>(
    c: &mut Circuit<S>,
    x: &[Wire],
    y: &[Wire],
    y_ext: Option<Wire>,
    carry_out: Option<Wire>,
    ctrl: Option<Wire>,
) {
    let n = x.len();
    assert!(n >= 1 && y.len() == n, "adder operands must have equal nonzero width");
    let mod_case = y_ext.is_none() && carry_out.is_none();
    if n == 1 && mod_case {
        match ctrl {
            None => c.cnot(x[0], y[0]),
            Some(t) => c.toffoli(t, x[0], y[0]),
        }
        return;
    }
    let a = c.alloc();
    c.toffoli(x[0], y[0], a);
    let top = if mod_case { n - 2 } else { n - 1 };
    let prev = |k: usize| if k == 1 { a } else { x[k - 1] };
    for k in 1..=top {
        maj(c, prev(k), y[k], x[k]);
    }
    let cw = if top == 0 { a } else { x[top] };
    if mod_case {
        let k = n - 1;
        match ctrl {
            None => {
                c.cnot(x[k], y[k]);
                c.cnot(cw, y[k]);
            }
            Some(t) => {
                c.cnot(cw, x[k]);
                c.toffoli(t, x[k], y[k]);
                c.cnot(cw, x[k]);
            }
        }
    } else {
        match ctrl {
            None => {
                if let Some(e) = y_ext {
                    if let Some(co) = carry_out {
                        c.toffoli(cw, e, co);
                    }
                    c.cnot(cw, e);
                } else if let Some(co) = carry_out {
                    c.cnot(cw, co);
                }
            }
            Some(t) => {
                if let Some(e) = y_ext {
                    let tmp = c.alloc();
                    c.toffoli(t, cw, tmp);
                    if let Some(co) = carry_out {
                        c.toffoli(tmp, e, co);
                    }
                    c.cnot(tmp, e);
                    c.toffoli(t, cw, tmp);
                    c.free(tmp);
                } else if let Some(co) = carry_out {
                    c.toffoli(t, cw, co);
                }
            }
        }
    }
    for k in (1..=top).rev() {
        uma(c, prev(k), y[k], x[k], ctrl);
    }
    c.toffoli(x[0], y[0], a);
    match ctrl {
        None => c.cnot(x[0], y[0]),
        Some(t) => c.toffoli(t, x[0], y[0]),
    }
    c.free(a);
}

/// Subtracts `x` from `y` (extended by `y_ext` when present) modulo
/// `2^width`, conditioned on `ctrl`. `carry_out` receives the borrow-free
/// carry of the complemented sum.
pub(crate) fn sub_core<S: GateSink>(
    c: &mut Circuit<S>,
    x: &[Wire],
    y: &[Wire],
    y_ext: Option<Wire>,
    ctrl: Option<Wire>,
) {
    let flip = |c: &mut Circuit<S>| {
        for &w in y.iter().chain(y_ext.iter()) {
            c.x(w);
        }
    };
    flip(c);
    add_core(c, x, y, y_ext, None, ctrl);
    flip(c);
}

/// `|x>|y>|e>|co> -> |x>|y + x + 2^n e (mod 2^(n+1))>|co ^ carry>` with all
/// optional parts omitted when `None`; conditioned on `ctrl`.
pub fn add_into<S: GateSink>(
    c: &mut Circuit<S>,
    x: &QRegister,
    y: &QRegister,
    y_ext: Option<Wire>,
    carry_out: Option<Wire>,
    ctrl: Option<Wire>,
) -> Result<()> {
    check_width("addend", y.len(), x.len())?;
    add_core(c, x.wires(), y.wires(), y_ext, carry_out, ctrl);
    Ok(())
}

/// `|x>|y> -> |x>|y - x>` modulo `2^n` (or `2^(n+1)` with `y_ext`),
/// conditioned on `ctrl`.
pub fn sub_into<S: GateSink>(
    c: &mut Circuit<S>,
    x: &QRegister,
    y: &QRegister,
    y_ext: Option<Wire>,
    ctrl: Option<Wire>,
) -> Result<()> {
    check_width("subtrahend", y.len(), x.len())?;
    sub_core(c, x.wires(), y.wires(), y_ext, ctrl);
    Ok(())
}

/// `|x>|y> -> |x>|x + y>`. The carry-out variant allocates one output wire
/// and returns the widened target.
pub fn build_adder<S: GateSink>(
    c: &mut Circuit<S>,
    x: &QRegister,
    y: &QRegister,
    variant: AdderVariant,
) -> Result<QRegister> {
    build_adder_impl(c, None, x, y, variant)
}

/// Adds `x` into `y` iff `ctrl` is one.
pub fn build_ctrl_adder<S: GateSink>(
    c: &mut Circuit<S>,
    ctrl: Wire,
    x: &QRegister,
    y: &QRegister,
    variant: AdderVariant,
) -> Result<QRegister> {
    build_adder_impl(c, Some(ctrl), x, y, variant)
}

fn build_adder_impl<S: GateSink>(
    c: &mut Circuit<S>,
    ctrl: Option<Wire>,
    x: &QRegister,
    y: &QRegister,
    variant: AdderVariant,
) -> Result<QRegister> {
    check_width("addend", y.len(), x.len())?;
    if x.is_empty() {
        return Err(crate::QarithError::Width("empty operands".into()));
    }
    match variant {
        AdderVariant::Mod2n => {
            add_core(c, x.wires(), y.wires(), None, None, ctrl);
            Ok(y.clone())
        }
        AdderVariant::CarryOut => {
            let top = c.alloc();
            add_core(c, x.wires(), y.wires(), None, Some(top), ctrl);
            Ok(y.with_msb(top))
        }
    }
}

/// Computes the carry of `x + y` into a wire, runs `f` with it and
/// uncomputes. `x` and `y` are restored.
fn with_carry<S: GateSink, R>(
    c: &mut Circuit<S>,
    x: &[Wire],
    y: &[Wire],
    f: impl FnOnce(&mut Circuit<S>, Wire) -> R,
) -> R {
    let n = x.len();
    let a = c.alloc();
    c.toffoli(x[0], y[0], a);
    let prev = |k: usize| if k == 1 { a } else { x[k - 1] };
    for k in 1..n {
        maj(c, prev(k), y[k], x[k]);
    }
    let cw = if n == 1 { a } else { x[n - 1] };
    let out = f(c, cw);
    for k in (1..n).rev() {
        maj_inverse(c, prev(k), y[k], x[k]);
    }
    c.toffoli(x[0], y[0], a);
    c.free(a);
    out
}

/// Runs `f` with a wire holding `z < x`; both registers are restored.
pub fn with_less_than<S: GateSink, R>(
    c: &mut Circuit<S>,
    x: &QRegister,
    z: &QRegister,
    f: impl FnOnce(&mut Circuit<S>, Wire) -> R,
) -> Result<R> {
    check_width("comparand", z.len(), x.len())?;
    if x.is_empty() {
        return Err(crate::QarithError::Width("empty operands".into()));
    }
    for w in z.iter() {
        c.x(w);
    }
    let out = with_carry(c, x.wires(), z.wires(), f);
    for w in z.iter() {
        c.x(w);
    }
    Ok(out)
}

/// `|x>|z>|flag> -> |x>|z>|flag ^ (z < x)>`; with `flag = (z < x)` on input
/// the flag is cleared.
pub fn compare_uncompute<S: GateSink>(c: &mut Circuit<S>, x: &QRegister, z: &QRegister, flag: Wire) -> Result<()> {
    with_less_than(c, x, z, |c, cw| c.cnot(cw, flag))
}
