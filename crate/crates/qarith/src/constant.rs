//! Addition, subtraction and comparison against classical constants whose
//! bits are compiled directly into the gate pattern.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use revsim::{Circuit, Ctrl, GateSink, QRegister, Wire};

use crate::{bit, QarithError, Result};

/// Operation performed by [`build_const_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstOp {
    /// `|z> -> |z - c mod 2^m>` on the whole register.
    SubtractMod,
    /// `|z> -> |z + c mod 2^m>` iff the control wire is one.
    CtrlAdd,
    /// Writes `z >= c` to a fresh wire and restores `z`.
    CompareGeq,
    /// `|z> -> |z + c mod 2^m>`.
    AddMod,
}

/// Carry into position `i` of `z + k`, held either nowhere (known zero) or
/// on an ancilla.
type Carry = Option<Wire>;

/// XORs `maj(z_i, k_i, c_i)` into `target`.
fn emit_carry<S: GateSink>(c: &mut Circuit<S>, z: Wire, k: bool, carry: Carry, target: Wire) {
    match (carry, k) {
        (None, false) => {}
        (None, true) => c.cnot(z, target),
        (Some(w), false) => c.toffoli(z, w, target),
        (Some(w), true) => {
            c.toffoli(Ctrl::neg(z), Ctrl::neg(w), target);
            c.x(target);
        }
    }
}

/// Core constant adder on `z` (width `m`) with the constant `k < 2^m`.
///
/// The carry-out of `z + k` is XORed into `out` when present. When
/// `write_sum` is set the register receives `z + k mod 2^m`, conditioned on
/// `ctrl`. Carries are computed unconditionally from the original value and
/// uncomputed top-down, so `ctrl` may be the same wire as `out`.
pub(crate) fn const_add_general<S: GateSink>(
    c: &mut Circuit<S>,
    z: &[Wire],
    k: &BigUint,
    ctrl: Option<Wire>,
    out: Option<Wire>,
    write_sum: bool,
) {
    let m = z.len();
    let mut carries: Vec<Carry> = vec![None; m];
    for i in 1..m {
        let k_prev = bit(k, i - 1);
        let next = match (carries[i - 1], k_prev) {
            (None, false) => None,
            _ => {
                let w = c.alloc();
                emit_carry(c, z[i - 1], k_prev, carries[i - 1], w);
                Some(w)
            }
        };
        carries[i] = next;
    }
    if let Some(o) = out {
        if m > 0 {
            emit_carry(c, z[m - 1], bit(k, m - 1), carries[m - 1], o);
        }
    }
    for i in (0..m).rev() {
        if write_sum {
            let ki = bit(k, i);
            match ctrl {
                None => {
                    if ki {
                        c.x(z[i]);
                    }
                    if let Some(w) = carries[i] {
                        c.cnot(w, z[i]);
                    }
                }
                Some(t) => {
                    if ki {
                        c.cnot(t, z[i]);
                    }
                    if let Some(w) = carries[i] {
                        c.toffoli(t, w, z[i]);
                    }
                }
            }
        }
        if let Some(w) = carries[i] {
            emit_carry(c, z[i - 1], bit(k, i - 1), carries[i - 1], w);
            c.free(w);
        }
    }
}

fn modulus(m: usize) -> BigUint {
    BigUint::one() << m
}

fn check_const(k: &BigUint, m: usize) -> Result<()> {
    if *k >= modulus(m) {
        return Err(QarithError::Domain(format!("constant {k} does not fit in {m} bits")));
    }
    Ok(())
}

/// `|z> -> |z + k mod 2^m>`, conditioned on `ctrl` when present.
pub fn const_add<S: GateSink>(c: &mut Circuit<S>, z: &QRegister, k: &BigUint, ctrl: Option<Wire>) -> Result<()> {
    check_const(k, z.len())?;
    const_add_general(c, z.wires(), k, ctrl, None, true);
    Ok(())
}

/// `|z> -> |z - k mod 2^m>`, conditioned on `ctrl` when present.
pub fn const_sub<S: GateSink>(c: &mut Circuit<S>, z: &QRegister, k: &BigUint, ctrl: Option<Wire>) -> Result<()> {
    check_const(k, z.len())?;
    let m = z.len();
    let neg = (modulus(m) - k) % modulus(m);
    const_add_general(c, z.wires(), &neg, ctrl, None, true);
    Ok(())
}

/// `out ^= (z >= k)`; `z` is restored.
pub fn const_compare_geq<S: GateSink>(c: &mut Circuit<S>, z: &QRegister, k: &BigUint, out: Wire) -> Result<()> {
    let m = z.len();
    if k.is_zero() {
        c.x(out);
        return Ok(());
    }
    if *k >= modulus(m) {
        return Ok(());
    }
    let comp = modulus(m) - k;
    const_add_general(c, z.wires(), &comp, None, Some(out), false);
    Ok(())
}

/// Dispatches one of the constant operations. Returns the fresh output wire
/// for [`ConstOp::CompareGeq`]; `ctrl` is required for [`ConstOp::CtrlAdd`].
pub fn build_const_arith<S: GateSink>(
    c: &mut Circuit<S>,
    z: &QRegister,
    k: &BigUint,
    op: ConstOp,
    ctrl: Option<Wire>,
) -> Result<Option<Wire>> {
    if z.is_empty() {
        return Err(QarithError::Width("empty register".into()));
    }
    check_const(k, z.len())?;
    match op {
        ConstOp::SubtractMod => const_sub(c, z, k, None).map(|_| None),
        ConstOp::AddMod => const_add(c, z, k, None).map(|_| None),
        ConstOp::CtrlAdd => {
            let t = ctrl.ok_or_else(|| QarithError::Domain("controlled addition needs a control wire".into()))?;
            const_add(c, z, k, Some(t)).map(|_| None)
        }
        ConstOp::CompareGeq => {
            let out = c.alloc();
            const_compare_geq(c, z, k, out)?;
            Ok(Some(out))
        }
    }
}
