use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{ModulusContext, Natural, NumTheoryError, Result};

/// Register contents `(u, v, r, s)` after one loop iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaliskiState {
    pub u: Natural,
    pub v: Natural,
    pub r: Natural,
    pub s: Natural,
}

/// Full execution record of the branching formulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaliskiTrace {
    /// State after each of the `2n` iterations.
    pub states: Vec<KaliskiState>,
    /// Number of iterations after which `v = 0` first holds.
    pub k: usize,
    /// Final output `x^(-1) 2^(2n) mod p`.
    pub result: Natural,
}

/// Branch decisions and resulting state for one iteration of the swap
/// formulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaliskiSwapStep {
    /// Flag `f` on entry; it is cleared by the iteration that first sees `v = 0`.
    pub f: bool,
    /// Whether `(u, v)` and `(r, s)` were exchanged around the halving step.
    pub swap: bool,
    /// The per-iteration bit `m_i` retained by the reversible circuit.
    pub m: bool,
    pub state: KaliskiState,
}

/// Execution record of the swap formulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaliskiSwapTrace {
    pub steps: Vec<KaliskiSwapStep>,
    pub k: usize,
    pub result: Natural,
}

fn check_invertible(x: &Natural, ctx: &ModulusContext) -> Result<()> {
    if x.is_zero() || x >= ctx.p() {
        return Err(NumTheoryError::Domain {
            value: x.clone(),
            lo: Natural::one(),
            hi: ctx.p().clone(),
        });
    }
    Ok(())
}

fn finish(u: &Natural, v: &Natural, r: Natural, s: &Natural, p: &Natural) -> Result<Natural> {
    if !u.is_one() {
        return Err(NumTheoryError::Postcondition("u != 1"));
    }
    if !v.is_zero() {
        return Err(NumTheoryError::Postcondition("v != 0"));
    }
    if s != p {
        return Err(NumTheoryError::Postcondition("s != p"));
    }
    let r = if &r >= p { r - p } else { r };
    Ok(p - r)
}

fn run_branching(x: &Natural, ctx: &ModulusContext, keep: bool) -> Result<KaliskiTrace> {
    check_invertible(x, ctx)?;
    let p = ctx.p();
    let (mut u, mut v, mut r, mut s) = (p.clone(), x.clone(), Natural::zero(), Natural::one());
    let mut k = None;
    let mut states = Vec::with_capacity(if keep { 2 * ctx.n() } else { 0 });
    for i in 0..2 * ctx.n() {
        if v.is_zero() {
            r = (&r << 1usize) % p;
        } else if u.is_even() {
            u >>= 1usize;
            s <<= 1usize;
        } else if v.is_even() {
            v >>= 1usize;
            r <<= 1usize;
        } else if u > v {
            u = (&u - &v) >> 1usize;
            r += &s;
            s <<= 1usize;
        } else {
            v = (&v - &u) >> 1usize;
            s += &r;
            r <<= 1usize;
        }
        if k.is_none() {
            if &u * &s + &v * &r != *p {
                return Err(NumTheoryError::Postcondition("p = us + vr violated"));
            }
            if v.is_zero() {
                k = Some(i + 1);
            }
        }
        if keep {
            states.push(KaliskiState { u: u.clone(), v: v.clone(), r: r.clone(), s: s.clone() });
        }
    }
    let k = k.ok_or(NumTheoryError::Postcondition("v never reached 0"))?;
    let result = finish(&u, &v, r, &s, p)?;
    Ok(KaliskiTrace { states, k, result })
}

/// Kaliski inversion with the Montgomery correction: returns
/// `x^(-1) 2^(2n) mod p` after exactly `2n` iterations.
pub fn kaliski_oracle(x: &Natural, ctx: &ModulusContext) -> Result<Natural> {
    run_branching(x, ctx, false).map(|t| t.result)
}

/// As [`kaliski_oracle`], additionally returning the state after every
/// iteration and the iteration count `k` at which `v` reaches zero.
pub fn kaliski_oracle_traced(x: &Natural, ctx: &ModulusContext) -> Result<KaliskiTrace> {
    run_branching(x, ctx, true)
}

fn run_swaps(x: &Natural, ctx: &ModulusContext, keep: bool) -> Result<KaliskiSwapTrace> {
    check_invertible(x, ctx)?;
    let p = ctx.p();
    let (mut u, mut v, mut r, mut s) = (p.clone(), x.clone(), Natural::zero(), Natural::one());
    let mut f = true;
    let mut k = None;
    let mut steps = Vec::with_capacity(if keep { 2 * ctx.n() } else { 0 });
    for i in 0..2 * ctx.n() {
        let f_in = f;
        let mut swap = false;
        let mut m = false;
        if v.is_zero() {
            r = (&r << 1usize) % p;
            if f {
                m = true;
                f = false;
                k = Some(i);
            }
        } else {
            let u_odd = u.is_odd();
            let v_odd = v.is_odd();
            swap = !u_odd || (v_odd && u > v);
            m = u_odd && (!v_odd || u > v);
            if swap {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut r, &mut s);
            }
            if v.is_odd() {
                v -= &u;
                s += &r;
            }
            v >>= 1usize;
            r = (&r << 1usize) % p;
            if swap {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut r, &mut s);
            }
        }
        if keep {
            let state = KaliskiState { u: u.clone(), v: v.clone(), r: r.clone(), s: s.clone() };
            steps.push(KaliskiSwapStep { f: f_in, swap, m, state });
        }
    }
    let k = match k {
        Some(k) => k,
        None if v.is_zero() => 2 * ctx.n(),
        None => return Err(NumTheoryError::Postcondition("v never reached 0")),
    };
    let result = finish(&u, &v, r, &s, p)?;
    Ok(KaliskiSwapTrace { steps, k, result })
}

/// Swap formulation of [`kaliski_oracle`] in which every iteration applies
/// the same halve/double pair to conditionally exchanged registers. The
/// doubling is always reduced modulo `p`, so `r` stays below `p`.
pub fn kaliski_swaps_oracle(x: &Natural, ctx: &ModulusContext) -> Result<Natural> {
    run_swaps(x, ctx, false).map(|t| t.result)
}

/// As [`kaliski_swaps_oracle`], additionally exposing the swap flag, the `f`
/// flag and the `m_i` bit of every iteration.
pub fn kaliski_swaps_traced(x: &Natural, ctx: &ModulusContext) -> Result<KaliskiSwapTrace> {
    run_swaps(x, ctx, true)
}
