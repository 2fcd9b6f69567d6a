//! Oracle-equivalence suites for the reversible arithmetic builders.
//!
//! Every suite simulates the builders of one family on all valid inputs of a
//! small prime and compares outputs and ancilla state with classical
//! oracles. The first mismatch stops the suite and is returned as a
//! [`Counterexample`].

use std::fmt::Display;
use std::str::FromStr;

use ecc::{ec_add, ec_scalar_mul, toy_curve, AffinePoint, CurveParams};
use num_bigint::BigUint;
use numtheory::{
    is_probable_prime, kaliski_oracle, kaliski_swaps_traced, mod_inverse as inverse_oracle, mont_decode, mont_encode,
    mont_mul_oracle, nat, ModulusContext,
};
use qarith::{
    build_adder, build_const_arith, build_ctrl_adder, build_ec_add_lookup, build_ec_scalar_mul, build_kaliski_step,
    build_lookup, build_mod_add, build_mod_double, build_mod_div, build_mod_reduce, build_multi_ctrl_not,
    build_shor_f, compare_uncompute, ctrl_negate_nonzero, ec_add_lookup_reference, mod_inverse, mod_negate, mod_sub,
    mont_mul_clean, mont_mul_dirty, mont_square_clean, mont_square_subtract, release_inverse, scalar_mul_offset,
    window_layout, AdderVariant, ConstOp, EcRegisters, KaliskiRegisters, LookupMode, LookupTable, ReduceVariant,
    ShorInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revsim::{Circuit, Ctrl, QRegister, Simulator};
use serde::Serialize;

use crate::CliError;

type Sim = Circuit<Simulator>;

/// Primes exercised by `--prime auto`.
pub const SMALL_PRIMES: [u64; 2] = [7, 13];

/// Family of builders checked together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Plain and controlled adders, comparator, constant arithmetic and the
    /// multi-controlled NOT.
    Adders,
    /// Reductions, modular addition, subtraction, doubling, negation and
    /// table lookups.
    Modular,
    /// Dirty, clean and squaring Montgomery multiplication.
    Montgomery,
    /// Kaliski iterations, full inversion and (controlled) division.
    Kaliski,
    /// Lookup addition, scalar multiplication and the Shor function on the
    /// toy curve.
    Ecc,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Adders, Suite::Modular, Suite::Montgomery, Suite::Kaliski, Suite::Ecc];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Adders => "adders",
            Suite::Modular => "modular",
            Suite::Montgomery => "montgomery",
            Suite::Kaliski => "kaliski",
            Suite::Ecc => "ecc",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.tag() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite `{s}`")))
    }
}

/// First failing case of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

impl Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}]: expected {}, got {}", self.case, self.inputs, self.expected, self.got)
    }
}

/// Result of one suite at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    /// Field prime the suite ran over.
    pub prime: u64,
    /// Checks performed, including ancilla checks.
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type Step = Result<(), Counterexample>;

struct Checker {
    fault: bool,
    checks: u64,
}

impl Checker {
    fn new(fault: bool) -> Self {
        Checker { fault, checks: 0 }
    }

    fn expect<V: PartialEq + Display>(&mut self, case: &str, inputs: &str, expected: V, got: V) -> Step {
        self.checks += 1;
        if expected == got {
            Ok(())
        } else {
            Err(Counterexample {
                case: case.to_string(),
                inputs: inputs.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            })
        }
    }

    fn built<T>(&mut self, case: &str, inputs: &str, r: qarith::Result<T>) -> Result<T, Counterexample> {
        r.map_err(|e| Counterexample {
            case: case.to_string(),
            inputs: inputs.to_string(),
            expected: "successful build".to_string(),
            got: e.to_string(),
        })
    }

    /// Checks that the simulation raised nothing and exactly `live` wires remain.
    fn clean(&mut self, case: &str, inputs: &str, c: &Sim, live: usize) -> Step {
        let got = match c.sink().finish() {
            Ok(()) => format!("{} live wires", c.sink().live_count()),
            Err(e) => e.to_string(),
        };
        self.expect(case, inputs, format!("{live} live wires"), got)
    }

    /// Flips the low bit of an output register when fault injection is on.
    fn tamper(&self, c: &mut Sim, out: &QRegister) {
        if self.fault {
            c.x(out.bit(0));
        }
    }
}

fn sim() -> Sim {
    Circuit::new(Simulator::new())
}

fn reg(c: &mut Sim, n: usize, value: u64) -> QRegister {
    let r = c.alloc_reg(n);
    c.sink_mut().write_u64(&r, value);
    r
}

fn read(c: &Sim, r: &QRegister) -> u64 {
    c.sink().read_u64(r)
}

fn context(p: u64) -> Result<ModulusContext, CliError> {
    ModulusContext::from_u64(p).map_err(|e| CliError::Usage(format!("prime {p}: {e}")))
}

/// Runs `suite` over the prime `p`. The elliptic-curve suite always runs on
/// the toy curve and ignores `p`. With `inject_fault` every checked output is
/// corrupted by an extra X gate, so the suite must fail.
pub fn run_suite(suite: Suite, p: u64, inject_fault: bool) -> Result<SuiteOutcome, CliError> {
    let mut ck = Checker::new(inject_fault);
    let (prime, outcome) = match suite {
        Suite::Adders => (p, adders(&mut ck, &context(p)?)),
        Suite::Modular => (p, modular(&mut ck, &context(p)?)),
        Suite::Montgomery => (p, montgomery(&mut ck, &context(p)?)),
        Suite::Kaliski => (p, kaliski(&mut ck, &context(p)?)),
        Suite::Ecc => {
            let curve = toy_curve();
            (curve.p.to_string().parse().expect("toy prime fits u64"), ecc_suite(&mut ck, &curve))
        }
    };
    Ok(SuiteOutcome { suite, prime, checks: ck.checks, counterexample: outcome.err() })
}

fn adders(ck: &mut Checker, cx: &ModulusContext) -> Step {
    let n = cx.n();
    for x in 0..1u64 << n {
        for y in 0..1u64 << n {
            for variant in [AdderVariant::CarryOut, AdderVariant::Mod2n] {
                let carry = usize::from(variant == AdderVariant::CarryOut);
                let modulus = 1u64 << (n + carry);
                let inputs = format!("n={n} x={x} y={y} {variant:?}");
                let mut c = sim();
                let xr = reg(&mut c, n, x);
                let yr = reg(&mut c, n, y);
                let out = ck.built("adder", &inputs, build_adder(&mut c, &xr, &yr, variant))?;
                ck.tamper(&mut c, &out);
                ck.expect("adder", &inputs, (x + y) % modulus, read(&c, &out))?;
                ck.expect("adder keeps x", &inputs, x, read(&c, &xr))?;
                ck.clean("adder", &inputs, &c, 2 * n + carry)?;
                for ctl in [0, 1] {
                    let inputs = format!("{inputs} ctl={ctl}");
                    let mut c = sim();
                    let t = reg(&mut c, 1, ctl);
                    let xr = reg(&mut c, n, x);
                    let yr = reg(&mut c, n, y);
                    let out = ck.built("controlled adder", &inputs, build_ctrl_adder(&mut c, t.bit(0), &xr, &yr, variant))?;
                    ck.tamper(&mut c, &out);
                    ck.expect("controlled adder", &inputs, (ctl * x + y) % modulus, read(&c, &out))?;
                    ck.expect("controlled adder keeps x", &inputs, x, read(&c, &xr))?;
                    ck.clean("controlled adder", &inputs, &c, 2 * n + 1 + carry)?;
                }
            }
            let inputs = format!("n={n} x={x} z={y}");
            let mut c = sim();
            let xr = reg(&mut c, n, x);
            let zr = reg(&mut c, n, y);
            let flag = reg(&mut c, 1, u64::from(y < x));
            ck.built("comparator", &inputs, compare_uncompute(&mut c, &xr, &zr, flag.bit(0)))?;
            ck.tamper(&mut c, &flag);
            ck.expect("comparator clears flag", &inputs, 0, read(&c, &flag))?;
            let kept = format!("({}, {})", read(&c, &xr), read(&c, &zr));
            ck.expect("comparator keeps operands", &inputs, format!("({x}, {y})"), kept)?;
            ck.clean("comparator", &inputs, &c, 2 * n + 1)?;
        }
    }

    let m = n + 1;
    let wrap = 1u64 << m;
    for k in 0..wrap {
        let kb = BigUint::from(k);
        for z in 0..wrap {
            let inputs = format!("m={m} k={k} z={z}");
            let mut c = sim();
            let zr = reg(&mut c, m, z);
            ck.built("constant subtraction", &inputs, build_const_arith(&mut c, &zr, &kb, ConstOp::SubtractMod, None))?;
            ck.tamper(&mut c, &zr);
            ck.expect("constant subtraction", &inputs, (z + wrap - k) % wrap, read(&c, &zr))?;
            ck.clean("constant subtraction", &inputs, &c, m)?;
            for ctl in [0, 1] {
                let inputs = format!("{inputs} ctl={ctl}");
                let mut c = sim();
                let t = reg(&mut c, 1, ctl);
                let zr = reg(&mut c, m, z);
                ck.built("controlled constant addition", &inputs, build_const_arith(&mut c, &zr, &kb, ConstOp::CtrlAdd, Some(t.bit(0))))?;
                ck.tamper(&mut c, &zr);
                ck.expect("controlled constant addition", &inputs, (z + ctl * k) % wrap, read(&c, &zr))?;
                ck.clean("controlled constant addition", &inputs, &c, m + 1)?;
            }
            let mut c = sim();
            let zr = reg(&mut c, m, z);
            let out = ck.built("constant comparison", &inputs, build_const_arith(&mut c, &zr, &kb, ConstOp::CompareGeq, None))?;
            let Some(out) = out else {
                return ck.expect("constant comparison", &inputs, "output wire", "none");
            };
            let out = QRegister::new(vec![out]);
            ck.tamper(&mut c, &out);
            ck.expect("constant comparison", &inputs, u64::from(z >= k), read(&c, &out))?;
            ck.expect("constant comparison keeps z", &inputs, z, read(&c, &zr))?;
            ck.clean("constant comparison", &inputs, &c, m + 1)?;
        }
        if k < 1 << n {
            for y in 0..1u64 << n {
                let inputs = format!("n={n} k={k} y={y}");
                let mut c = sim();
                let yr = reg(&mut c, n, y);
                ck.built("constant addition", &inputs, build_const_arith(&mut c, &yr, &kb, ConstOp::AddMod, None))?;
                ck.tamper(&mut c, &yr);
                ck.expect("constant addition", &inputs, (y + k) % (1 << n), read(&c, &yr))?;
                ck.clean("constant addition", &inputs, &c, n)?;
            }
        }
    }

    for k in 0..=n {
        let all = (1u64 << k) - 1;
        for pattern in 0..1u64 << k {
            for polarity in [0, all, 0b10101 & all] {
                let inputs = format!("k={k} controls={pattern:b} polarity={polarity:b}");
                let mut c = sim();
                let ctl = reg(&mut c, k, pattern);
                let target = reg(&mut c, 1, 0);
                let controls: Vec<Ctrl> =
                    (0..k).map(|i| Ctrl { wire: ctl.bit(i), positive: polarity >> i & 1 == 1 }).collect();
                ck.built("multi-controlled NOT", &inputs, build_multi_ctrl_not(&mut c, &controls, target.bit(0)))?;
                ck.tamper(&mut c, &target);
                ck.expect("multi-controlled NOT", &inputs, u64::from(pattern == polarity), read(&c, &target))?;
                ck.expect("multi-controlled NOT keeps controls", &inputs, pattern, read(&c, &ctl))?;
                ck.clean("multi-controlled NOT", &inputs, &c, k + 1)?;
            }
        }
    }
    Ok(())
}

fn modular(ck: &mut Checker, cx: &ModulusContext) -> Step {
    let n = cx.n();
    let p: u64 = cx.p().to_string().parse().expect("small prime");
    for z in 0..2 * p {
        for variant in [ReduceVariant::V1, ReduceVariant::V2, ReduceVariant::V3] {
            let inputs = format!("p={p} z={z} {variant:?}");
            let mut c = sim();
            let zr = reg(&mut c, n + 1, z);
            let q = ck.built("reduction", &inputs, build_mod_reduce(&mut c, cx, &zr, variant))?;
            ck.tamper(&mut c, &zr);
            ck.expect("reduction", &inputs, z % p, read(&c, &zr))?;
            ck.expect("reduction quotient", &inputs, z >= p, c.sink().peek(q))?;
            ck.clean("reduction", &inputs, &c, n + 2)?;
        }
    }
    for x in 0..p {
        for y in 0..p {
            let inputs = format!("p={p} x={x} y={y}");
            let mut c = sim();
            let xr = reg(&mut c, n, x);
            let yr = reg(&mut c, n, y);
            ck.built("modular addition", &inputs, build_mod_add(&mut c, cx, &xr, &yr))?;
            ck.tamper(&mut c, &yr);
            ck.expect("modular addition", &inputs, (x + y) % p, read(&c, &yr))?;
            ck.expect("modular addition keeps x", &inputs, x, read(&c, &xr))?;
            ck.clean("modular addition", &inputs, &c, 2 * n)?;

            let mut c = sim();
            let xr = reg(&mut c, n, x);
            let yr = reg(&mut c, n, y);
            ck.built("modular subtraction", &inputs, mod_sub(&mut c, cx, &xr, &yr))?;
            ck.tamper(&mut c, &yr);
            ck.expect("modular subtraction", &inputs, (y + p - x) % p, read(&c, &yr))?;
            ck.clean("modular subtraction", &inputs, &c, 2 * n)?;
        }
        let inputs = format!("p={p} x={x}");
        let mut c = sim();
        let r = reg(&mut c, n, x);
        let d = ck.built("modular doubling", &inputs, build_mod_double(&mut c, cx, &r))?;
        ck.tamper(&mut c, &d);
        ck.expect("modular doubling", &inputs, 2 * x % p, read(&c, &d))?;
        ck.clean("modular doubling", &inputs, &c, n)?;

        let mut c = sim();
        let r = reg(&mut c, n, x);
        ck.built("modular negation", &inputs, mod_negate(&mut c, cx, &r))?;
        ck.tamper(&mut c, &r);
        ck.expect("modular negation", &inputs, (p - x) % p, read(&c, &r))?;
        ck.clean("modular negation", &inputs, &c, n)?;

        if x != 0 {
            for ctl in [0, 1] {
                let inputs = format!("{inputs} ctl={ctl}");
                let mut c = sim();
                let t = reg(&mut c, 1, ctl);
                let r = reg(&mut c, n, x);
                ck.built("controlled negation", &inputs, ctrl_negate_nonzero(&mut c, cx, t.bit(0), &r))?;
                ck.tamper(&mut c, &r);
                ck.expect("controlled negation", &inputs, if ctl == 1 { p - x } else { x }, read(&c, &r))?;
                ck.clean("controlled negation", &inputs, &c, n + 1)?;
            }
        }
    }
    for w in 0..=n {
        let entries: Vec<BigUint> = (0..1u64 << w).map(|i| BigUint::from((5 * i + 3) % p)).collect();
        let table = match LookupTable::new(w, n, entries) {
            Ok(t) => t,
            Err(e) => return ck.expect("lookup table", &format!("w={w}"), "valid table".to_string(), e.to_string()),
        };
        for k in 0..1u64 << w {
            let inputs = format!("p={p} w={w} address={k}");
            let mut c = sim();
            let addr = reg(&mut c, w, k);
            let tv = c.alloc_reg(n);
            ck.built("lookup", &inputs, build_lookup(&mut c, &table, &addr, &tv, LookupMode::Load))?;
            ck.tamper(&mut c, &tv);
            ck.expect("lookup", &inputs, table.entries()[k as usize].clone(), c.sink().read(&tv))?;
            ck.built("unlookup", &inputs, build_lookup(&mut c, &table, &addr, &tv, LookupMode::Unload))?;
            ck.expect("unlookup", &inputs, 0, read(&c, &tv))?;
            ck.expect("lookup keeps address", &inputs, k, read(&c, &addr))?;
            ck.clean("lookup", &inputs, &c, w + n)?;
        }
    }
    Ok(())
}

fn montgomery_case(ck: &mut Checker, cx: &ModulusContext, w: usize, x: u64, y: u64) -> Step {
    let n = cx.n();
    let p = cx.p().clone();
    let want = mont_mul_oracle(&nat(x), &nat(y), cx).expect("reduced operands");
    let inputs = format!("p={p} w={w} x={x} y={y}");

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let d = ck.built("dirty multiplication", &inputs, mont_mul_dirty(&mut c, cx, w, &xr, &yr))?;
    ck.tamper(&mut c, &d.result);
    ck.expect("dirty multiplication", &inputs, want.clone(), c.sink().read(&d.result))?;
    ck.clean("dirty multiplication", &inputs, &c, 4 * n + 1)?;

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let tr = c.alloc_reg(n);
    ck.built("clean multiplication", &inputs, mont_mul_clean(&mut c, cx, w, &xr, &yr, &tr))?;
    ck.tamper(&mut c, &tr);
    ck.expect("clean multiplication", &inputs, want, c.sink().read(&tr))?;
    ck.expect("clean multiplication keeps x", &inputs, x, read(&c, &xr))?;
    ck.expect("clean multiplication keeps y", &inputs, y, read(&c, &yr))?;
    ck.clean("clean multiplication", &inputs, &c, 3 * n)?;

    let sq = mont_mul_oracle(&nat(x), &nat(x), cx).expect("reduced operand");
    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let tr = c.alloc_reg(n);
    ck.built("clean square", &inputs, mont_square_clean(&mut c, cx, w, &xr, &tr))?;
    ck.tamper(&mut c, &tr);
    ck.expect("clean square", &inputs, sq.clone(), c.sink().read(&tr))?;
    ck.clean("clean square", &inputs, &c, 2 * n)?;

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let tr = reg(&mut c, n, y);
    ck.built("square subtraction", &inputs, mont_square_subtract(&mut c, cx, w, &xr, &tr))?;
    ck.tamper(&mut c, &tr);
    ck.expect("square subtraction", &inputs, (nat(y) + &p - sq) % &p, c.sink().read(&tr))?;
    ck.clean("square subtraction", &inputs, &c, 2 * n)
}

fn montgomery(ck: &mut Checker, cx: &ModulusContext) -> Step {
    let p: u64 = cx.p().to_string().parse().expect("small prime");
    for w in 1..=cx.n() {
        for x in 0..p {
            for y in 0..p {
                montgomery_case(ck, cx, w, x, y)?;
            }
        }
    }
    Ok(())
}

fn inverse_case(ck: &mut Checker, cx: &ModulusContext, x: u64) -> Step {
    let n = cx.n();
    let inputs = format!("p={} x={x}", cx.p());
    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let inv = ck.built("inversion", &inputs, mod_inverse(&mut c, cx, &xr))?;
    ck.tamper(&mut c, inv.result());
    let want = kaliski_oracle(&nat(x), cx).expect("invertible input");
    ck.expect("inversion", &inputs, want, c.sink().read(inv.result()))?;
    release_inverse(&mut c, cx, &inv);
    ck.clean("inversion", &inputs, &c, 3 * n)
}

fn division_case(ck: &mut Checker, cx: &ModulusContext, w: usize, x: u64, y: u64, ctl: Option<u64>) -> Step {
    let n = cx.n();
    let p = cx.p().clone();
    let inputs = format!("p={p} w={w} x={x} y={y} ctl={ctl:?}");
    let mut c = sim();
    let t = ctl.map(|v| reg(&mut c, 1, v));
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let out = c.alloc_reg(n);
    ck.built("division", &inputs, build_mod_div(&mut c, cx, w, &xr, &yr, &out, t.as_ref().map(|t| t.bit(0))))?;
    ck.tamper(&mut c, &out);
    let want = match ctl {
        Some(0) => nat(0),
        _ => nat(y) * inverse_oracle(&nat(x), &p).expect("invertible input") * (nat(1) << n) % &p,
    };
    ck.expect("division", &inputs, want, c.sink().read(&out))?;
    ck.expect("division keeps x", &inputs, x, read(&c, &xr))?;
    ck.expect("division keeps y", &inputs, y, read(&c, &yr))?;
    ck.clean("division", &inputs, &c, 3 * n + usize::from(ctl.is_some()))
}

fn kaliski(ck: &mut Checker, cx: &ModulusContext) -> Step {
    let n = cx.n();
    let p: u64 = cx.p().to_string().parse().expect("small prime");
    for x in 1..p {
        let trace = kaliski_swaps_traced(&nat(x), cx).expect("invertible input");
        let mut c = sim();
        let mut regs = KaliskiRegisters {
            u: reg(&mut c, n, p),
            v: reg(&mut c, n, x),
            r: reg(&mut c, n, 0),
            s: reg(&mut c, n, 1),
            f: reg(&mut c, 1, 1).bit(0),
            a: c.alloc(),
            b: c.alloc(),
        };
        for (i, step) in trace.steps.iter().enumerate() {
            let inputs = format!("p={p} x={x} iteration={i}");
            let m = ck.built("Kaliski step", &inputs, build_kaliski_step(&mut c, cx, &mut regs))?;
            ck.tamper(&mut c, &regs.u);
            let s = c.sink();
            let got = (s.read(&regs.u), s.read(&regs.v), s.read(&regs.r), s.read(&regs.s));
            let want = (step.state.u.clone(), step.state.v.clone(), step.state.r.clone(), step.state.s.clone());
            ck.expect("Kaliski step (u, v, r, s)", &inputs, format!("{want:?}"), format!("{got:?}"))?;
            ck.expect("Kaliski step m", &inputs, step.m, s.peek(m))?;
            ck.expect("Kaliski step f", &inputs, i < trace.k, s.peek(regs.f))?;
            ck.expect("Kaliski scratch set", &inputs, false, s.peek(regs.a) || s.peek(regs.b))?;
            let state = match s.finish() {
                Ok(()) => "ok".to_string(),
                Err(e) => e.to_string(),
            };
            ck.expect("Kaliski step simulation", &inputs, "ok".to_string(), state)?;
        }
        inverse_case(ck, cx, x)?;
        for y in 0..p {
            division_case(ck, cx, 2.min(n), x, y, None)?;
            for ctl in [0, 1] {
                division_case(ck, cx, 2.min(n), x, y, Some(ctl))?;
            }
        }
    }
    Ok(())
}

fn load_point(c: &mut Sim, cx: &ModulusContext, pt: &AffinePoint) -> (QRegister, QRegister) {
    let n = cx.n();
    let x = c.alloc_reg(n);
    let y = c.alloc_reg(n);
    c.sink_mut().write(&x, &mont_encode(&pt.x, cx).expect("coordinate below p"));
    c.sink_mut().write(&y, &mont_encode(&pt.y, cx).expect("coordinate below p"));
    (x, y)
}

fn read_point(c: &Sim, cx: &ModulusContext, x: &QRegister, y: &QRegister) -> String {
    match (mont_decode(&c.sink().read(x), cx), mont_decode(&c.sink().read(y), cx)) {
        (Ok(px), Ok(py)) => point(&AffinePoint::new(px, py)),
        _ => "unreduced register".to_string(),
    }
}

fn point(pt: &AffinePoint) -> String {
    if pt.at_infinity {
        "O".to_string()
    } else {
        format!("({}, {})", pt.x, pt.y)
    }
}

fn mul(curve: &CurveParams, k: &BigUint, pt: &AffinePoint) -> AffinePoint {
    ec_scalar_mul(k, pt, curve).expect("point on curve")
}

/// Result of the windowed scalar multiplication of `k` by `base`, accumulated
/// into `acc`, or `None` if an exceptional addition occurs.
fn windowed_reference(
    curve: &CurveParams,
    base: &AffinePoint,
    n_e: usize,
    w_e: usize,
    k: u64,
    acc: AffinePoint,
) -> Option<AffinePoint> {
    window_layout(n_e, w_e).into_iter().try_fold(acc, |acc, (s, wj)| {
        let shifted = mul(curve, &(nat(1) << s), base);
        ec_add_lookup_reference(curve, &shifted, wj, (k >> s) & ((1 << wj) - 1), &acc)
    })
}

fn ecc_suite(ck: &mut Checker, curve: &CurveParams) -> Step {
    let cx = ModulusContext::new(curve.p.clone()).expect("toy prime");
    let n = cx.n();
    let r: u64 = curve.r.to_string().parse().expect("toy order");
    let multiples: Vec<AffinePoint> = (1..r).map(|k| mul(curve, &nat(k), &curve.g)).collect();

    let base = mul(curve, &nat(3), &curve.g);
    for w in 1..=3usize {
        for i in 0..1u64 << w {
            for q in &multiples {
                let Some(want) = ec_add_lookup_reference(curve, &base, w, i, q) else { continue };
                let inputs = format!("w={w} index={i} Q={}", point(q));
                let mut c = sim();
                let index = reg(&mut c, w, i);
                let (x, y) = load_point(&mut c, &cx, q);
                let regs = EcRegisters { index: index.clone(), x: x.clone(), y: y.clone() };
                ck.built("lookup addition", &inputs, build_ec_add_lookup(&mut c, curve, 2, &base, &regs))?;
                ck.tamper(&mut c, &x);
                ck.expect("lookup addition", &inputs, point(&want), read_point(&c, &cx, &x, &y))?;
                ck.expect("lookup addition keeps index", &inputs, i, read(&c, &index))?;
                ck.clean("lookup addition", &inputs, &c, w + 2 * n)?;
            }
        }
    }

    let p0 = mul(curve, &nat(7), &curve.g);
    for (n_e, w_e) in [(4usize, 2usize), (5, 2), (4, 3)] {
        let offset = scalar_mul_offset(curve, &curve.g, n_e, w_e).expect("valid windows");
        for k in 0..1u64 << n_e {
            if windowed_reference(curve, &curve.g, n_e, w_e, k, p0.clone()).is_none() {
                continue;
            }
            let inputs = format!("n_e={n_e} w_e={w_e} k={k}");
            let want = ec_add(&ec_add(&p0, &mul(curve, &nat(k), &curve.g), curve).expect("on curve"), &offset, curve)
                .expect("on curve");
            let mut c = sim();
            let scalar = reg(&mut c, n_e, k);
            let (x, y) = load_point(&mut c, &cx, &p0);
            ck.built("scalar multiplication", &inputs, build_ec_scalar_mul(&mut c, curve, w_e, 2, &curve.g, &scalar, &x, &y))?;
            ck.tamper(&mut c, &x);
            ck.expect("scalar multiplication", &inputs, point(&want), read_point(&c, &cx, &x, &y))?;
            ck.expect("scalar multiplication keeps k", &inputs, k, read(&c, &scalar))?;
            ck.clean("scalar multiplication", &inputs, &c, n_e + 2 * n)?;
        }
    }

    let l = 5u64;
    let target = mul(curve, &nat(l), &curve.g);
    let inst = ShorInstance { curve: curve.clone(), target: target.clone(), initial: p0.clone() };
    let n_e = 5;
    let w_e = 2;
    let minus_p = curve.negate(&target);
    let offset = ec_add(
        &scalar_mul_offset(curve, &curve.g, n_e, w_e).expect("valid windows"),
        &scalar_mul_offset(curve, &minus_p, n_e, w_e).expect("valid windows"),
        curve,
    )
    .expect("on curve");
    for x1 in 0..r {
        for x2 in 0..r {
            let generic = windowed_reference(curve, &curve.g, n_e, w_e, x1, p0.clone())
                .and_then(|acc| windowed_reference(curve, &minus_p, n_e, w_e, x2, acc));
            if generic.is_none() {
                continue;
            }
            let inputs = format!("x1={x1} x2={x2}");
            let bits: Vec<bool> =
                (0..n_e).map(|i| x1 >> i & 1 == 1).chain((0..n_e).map(|i| x2 >> i & 1 == 1)).collect();
            let k = (x1 + r * l - l * x2 % r) % r;
            let want = ec_add(&ec_add(&p0, &mul(curve, &nat(k), &curve.g), curve).expect("on curve"), &offset, curve)
                .expect("on curve");
            let mut c = Circuit::new(Simulator::with_inputs(bits.clone()));
            let layout = ck.built("Shor function", &inputs, build_shor_f(&mut c, &inst, w_e, 2))?;
            ck.tamper(&mut c, &layout.x);
            ck.expect("Shor function", &inputs, point(&want), read_point(&c, &cx, &layout.x, &layout.y))?;
            let measured: Vec<bool> = c.sink().outputs().values().copied().collect();
            ck.expect("Shor function measurements", &inputs, format!("{bits:?}"), format!("{measured:?}"))?;
            ck.clean("Shor function", &inputs, &c, 2 * n)?;
        }
    }
    Ok(())
}

/// Random prime with exactly `bits` bits.
pub fn random_prime(rng: &mut ChaCha8Rng, bits: usize) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << (bits - 1)..1u64 << bits) | 1;
        if is_probable_prime(&nat(candidate)) {
            return candidate;
        }
    }
}

/// Clean Montgomery multiplication and full inversion at random 8 to 12 bit
/// primes: `inputs` random cases of each, drawn from `seed`. Returns the
/// multiplication and inversion outcomes.
pub fn random_scaling(seed: u64, inputs: usize, inject_fault: bool) -> [SuiteOutcome; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mul_ck = Checker::new(inject_fault);
    let mut inv_ck = Checker::new(inject_fault);
    let mut mul_fail = None;
    let mut inv_fail = None;
    let mut last_prime = 0;
    for _ in 0..inputs {
        let bits = rng.gen_range(8..=12);
        let p = random_prime(&mut rng, bits);
        last_prime = p;
        let cx = ModulusContext::from_u64(p).expect("odd prime");
        let (x, y) = (rng.gen_range(0..p), rng.gen_range(0..p));
        let w = rng.gen_range(1..=4);
        if mul_fail.is_none() {
            mul_fail = random_mul(&mut mul_ck, &cx, w, x, y).err();
        }
        let z = rng.gen_range(1..p);
        if inv_fail.is_none() {
            inv_fail = inverse_case(&mut inv_ck, &cx, z).err();
        }
    }
    [
        SuiteOutcome { suite: Suite::Montgomery, prime: last_prime, checks: mul_ck.checks, counterexample: mul_fail },
        SuiteOutcome { suite: Suite::Kaliski, prime: last_prime, checks: inv_ck.checks, counterexample: inv_fail },
    ]
}

fn random_mul(ck: &mut Checker, cx: &ModulusContext, w: usize, x: u64, y: u64) -> Step {
    let n = cx.n();
    let inputs = format!("p={} w={w} x={x} y={y}", cx.p());
    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let tr = c.alloc_reg(n);
    ck.built("clean multiplication", &inputs, mont_mul_clean(&mut c, cx, w, &xr, &yr, &tr))?;
    ck.tamper(&mut c, &tr);
    let want = mont_mul_oracle(&nat(x), &nat(y), cx).expect("reduced operands");
    ck.expect("clean multiplication", &inputs, want, c.sink().read(&tr))?;
    ck.expect("clean multiplication keeps x", &inputs, x, read(&c, &xr))?;
    ck.expect("clean multiplication keeps y", &inputs, y, read(&c, &yr))?;
    ck.clean("clean multiplication", &inputs, &c, 3 * n)
}

/// Number of random cases per check in the randomized scaling pass.
pub const RANDOM_INPUTS: usize = 500;

/// Outcomes of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Exhaustive suites, in the order requested.
    pub exhaustive: Vec<SuiteOutcome>,
    /// Randomized clean multiplication and inversion at 8 to 12 bit primes.
    pub random: Vec<SuiteOutcome>,
    pub passed: bool,
}

impl VerifyReport {
    /// First failing outcome, exhaustive suites first.
    pub fn first_failure(&self) -> Option<&SuiteOutcome> {
        self.exhaustive.iter().chain(&self.random).find(|o| !o.passed())
    }
}

/// Runs `suites` at every prime of `primes` and, when `random_seed` is set,
/// the randomized pass for the Montgomery and Kaliski suites. Suites run on
/// the current rayon pool; the report does not depend on its size.
pub fn run_verification(
    suites: &[Suite],
    primes: &[u64],
    random_seed: Option<u64>,
    inject_fault: bool,
) -> Result<VerifyReport, CliError> {
    use rayon::prelude::*;

    let mut jobs = Vec::new();
    for &suite in suites {
        if suite == Suite::Ecc {
            jobs.push((suite, primes.first().copied().unwrap_or(SMALL_PRIMES[0])));
        } else {
            jobs.extend(primes.iter().map(|&p| (suite, p)));
        }
    }
    let exhaustive = jobs
        .par_iter()
        .map(|&(suite, p)| run_suite(suite, p, inject_fault))
        .collect::<Result<Vec<_>, _>>()?;
    let random = match random_seed {
        Some(seed) if suites.iter().any(|s| matches!(s, Suite::Montgomery | Suite::Kaliski)) => {
            random_scaling(seed, RANDOM_INPUTS, inject_fault)
                .into_iter()
                .filter(|o| suites.contains(&o.suite))
                .collect()
        }
        _ => Vec::new(),
    };
    let passed = exhaustive.iter().chain(&random).all(SuiteOutcome::passed);
    Ok(VerifyReport { exhaustive, random, passed })
}
