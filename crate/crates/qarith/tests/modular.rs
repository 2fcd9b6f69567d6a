mod common;

use common::*;
use num_bigint::BigUint;
use numtheory::{kaliski_oracle, kaliski_swaps_traced, mod_inverse as inv_oracle, mont_mul_oracle, nat};
use qarith::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revsim::{Circuit, Counter, QRegister};

const PRIMES: [u64; 2] = [7, 13];

#[test]
fn reductions_exhaustive() {
    for p in PRIMES {
        let cx = ctx(p);
        let n = cx.n();
        for z in 0..2 * p {
            let mut outs = Vec::new();
            for variant in [ReduceVariant::V1, ReduceVariant::V2, ReduceVariant::V3] {
                let mut c = sim();
                let zr = reg(&mut c, n + 1, z);
                let q = build_mod_reduce(&mut c, &cx, &zr, variant).unwrap();
                let got = (read(&c, &zr), c.sink().peek(q));
                assert_eq!(got, (z % p, z >= p), "p={p} z={z} {variant:?}");
                assert_clean(&c, n + 2);
                outs.push(got);
            }
            assert!(outs.windows(2).all(|w| w[0] == w[1]));
        }
    }
    let cx = ctx(7);
    let mut c = sim();
    let zr = reg(&mut c, 4, 9);
    let q = build_mod_reduce(&mut c, &cx, &zr, ReduceVariant::default()).unwrap();
    assert_eq!((read(&c, &zr), c.sink().peek(q)), (2, true));
}

#[test]
fn variant_three_uses_n_ancillas() {
    let cx = ctx(251);
    let mut c = Circuit::new(Counter::new());
    let zr = c.alloc_reg(9);
    build_mod_reduce(&mut c, &cx, &zr, ReduceVariant::V3).unwrap();
    assert_eq!(c.sink().counts().alloc_high_water, 9 + 1 + 8);
}

#[test]
fn modular_add_sub_double_negate_exhaustive() {
    for p in PRIMES {
        let cx = ctx(p);
        let n = cx.n();
        for x in 0..p {
            for y in 0..p {
                let mut c = sim();
                let xr = reg(&mut c, n, x);
                let yr = reg(&mut c, n, y);
                build_mod_add(&mut c, &cx, &xr, &yr).unwrap();
                assert_eq!(read(&c, &yr), (x + y) % p);
                assert_eq!(read(&c, &xr), x);
                assert_clean(&c, 2 * n);
                mod_sub(&mut c, &cx, &xr, &yr).unwrap();
                assert_eq!(read(&c, &yr), y);
                mod_sub(&mut c, &cx, &xr, &yr).unwrap();
                assert_eq!(read(&c, &yr), (y + p - x) % p);
                assert_clean(&c, 2 * n);
            }
            let mut c = sim();
            let r = reg(&mut c, n, x);
            let d = build_mod_double(&mut c, &cx, &r).unwrap();
            assert_eq!(read(&c, &d), 2 * x % p);
            assert_clean(&c, n);

            let mut c = sim();
            let r = reg(&mut c, n, x);
            mod_negate(&mut c, &cx, &r).unwrap();
            assert_eq!(read(&c, &r), (p - x) % p);
            assert_clean(&c, n);

            if x != 0 {
                for ctl in [0, 1] {
                    let mut c = sim();
                    let t = reg(&mut c, 1, ctl);
                    let r = reg(&mut c, n, x);
                    ctrl_negate_nonzero(&mut c, &cx, t.bit(0), &r).unwrap();
                    assert_eq!(read(&c, &r), if ctl == 1 { p - x } else { x });
                    assert_clean(&c, n + 1);
                }
            }
        }
    }
    let cx = ctx(13);
    let mut c = sim();
    let r = reg(&mut c, 4, 10);
    let d = build_mod_double(&mut c, &cx, &r).unwrap();
    assert_eq!(read(&c, &d), 7);
}

#[test]
fn out_of_range_input_is_reported() {
    let cx = ctx(7);
    let mut c = sim();
    let xr = reg(&mut c, 3, 7);
    let yr = reg(&mut c, 3, 7);
    build_mod_add(&mut c, &cx, &xr, &yr).unwrap();
    assert!(c.sink().finish().is_err());
}

fn lookup_roundtrip(table: &LookupTable) {
    let w = table.address_width();
    for k in 0..1u64 << w {
        let mut c = sim();
        let addr = reg(&mut c, w, k);
        let tv = c.alloc_reg(table.value_width());
        build_lookup(&mut c, table, &addr, &tv, LookupMode::Load).unwrap();
        assert_eq!(c.sink().read(&tv), table.entries()[k as usize]);
        build_lookup(&mut c, table, &addr, &tv, LookupMode::Unload).unwrap();
        assert_eq!(read(&c, &tv), 0);
        assert_eq!(read(&c, &addr), k);
        assert_clean(&c, w + table.value_width());
    }
}

#[test]
fn lookups() {
    let t = |w: usize, vw: usize, e: &[u64]| LookupTable::new(w, vw, e.iter().map(|&v| BigUint::from(v)).collect()).unwrap();
    let identity = t(2, 2, &[0, 1, 2, 3]);
    let mut c = sim();
    let addr = reg(&mut c, 2, 2);
    let tv = c.alloc_reg(2);
    build_lookup(&mut c, &identity, &addr, &tv, LookupMode::Load).unwrap();
    assert_eq!(read(&c, &tv), 2);

    lookup_roundtrip(&t(2, 3, &[5, 3, 7, 1]));
    lookup_roundtrip(&t(0, 3, &[6]));
    lookup_roundtrip(&t(1, 3, &[6, 0]));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for w in 1..=5 {
        let entries: Vec<u64> = (0..1 << w).map(|_| rng.gen_range(0..16)).collect();
        lookup_roundtrip(&t(w, 4, &entries));
    }
    assert!(LookupTable::new(2, 2, vec![BigUint::from(4u32); 4]).is_err());
    assert!(LookupTable::new(2, 2, vec![BigUint::from(1u32); 3]).is_err());
}

#[test]
fn lookup_counts_match_closed_form() {
    for w in 1..=5usize {
        let entries: Vec<BigUint> = (0..1u64 << w).map(|i| BigUint::from(i * 37 % 64)).collect();
        let table = LookupTable::new(w, 6, entries).unwrap();
        let (ops, pairs) = table.leaf_weight();
        for mode in [LookupMode::Load, LookupMode::Unload] {
            let mut ev = Circuit::new(Counter::new());
            let addr = ev.alloc_reg(w);
            let tv = ev.alloc_reg(6);
            let ((), tape) = ev.record(|c| build_lookup(c, &table, &addr, &tv, mode).unwrap());
            ev.replay_inverse(&tape);
            let mut cf = Circuit::new(Counter::new());
            let _ = cf.alloc_reg(w + 6);
            let ((), tape) = cf.record(|c| lookup_closed_form(c, w, ops, pairs, mode));
            cf.replay_inverse(&tape);
            assert_eq!(ev.sink().counts(), cf.sink().counts(), "w={w} {mode:?}");
        }
    }
}

fn mont_case(p: u64, w: usize, x: u64, y: u64) {
    let cx = ctx(p);
    let n = cx.n();
    let want = mont_mul_oracle(&nat(x), &nat(y), &cx).unwrap();

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let d = mont_mul_dirty(&mut c, &cx, w, &xr, &yr).unwrap();
    assert_eq!(c.sink().read(&d.result), want);
    assert_eq!(d.garbage.len(), n + 1);
    assert_clean(&c, 4 * n + 1);

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let tr = c.alloc_reg(n);
    mont_mul_clean(&mut c, &cx, w, &xr, &yr, &tr).unwrap();
    assert_eq!(c.sink().read(&tr), want);
    assert_eq!((read(&c, &xr), read(&c, &yr)), (x, y));
    assert_clean(&c, 3 * n);

    let sq = mont_mul_oracle(&nat(x), &nat(x), &cx).unwrap();
    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let tr = c.alloc_reg(n);
    mont_square_clean(&mut c, &cx, w, &xr, &tr).unwrap();
    assert_eq!(c.sink().read(&tr), sq);
    assert_clean(&c, 2 * n);

    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let tr = reg(&mut c, n, y);
    mont_square_subtract(&mut c, &cx, w, &xr, &tr).unwrap();
    assert_eq!(c.sink().read(&tr), (nat(y) + nat(p) - &sq) % nat(p));
    assert_clean(&c, 2 * n);
}

#[test]
fn montgomery_exhaustive_small_primes() {
    for p in PRIMES {
        let n = ctx(p).n();
        for w in 1..=n {
            for x in 0..p {
                for y in 0..p {
                    mont_case(p, w, x, y);
                }
            }
        }
    }
}

#[test]
fn montgomery_rejects_wide_window() {
    let cx = ctx(7);
    let mut c = sim();
    let x = c.alloc_reg(3);
    let y = c.alloc_reg(3);
    assert!(matches!(mont_mul_dirty(&mut c, &cx, 4, &x, &y), Err(QarithError::Domain(_))));
}

#[test]
fn montgomery_random_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [251u64, 509, 1021, 2039, 4093] {
        for _ in 0..6 {
            let (x, y) = (rng.gen_range(0..p), rng.gen_range(0..p));
            let w = rng.gen_range(1..=4);
            mont_case(p, w, x, y);
        }
    }
}

fn kaliski_regs(c: &mut Sim, n: usize, p: u64, x: u64) -> KaliskiRegisters {
    KaliskiRegisters {
        u: reg(c, n, p),
        v: reg(c, n, x),
        r: reg(c, n, 0),
        s: reg(c, n, 1),
        f: reg(c, 1, 1).bit(0),
        a: c.alloc(),
        b: c.alloc(),
    }
}

#[test]
fn kaliski_steps_follow_oracle_trace() {
    for p in PRIMES {
        let cx = ctx(p);
        let n = cx.n();
        for x in 1..p {
            let trace = kaliski_swaps_traced(&nat(x), &cx).unwrap();
            let mut c = sim();
            let mut regs = kaliski_regs(&mut c, n, p, x);
            for (i, step) in trace.steps.iter().enumerate() {
                let m = build_kaliski_step(&mut c, &cx, &mut regs).unwrap();
                let s = c.sink();
                assert_eq!(s.read(&regs.u), step.state.u, "p={p} x={x} i={i}");
                assert_eq!(s.read(&regs.v), step.state.v);
                assert_eq!(s.read(&regs.r), step.state.r);
                assert_eq!(s.read(&regs.s), step.state.s);
                assert_eq!(s.peek(m), step.m);
                assert_eq!(s.peek(regs.f), i < trace.k);
                assert!(!s.peek(regs.a) && !s.peek(regs.b));
                s.finish().unwrap();
            }
        }
    }
    let cx = ctx(7);
    let mut c = sim();
    let mut regs = kaliski_regs(&mut c, 3, 1, 0);
    c.sink_mut().write_u64(&regs.s, 7);
    c.sink_mut().write_u64(&regs.r, 3);
    c.sink_mut().poke(regs.f, false);
    build_kaliski_step(&mut c, &cx, &mut regs).unwrap();
    assert_eq!((read(&c, &regs.u), read(&c, &regs.v), read(&c, &regs.r), read(&c, &regs.s)), (1, 0, 6, 7));
}

fn inverse_case(p: u64, x: u64) {
    let cx = ctx(p);
    let n = cx.n();
    let mut c = sim();
    let xr = reg(&mut c, n, x);
    let inv = mod_inverse(&mut c, &cx, &xr).unwrap();
    assert_eq!(c.sink().read(inv.result()), kaliski_oracle(&nat(x), &cx).unwrap(), "p={p} x={x}");
    assert_eq!(inv.garbage.len(), 2 * n);
    release_inverse(&mut c, &cx, &inv);
    assert_clean(&c, 3 * n);
}

#[test]
fn inversion_exhaustive_small_primes() {
    for p in PRIMES {
        for x in 1..p {
            inverse_case(p, x);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [251u64, 1021, 4093] {
        for _ in 0..8 {
            inverse_case(p, rng.gen_range(1..p));
        }
    }
}

fn division_case(p: u64, w: usize, x: u64, y: u64, ctl: Option<u64>) {
    let cx = ctx(p);
    let n = cx.n();
    let mut c = sim();
    let t = ctl.map(|v| reg(&mut c, 1, v));
    let xr = reg(&mut c, n, x);
    let yr = reg(&mut c, n, y);
    let out = c.alloc_reg(n);
    build_mod_div(&mut c, &cx, w, &xr, &yr, &out, t.as_ref().map(|t| t.bit(0))).unwrap();
    let r = nat(1) << n;
    let want = nat(y) * inv_oracle(&nat(x), &nat(p)).unwrap() * r % nat(p);
    let want = if ctl == Some(0) { nat(0) } else { want };
    assert_eq!(c.sink().read(&out), want, "p={p} x={x} y={y} ctl={ctl:?}");
    assert_eq!((read(&c, &xr), read(&c, &yr)), (x, y));
    assert_clean(&c, 3 * n + usize::from(ctl.is_some()));
}

#[test]
fn division_exhaustive_small_primes() {
    for p in PRIMES {
        for x in 1..p {
            for y in 0..p {
                division_case(p, 2, x, y, None);
                for ctl in [0, 1] {
                    division_case(p, 2, x, y, Some(ctl));
                }
            }
        }
    }
}

#[test]
fn multiplication_is_window_invariant() {
    let cx = ctx(13);
    let results: Vec<_> = (1..=4)
        .map(|w| {
            let mut c = sim();
            let xr = reg(&mut c, 4, 9);
            let yr = reg(&mut c, 4, 11);
            let tr: QRegister = c.alloc_reg(4);
            mont_mul_clean(&mut c, &cx, w, &xr, &yr, &tr).unwrap();
            read(&c, &tr)
        })
        .collect();
    assert!(results.windows(2).all(|w| w[0] == w[1]));
}
