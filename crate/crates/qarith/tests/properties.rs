mod common;

use common::*;
use numtheory::{is_probable_prime, kaliski_oracle, mont_mul_oracle, nat};
use proptest::prelude::*;
use qarith::*;
use revsim::{Circuit, Counter, GateSink, Recorder};

fn prime_in(bits: u32, seed: u64) -> u64 {
    let lo = 1u64 << (bits - 1);
    let mut p = lo + seed % lo;
    p |= 1;
    while !is_probable_prime(&nat(p)) || p >= 1 << bits {
        p = if p + 2 >= 1 << bits { lo + 1 } else { p + 2 };
    }
    p
}

fn build_division<S: GateSink>(c: &mut Circuit<S>, cx: &numtheory::ModulusContext, w: usize) {
    let n = cx.n();
    let x = c.alloc_reg(n);
    let y = c.alloc_reg(n);
    let t = c.alloc_reg(n);
    mod_div(c, cx, w, &x, &y, &t, None).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clean_multiplication_matches_oracle(bits in 8u32..=12, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>(), w in 1usize..=4) {
        let p = prime_in(bits, seed);
        let cx = ctx(p);
        let n = cx.n();
        let (x, y) = (a % p, b % p);
        let mut c = sim();
        let xr = reg(&mut c, n, x);
        let yr = reg(&mut c, n, y);
        let tr = c.alloc_reg(n);
        mont_mul_clean(&mut c, &cx, w, &xr, &yr, &tr).unwrap();
        prop_assert_eq!(c.sink().read(&tr), mont_mul_oracle(&nat(x), &nat(y), &cx).unwrap());
        assert_clean(&c, 3 * n);
    }

    #[test]
    fn inversion_matches_oracle(bits in 8u32..=12, seed in any::<u64>(), a in any::<u64>()) {
        let p = prime_in(bits, seed);
        let cx = ctx(p);
        let n = cx.n();
        let x = 1 + a % (p - 1);
        let mut c = sim();
        let xr = reg(&mut c, n, x);
        let inv = mod_inverse(&mut c, &cx, &xr).unwrap();
        prop_assert_eq!(c.sink().read(inv.result()), kaliski_oracle(&nat(x), &cx).unwrap());
        release_inverse(&mut c, &cx, &inv);
        assert_clean(&c, 3 * n);
    }

    #[test]
    fn emitted_stream_does_not_depend_on_sink(bits in 5u32..=8, seed in any::<u64>(), w in 1usize..=3) {
        let p = prime_in(bits, seed);
        let cx = ctx(p);
        let mut rec = Circuit::new(Recorder::new());
        build_division(&mut rec, &cx, w);
        let mut counter = Circuit::new(Counter::new());
        build_division(&mut counter, &cx, w);
        let events = &rec.sink().events;
        prop_assert_eq!(revsim::count(events), counter.sink().counts());
        let mut again = Circuit::new(Recorder::new());
        build_division(&mut again, &cx, w);
        prop_assert_eq!(events, &again.sink().events);
    }
}
