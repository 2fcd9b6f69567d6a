use ecc::{
    count_points, dlog_bruteforce, ec_add, ec_scalar_mul, prime_order_curve, secp256k1,
    shor_postprocess, toy_curve, AffinePoint, EccError,
};
use numtheory::{nat, Natural};
use proptest::prelude::*;

fn toy_points() -> Vec<AffinePoint> {
    let c = toy_curve();
    let mut pts = vec![AffinePoint::infinity()];
    for x in 0..17 {
        for y in 0..17 {
            let pt = AffinePoint::from_u64(x, y);
            if c.is_on_curve(&pt) {
                pts.push(pt);
            }
        }
    }
    pts
}

#[test]
fn toy_curve_group_has_order_19() {
    assert_eq!(toy_points().len(), 19);
    assert_eq!(count_points(17, 2, 2), 19);
    assert!(toy_curve().is_on_curve(&AffinePoint::from_u64(0, 6)));
}

#[test]
fn toy_curve_examples() {
    let c = toy_curve();
    let g = c.g.clone();
    assert_eq!(ec_add(&g, &AffinePoint::infinity(), &c).unwrap(), g);
    assert!(ec_add(&g, &c.negate(&g), &c).unwrap().at_infinity);
    assert_eq!(ec_add(&g, &g, &c).unwrap(), AffinePoint::from_u64(6, 3));
    assert_eq!(ec_scalar_mul(&nat(1), &g, &c).unwrap(), g);
    assert!(ec_scalar_mul(&nat(0), &g, &c).unwrap().at_infinity);
    assert!(ec_scalar_mul(&nat(19), &g, &c).unwrap().at_infinity);
    assert!(matches!(
        ec_add(&AffinePoint::from_u64(1, 1), &g, &c),
        Err(EccError::NotOnCurve { .. })
    ));
}

#[test]
fn toy_group_is_commutative_and_associative() {
    let c = toy_curve();
    let pts = toy_points();
    for a in &pts {
        for b in &pts {
            let ab = ec_add(a, b, &c).unwrap();
            assert_eq!(ab, ec_add(b, a, &c).unwrap());
            for d in &pts {
                let lhs = ec_add(&ab, d, &c).unwrap();
                let rhs = ec_add(a, &ec_add(b, d, &c).unwrap(), &c).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn dlog_examples() {
    let c = toy_curve();
    assert_eq!(dlog_bruteforce(&c.g, &c).unwrap(), nat(1));
    assert_eq!(dlog_bruteforce(&AffinePoint::infinity(), &c).unwrap(), nat(0));
    assert_eq!(dlog_bruteforce(&AffinePoint::from_u64(6, 3), &c).unwrap(), nat(2));
    for k in 0..19u64 {
        let q = ec_scalar_mul(&nat(k), &c.g, &c).unwrap();
        assert_eq!(dlog_bruteforce(&q, &c).unwrap(), nat(k));
    }
}

#[test]
fn postprocess_examples() {
    let r = nat(19);
    assert_eq!(shor_postprocess(&nat(3), &nat(0), &r).unwrap(), nat(0));
    assert_eq!(shor_postprocess(&nat(3), &nat(4), &r).unwrap(), nat(5));
    assert_eq!(shor_postprocess(&nat(1), &nat(18), &r).unwrap(), nat(1));
    assert_eq!(shor_postprocess(&nat(0), &nat(5), &r), Err(EccError::UnusableSample));
}

#[test]
fn postprocess_recovers_logarithm_from_ideal_samples() {
    // An ideal measurement gives (y1, y2) with y2 = -l * y1 mod r.
    let c = toy_curve();
    for l in 0..19u64 {
        for y1 in 1..19u64 {
            let y2 = (19 * 19 - l * y1) % 19;
            assert_eq!(shor_postprocess(&nat(y1), &nat(y2), &c.r).unwrap(), nat(l));
        }
    }
}

#[test]
fn secp256k1_constants() {
    let c = secp256k1();
    assert_eq!(c.a, nat(0));
    assert_eq!(c.b, nat(7));
    assert!(c.is_on_curve(&c.g));
    assert_eq!(
        c.g.x.to_string(),
        "55066263022277343669578718895168534326250603453777594175500187360389116729240"
    );
    assert_eq!(
        c.r.to_string(),
        "115792089237316195423570985008687907852837564279074904382605163141518161494337"
    );
    assert!(ec_scalar_mul(&c.r, &c.g, &c).unwrap().at_infinity);
}

#[test]
fn prime_order_helper_curves() {
    for bits in [8usize, 12, 16] {
        let c = prime_order_curve(bits, 0);
        assert_eq!(c.p.bits() as usize, bits);
        assert!(ec_scalar_mul(&c.r, &c.g, &c).unwrap().at_infinity);
    }
}

proptest! {
    #[test]
    fn scalar_mul_distributes_on_toy_curve(k1 in 0u64..1000, k2 in 0u64..1000) {
        let c = toy_curve();
        let lhs = ec_scalar_mul(&nat(k1 + k2), &c.g, &c).unwrap();
        let rhs = ec_add(
            &ec_scalar_mul(&nat(k1), &c.g, &c).unwrap(),
            &ec_scalar_mul(&nat(k2), &c.g, &c).unwrap(),
            &c,
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalar_mul_distributes_on_secp256k1(k1 in any::<u128>(), k2 in any::<u128>()) {
        let c = secp256k1();
        let (k1, k2) = (Natural::from(k1), Natural::from(k2));
        let lhs = ec_scalar_mul(&(&k1 + &k2), &c.g, &c).unwrap();
        let rhs = ec_add(
            &ec_scalar_mul(&k1, &c.g, &c).unwrap(),
            &ec_scalar_mul(&k2, &c.g, &c).unwrap(),
            &c,
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
