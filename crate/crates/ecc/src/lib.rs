//! Short-Weierstrass elliptic curves `y^2 = x^3 + ax + b` over prime fields.
//!
//! Provides the affine group law with all special cases, double-and-add scalar
//! multiplication, the secp256k1 parameters, a brute-force discrete logarithm
//! for toy curves and the classical post-processing step of Shor's algorithm.

use num_traits::{One, Zero};
use numtheory::{is_probable_prime, mod_inverse, nat, Natural};

/// Errors raised by curve operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EccError {
    /// A point does not satisfy the curve equation.
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: Natural, y: Natural },
    /// Curve parameters are singular or inconsistent.
    #[error("invalid curve: {0}")]
    InvalidCurve(&'static str),
    /// The target point is not a multiple of the generator.
    #[error("discrete logarithm not found")]
    NotFound,
    /// The group is too large to enumerate.
    #[error("group order {0} too large for enumeration")]
    TooLarge(Natural),
    /// A measured sample cannot be post-processed and must be discarded.
    #[error("unusable sample: y1 = 0 mod r")]
    UnusableSample,
}

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, EccError>;

/// Affine point; the neutral element is flagged rather than encoded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    pub x: Natural,
    pub y: Natural,
    pub at_infinity: bool,
}

impl AffinePoint {
    /// Finite point with the given coordinates.
    pub fn new(x: Natural, y: Natural) -> Self {
        Self { x, y, at_infinity: false }
    }

    /// Shorthand for small coordinates.
    pub fn from_u64(x: u64, y: u64) -> Self {
        Self::new(nat(x), nat(y))
    }

    /// The neutral element.
    pub fn infinity() -> Self {
        Self { x: Natural::zero(), y: Natural::zero(), at_infinity: true }
    }
}

/// Curve parameters together with a generator of prime order `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    pub p: Natural,
    pub a: Natural,
    pub b: Natural,
    pub g: AffinePoint,
    pub r: Natural,
}

impl CurveParams {
    /// Validates non-singularity and that `g` lies on the curve. The order of
    /// `g` is checked when `check_order` is set.
    pub fn new(p: Natural, a: Natural, b: Natural, g: AffinePoint, r: Natural, check_order: bool) -> Result<Self> {
        let curve = Self { p, a, b, g, r };
        let disc = (nat(4) * curve.a.modpow(&nat(3), &curve.p) + nat(27) * &curve.b * &curve.b) % &curve.p;
        if disc.is_zero() {
            return Err(EccError::InvalidCurve("singular curve"));
        }
        if !curve.is_on_curve(&curve.g) || curve.g.at_infinity {
            return Err(EccError::InvalidCurve("generator not on curve"));
        }
        if check_order && !ec_scalar_mul(&curve.r, &curve.g, &curve)?.at_infinity {
            return Err(EccError::InvalidCurve("r * G is not neutral"));
        }
        Ok(curve)
    }

    /// Whether `pt` satisfies the curve equation.
    pub fn is_on_curve(&self, pt: &AffinePoint) -> bool {
        if pt.at_infinity {
            return true;
        }
        if pt.x >= self.p || pt.y >= self.p {
            return false;
        }
        let lhs = (&pt.y * &pt.y) % &self.p;
        let rhs = (&pt.x * &pt.x * &pt.x + &self.a * &pt.x + &self.b) % &self.p;
        lhs == rhs
    }

    /// The additive inverse `-pt`.
    pub fn negate(&self, pt: &AffinePoint) -> AffinePoint {
        if pt.at_infinity || pt.y.is_zero() {
            return pt.clone();
        }
        AffinePoint::new(pt.x.clone(), &self.p - &pt.y)
    }

    fn check(&self, pt: &AffinePoint) -> Result<()> {
        if self.is_on_curve(pt) {
            Ok(())
        } else {
            Err(EccError::NotOnCurve { x: pt.x.clone(), y: pt.y.clone() })
        }
    }

    fn sub(&self, a: &Natural, b: &Natural) -> Natural {
        ((a + &self.p) - (b % &self.p)) % &self.p
    }
}

/// Group law on affine points.
pub fn ec_add(p1: &AffinePoint, p2: &AffinePoint, curve: &CurveParams) -> Result<AffinePoint> {
    curve.check(p1)?;
    curve.check(p2)?;
    Ok(add_unchecked(p1, p2, curve))
}

fn add_unchecked(p1: &AffinePoint, p2: &AffinePoint, curve: &CurveParams) -> AffinePoint {
    if p1.at_infinity {
        return p2.clone();
    }
    if p2.at_infinity {
        return p1.clone();
    }
    let p = &curve.p;
    let lambda = if p1.x == p2.x {
        if (&p1.y + &p2.y) % p == Natural::zero() {
            return AffinePoint::infinity();
        }
        let num = (nat(3) * &p1.x * &p1.x + &curve.a) % p;
        let den = (nat(2) * &p1.y) % p;
        num * mod_inverse(&den, p).expect("2y invertible for y != 0") % p
    } else {
        let num = curve.sub(&p2.y, &p1.y);
        let den = curve.sub(&p2.x, &p1.x);
        num * mod_inverse(&den, p).expect("distinct x coordinates") % p
    };
    let x3 = curve.sub(&curve.sub(&(&lambda * &lambda), &p1.x), &p2.x);
    let y3 = curve.sub(&(&lambda * curve.sub(&p1.x, &x3)), &p1.y);
    AffinePoint::new(x3, y3)
}

/// Double-and-add scalar multiplication `k * pt`.
pub fn ec_scalar_mul(k: &Natural, pt: &AffinePoint, curve: &CurveParams) -> Result<AffinePoint> {
    curve.check(pt)?;
    let mut acc = AffinePoint::infinity();
    for i in (0..k.bits()).rev() {
        acc = add_unchecked(&acc, &acc, curve);
        if k.bit(i) {
            acc = add_unchecked(&acc, pt, curve);
        }
    }
    Ok(acc)
}

/// Largest group order accepted by [`dlog_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 1 << 20;

/// Smallest `k >= 0` with `k * G = q`; the neutral element maps to zero.
pub fn dlog_bruteforce(q: &AffinePoint, curve: &CurveParams) -> Result<Natural> {
    curve.check(q)?;
    if curve.r > nat(BRUTEFORCE_LIMIT) {
        return Err(EccError::TooLarge(curve.r.clone()));
    }
    let mut acc = AffinePoint::infinity();
    let mut k = 0u64;
    while nat(k) < curve.r {
        if &acc == q {
            return Ok(nat(k));
        }
        acc = add_unchecked(&acc, &curve.g, curve);
        k += 1;
    }
    Err(EccError::NotFound)
}

/// Recovers the logarithm `l = -y2 * y1^(-1) mod r` from one measured pair.
pub fn shor_postprocess(y1: &Natural, y2: &Natural, r: &Natural) -> Result<Natural> {
    let y1 = y1 % r;
    if y1.is_zero() {
        return Err(EccError::UnusableSample);
    }
    let inv = mod_inverse(&y1, r).ok_or(EccError::UnusableSample)?;
    let prod = (y2 % r) * inv % r;
    Ok((r - prod) % r)
}

fn dec(s: &str) -> Natural {
    Natural::parse_bytes(s.as_bytes(), 10).expect("valid decimal constant")
}

/// The secp256k1 curve `y^2 = x^3 + 7` over `p = 2^256 - 2^32 - 977`.
pub fn secp256k1() -> CurveParams {
    let p = (Natural::one() << 256usize) - (Natural::one() << 32usize) - nat(977);
    let g = AffinePoint::new(
        dec("55066263022277343669578718895168534326250603453777594175500187360389116729240"),
        dec("32670510020758816978083085130507043184471273380659243275938904335757337482424"),
    );
    let r = dec("115792089237316195423570985008687907852837564279074904382605163141518161494337");
    CurveParams { p, a: nat(0), b: nat(7), g, r }
}

/// The toy curve `y^2 = x^3 + 2x + 2` over `F_17` with generator `(5, 1)` of
/// order 19.
pub fn toy_curve() -> CurveParams {
    CurveParams::new(nat(17), nat(2), nat(2), AffinePoint::from_u64(5, 1), nat(19), true)
        .expect("toy curve parameters are valid")
}

/// Number of points (including the neutral element) by direct enumeration.
pub fn count_points(p: u64, a: u64, b: u64) -> u64 {
    let mut squares = vec![0u32; p as usize];
    for y in 0..p {
        squares[((y * y) % p) as usize] += 1;
    }
    let mut total = 1u64;
    for x in 0..p {
        let rhs = ((x * x % p) * x % p + a * x % p + b) % p;
        total += u64::from(squares[rhs as usize]);
    }
    total
}

/// Searches for a curve of prime order over the largest prime below `2^bits`
/// (at most 20 bits), scanning `(a, b)` lexicographically from `(a_min, 1)`.
/// The generator is the point with the smallest `x` coordinate and the
/// smaller of its two `y` roots.
pub fn prime_order_curve(bits: usize, a_min: u64) -> CurveParams {
    assert!((3..=20).contains(&bits), "bit size out of range for enumeration");
    let p_nat = numtheory::largest_prime_below_pow2(bits);
    let p: u64 = p_nat.to_string().parse().expect("fits u64");
    for a in a_min..p {
        for b in 1..p {
            if (4 * a * a % p * a + 27 * b * b).is_multiple_of(p) {
                continue;
            }
            let order = count_points(p, a, b);
            if order <= 3 || order == p || !is_probable_prime(&nat(order)) {
                continue;
            }
            for x in 0..p {
                let rhs = ((x * x % p) * x % p + a * x % p + b) % p;
                if let Some(y) = (1..p).find(|y| y * y % p == rhs) {
                    let y = y.min(p - y);
                    return CurveParams::new(nat(p), nat(a), nat(b), AffinePoint::from_u64(x, y), nat(order), true)
                        .expect("enumerated curve is valid");
                }
            }
        }
    }
    panic!("no prime-order curve found for {bits} bits");
}
