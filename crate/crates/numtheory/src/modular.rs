use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{is_probable_prime, Natural, NumTheoryError, Result};

/// An odd prime modulus together with its bit length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulusContext {
    p: Natural,
    n: usize,
}

impl ModulusContext {
    /// Validates `p` (odd, prime, greater than two) and records its bit length.
    pub fn new(p: Natural) -> Result<Self> {
        if p <= Natural::from(2u8) || p.is_even() || !is_probable_prime(&p) {
            return Err(NumTheoryError::InvalidModulus(p));
        }
        let n = p.bits() as usize;
        Ok(Self { p, n })
    }

    /// Shorthand for machine-sized moduli.
    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(Natural::from(p))
    }

    /// The modulus.
    pub fn p(&self) -> &Natural {
        &self.p
    }

    /// Bit length of the modulus, so that `2^(n-1) <= p < 2^n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n mod p`, the Montgomery radix reduced modulo `p`.
    pub fn radix_mod_p(&self) -> Natural {
        (Natural::one() << self.n) % &self.p
    }

    /// `2^(-n) mod p`.
    pub fn radix_inverse(&self) -> Natural {
        mod_inverse(&self.radix_mod_p(), &self.p).expect("2^n is invertible modulo an odd prime")
    }

    pub(crate) fn check_below_p(&self, x: &Natural) -> Result<()> {
        if x >= &self.p {
            return Err(NumTheoryError::Domain {
                value: x.clone(),
                lo: Natural::zero(),
                hi: self.p.clone(),
            });
        }
        Ok(())
    }
}

/// Modular inverse by the extended Euclidean algorithm, `None` when
/// `gcd(a, m) != 1`.
pub fn mod_inverse(a: &Natural, m: &Natural) -> Option<Natural> {
    if m.is_zero() {
        return None;
    }
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let a_int = BigInt::from_biguint(Sign::Plus, a % m);
    let ext = a_int.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return None;
    }
    let x = ext.x.mod_floor(&m_int);
    Some(x.to_biguint().expect("mod_floor of a positive modulus is non-negative"))
}

/// Montgomery encoding `x * 2^n mod p`.
pub fn mont_encode(x: &Natural, ctx: &ModulusContext) -> Result<Natural> {
    ctx.check_below_p(x)?;
    Ok((x << ctx.n()) % ctx.p())
}

/// Inverse of [`mont_encode`]: `x * 2^(-n) mod p`.
pub fn mont_decode(x: &Natural, ctx: &ModulusContext) -> Result<Natural> {
    ctx.check_below_p(x)?;
    Ok((x * ctx.radix_inverse()) % ctx.p())
}

/// Montgomery product `y1 * y2 * 2^(-n) mod p`.
pub fn mont_mul_oracle(y1: &Natural, y2: &Natural, ctx: &ModulusContext) -> Result<Natural> {
    ctx.check_below_p(y1)?;
    ctx.check_below_p(y2)?;
    Ok((y1 * y2 * ctx.radix_inverse()) % ctx.p())
}
