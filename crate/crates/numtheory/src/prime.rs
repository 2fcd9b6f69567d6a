use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Natural;

const WITNESSES: [u32; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

/// Miller-Rabin test with the first 24 prime bases.
///
/// Deterministic below 3.3e24 and overwhelmingly reliable above.
pub fn is_probable_prime(n: &Natural) -> bool {
    let two = BigUint::from(2u8);
    if n < &two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if n == &w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u8;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `2^bits`, for `bits >= 2`.
pub fn largest_prime_below_pow2(bits: usize) -> Natural {
    assert!(bits >= 2, "no prime below 2^{bits}");
    let mut candidate: Natural = (Natural::one() << bits) - 1u8;
    if candidate.is_even() {
        candidate -= 1u8;
    }
    while !is_probable_prime(&candidate) {
        candidate -= 2u8;
    }
    candidate
}
