//! Small integer helpers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Deterministic trial division; adequate for inputs below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `Some(p)` when `n` is a prime that fits in 64 bits.
pub fn as_prime(n: &BigInt) -> Option<u64> {
    n.to_u64().filter(|&p| is_prime_u64(p))
}
