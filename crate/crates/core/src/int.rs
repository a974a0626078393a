//! Integer scalar abstraction for group element arithmetic.

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use std::fmt;
use std::hash::Hash;

/// Exact signed integer scalar. Implemented by `i64`, `i128` and
/// `num_bigint::BigInt`; group element types are generic over it.
pub trait Int:
    Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits in any Int")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// `base^exp` by repeated squaring.
pub fn pow_u<I: Int>(base: &I, mut exp: u32) -> I {
    let mut result = I::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    result
}

/// Euclidean remainder in `[0, modulus)`; `modulus > 0`.
pub fn mod_euclid<I: Int>(v: &I, modulus: &I) -> I {
    v.mod_floor(modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn pow_matches_checked_pow() {
        for b in [-3i64, -1, 0, 1, 2, 5] {
            for e in 0u32..12 {
                assert_eq!(pow_u(&b, e), b.checked_pow(e).unwrap());
                assert_eq!(
                    pow_u(&BigInt::from(b), e),
                    BigInt::from(b.checked_pow(e).unwrap())
                );
            }
        }
    }

    #[test]
    fn mod_euclid_is_nonnegative() {
        for v in [-7i64, -1, 0, 1, 9] {
            let r = mod_euclid(&v, &4);
            assert!((0..4).contains(&r));
            assert_eq!((v - r) % 4, 0);
        }
    }
}
