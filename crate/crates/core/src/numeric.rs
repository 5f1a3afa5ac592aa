//! Exact arithmetic helpers shared by the threshold comparisons.
//!
//! Every `f64` is a dyadic rational, so real-valued parameters (L, delta,
//! epsilon) are lifted into [`BigRational`] without rounding and all
//! threshold comparisons are decided exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest bit length we are willing to materialise for a single threshold.
pub const MAX_EXACT_BITS: u64 = 1 << 24;

pub fn ratio_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("{x} is not a finite real")))
}

pub fn ratio_from_uint(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

pub fn ratio_from_u64(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `base^exp` for a possibly negative exponent. `0^negative` is reported as `None`.
pub fn pow_signed(base: &BigRational, exp: i64) -> Option<BigRational> {
    if exp >= 0 {
        return Some(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return None;
    }
    Some(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

/// Decides `count <= delta^(twice_exp / 2)` exactly for `delta > 0`.
///
/// Both sides are nonnegative, so squaring preserves the order:
/// `count^2 <= delta^twice_exp`.
pub fn le_half_power(count: &BigUint, delta: &BigRational, twice_exp: i64) -> bool {
    debug_assert!(delta.is_positive());
    let lhs = ratio_from_uint(&(count * count));
    match pow_signed(delta, twice_exp) {
        Some(rhs) => lhs <= rhs,
        None => false,
    }
}

/// `floor(value^exp)` for a nonnegative dyadic `value`, refusing results whose
/// bit length would exceed [`MAX_EXACT_BITS`].
pub fn floor_pow(value: f64, exp: u64) -> Result<BigUint> {
    let r = ratio_from_f64(value)?;
    if r.is_negative() {
        return Err(Error::InvalidParameter(format!("negative base {value}")));
    }
    let numer_bits = r.numer().bits().max(1);
    if numer_bits.saturating_mul(exp) > MAX_EXACT_BITS {
        return Err(Error::InvalidParameter(format!(
            "{value}^{exp} needs more than {MAX_EXACT_BITS} bits"
        )));
    }
    let numer = r.numer().to_biguint().expect("nonnegative");
    let denom = r.denom().to_biguint().expect("positive");
    let e = exp as usize;
    Ok(num_traits::pow(numer, e).div_floor(&num_traits::pow(denom, e)))
}

pub fn ceil_ratio(r: &BigRational) -> BigUint {
    r.ceil().to_integer().to_biguint().unwrap_or_else(BigUint::zero)
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_powers() {
        let two = ratio_from_u64(2);
        // 2 > 2^{1/2}
        assert!(!le_half_power(&BigUint::from(2u32), &two, 1));
        assert!(le_half_power(&BigUint::from(1u32), &two, 1));
        // 0 <= 2^{-1/2}, 1 > 2^{-1/2}
        assert!(le_half_power(&BigUint::zero(), &two, -1));
        assert!(!le_half_power(&BigUint::one(), &two, -1));
        // 4 <= 16^{1/2} exactly on the boundary
        assert!(le_half_power(&BigUint::from(4u32), &ratio_from_u64(16), 1));
    }

    #[test]
    fn floor_pow_dyadic() {
        assert_eq!(floor_pow(2.0, 25).unwrap(), BigUint::from(1u64 << 25));
        // 1.5^3 = 3.375
        assert_eq!(floor_pow(1.5, 3).unwrap(), BigUint::from(3u32));
        assert!(floor_pow(2.0, MAX_EXACT_BITS + 1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
    }
}
