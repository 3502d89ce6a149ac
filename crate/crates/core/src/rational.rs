//! Exact rational helpers.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

pub type Rational = num::BigRational;

/// `num / den` as an exact rational.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64_exact(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .fold(Rational::zero(), |acc, v| if *v > acc { v.clone() } else { acc })
}

/// Smallest integer `l >= 0` with `base^l >= target`, for `base > 1`.
pub fn log_ceil(base: &Rational, target: &Rational) -> u32 {
    assert!(*base > Rational::one(), "logarithm base must exceed 1");
    let mut l = 0;
    let mut acc = Rational::one();
    while acc < *target {
        acc *= base;
        l += 1;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_i64(&q(7, 2)), 3);
        assert_eq!(ceil_i64(&q(7, 2)), 4);
        assert_eq!(floor_i64(&q(-1, 2)), -1);
        assert_eq!(to_i64_exact(&q(6, 3)), Some(2));
        assert_eq!(to_i64_exact(&q(1, 3)), None);
        assert_eq!(common_denominator(&[q(1, 4), q(1, 6)]), BigInt::from(12));
    }

    #[test]
    fn log_ceil_counts_powers() {
        assert_eq!(log_ceil(&qi(2), &qi(1)), 0);
        assert_eq!(log_ceil(&qi(2), &qi(8)), 3);
        assert_eq!(log_ceil(&qi(2), &qi(9)), 4);
        assert_eq!(pow(&q(3, 2), 2), q(9, 4));
    }
}
