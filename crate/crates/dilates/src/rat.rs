//! Arbitrary-precision rationals and small helpers.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps gcd-reduced
//! numerators and positive denominators, exactly the canonical form the rest
//! of the crate relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// lcm of the denominators of an iterator of rationals (1 for empty input).
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l
}

/// gcd of the numerators of an iterator of rationals (0 for empty input).
pub fn numerator_gcd<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut g = BigInt::zero();
    for r in it {
        g = g.gcd(r.numer());
    }
    g
}

/// Exact conversion to f64 when possible, otherwise nearest approximation.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Fast path for small values.
    if let (Some(n), Some(d)) = (to_i128(n), to_i128(d)) {
        return n as f64 / d as f64;
    }
    let bits = n.bits().max(d.bits());
    let shift = bits.saturating_sub(60);
    let n2 = n >> shift;
    let d2 = d >> shift;
    let (Some(n2), Some(d2)) = (to_i128(&n2), to_i128(&d2)) else {
        return f64::NAN;
    };
    n2 as f64 / d2 as f64
}

pub fn to_i128(n: &BigInt) -> Option<i128> {
    i128::try_from(n).ok()
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominator_lcm_basic() {
        let v = [rat(1, 2), rat(3, 4), rat(5, 6)];
        assert_eq!(denominator_lcm(v.iter()), big(12));
    }

    #[test]
    fn rat_reduces() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
    }
}
