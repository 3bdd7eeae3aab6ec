//! Exact dyadic arithmetic: values m * 2^e with BigInt mantissa.
//!
//! Addition and multiplication are exact; explicit directed rounding trims
//! mantissas to a working precision, so every certified bound is computed
//! with outward rounding only where stated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    Down,
    Up,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// Exact: every finite f64 is dyadic.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite());
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(sign) * BigInt::from(mant), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        if a.is_zero() {
            return (BigInt::zero(), b.mant.clone(), b.exp);
        }
        if b.is_zero() {
            return (a.mant.clone(), BigInt::zero(), a.exp);
        }
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as u64;
        let mb = &b.mant << (b.exp - e) as u64;
        (ma, mb, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, other);
        Dyadic::new(a - b, e)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }

    pub fn le(&self, other: &Dyadic) -> bool {
        self.cmp_dyadic(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &Dyadic) -> bool {
        self.cmp_dyadic(other) == Ordering::Less
    }

    /// Directed rounding to at most `prec` mantissa bits.
    pub fn round(&self, prec: u32, dir: Dir) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = (bits - prec as u64) as i64;
        let m = match dir {
            Dir::Down => &self.mant >> k as u64,
            Dir::Up => -((-&self.mant) >> k as u64),
        };
        Dyadic::new(m, self.exp + k)
    }

    /// Directed quotient to about `prec` result bits.
    pub fn div(&self, den: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        assert!(!den.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - self.bits() as i64;
        let shift = shift.max(0) as u64;
        let num = &self.mant << shift;
        let q = match dir {
            Dir::Down => num.div_floor(&den.mant),
            Dir::Up => -((-num).div_floor(&den.mant)),
        };
        Dyadic::new(q, self.exp - den.exp - shift as i64)
    }

    /// Directed square root (self >= 0) with about `prec` result bits.
    pub fn sqrt(&self, prec: u32, dir: Dir) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let p = prec as i64;
        let target = self.exp + 2 * p;
        let (n, shift_exact) = if target >= 0 {
            (&self.mant << target as u64, true)
        } else {
            let n = &self.mant >> (-target) as u64;
            let back = &n << (-target) as u64;
            (n, back == self.mant)
        };
        let r = n.sqrt();
        // n <= self * 2^(2p) always (the shift floors), so r*2^-p is a lower
        // bound; self * 2^(2p) <= n + 1 gives the upper bound. Perfect
        // squares stay exact in both directions.
        if shift_exact && &r * &r == n {
            return Dyadic::new(r, -p);
        }
        match dir {
            Dir::Down => Dyadic::new(r, -p),
            Dir::Up => Dyadic::new(r + 1, -p),
        }
    }

    pub fn to_rat(&self) -> crate::rat::Rat {
        use num_traits::One;
        let one = BigInt::one();
        if self.exp >= 0 {
            crate::rat::Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            crate::rat::Rat::new(self.mant.clone(), &one << (-self.exp) as u64)
        }
    }

    /// Conservative f64 conversion in the requested direction.
    pub fn to_f64_dir(&self, dir: Dir) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 53 {
            let k = bits - 53;
            let m = match dir {
                Dir::Down => &self.mant >> k,
                Dir::Up => -((-&self.mant) >> k),
            };
            (m, self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let base = m.to_f64().unwrap_or(f64::NAN);
        let v = base * 2f64.powi(e as i32);
        if v.is_finite() && Dyadic::from_f64(v) == *self {
            return v; // conversion was exact
        }
        // one ulp outward for the rounding in powi/mul
        match dir {
            Dir::Down => v.next_down(),
            Dir::Up => v.next_up(),
        }
    }
}

/// Complex numbers with exact dyadic parts.
#[derive(Clone, Debug)]
pub struct CDyadic {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl CDyadic {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        CDyadic { re, im }
    }

    pub fn zero() -> Self {
        CDyadic::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        CDyadic::new(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn add(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn neg(&self) -> CDyadic {
        CDyadic::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> CDyadic {
        CDyadic::new(self.re.clone(), self.im.neg())
    }

    /// |z|^2, exact.
    pub fn norm_sq(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs_up(&self, prec: u32) -> Dyadic {
        self.norm_sq().sqrt(prec, Dir::Up)
    }

    pub fn abs_down(&self, prec: u32) -> Dyadic {
        self.norm_sq().sqrt(prec, Dir::Down)
    }

    pub fn round(&self, prec: u32) -> CDyadic {
        CDyadic::new(self.re.round(prec, Dir::Down), self.im.round(prec, Dir::Down))
    }

    /// Approximate quotient for Newton steps (no certified direction).
    pub fn div_approx(&self, den: &CDyadic, prec: u32) -> CDyadic {
        let d2 = den.norm_sq();
        let num = self.mul(&den.conj());
        CDyadic::new(
            num.re.div(&d2, prec, Dir::Down),
            num.im.div(&d2, prec, Dir::Down),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_mul_exact() {
        let a = Dyadic::from_f64(1.5);
        let b = Dyadic::from_f64(0.25);
        assert_eq!(a.add(&b).to_rat(), crate::rat::rat(7, 4));
        assert_eq!(a.mul(&b).to_rat(), crate::rat::rat(3, 8));
    }

    #[test]
    fn directed_rounding_brackets() {
        let a = Dyadic::new(BigInt::from((1i64 << 40) + 12345), -40);
        let lo = a.round(20, Dir::Down);
        let hi = a.round(20, Dir::Up);
        assert!(lo.le(&a) && a.le(&hi));
        assert!(lo.lt(&hi));
    }

    #[test]
    fn sqrt_brackets_value() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(80, Dir::Down);
        let hi = two.sqrt(80, Dir::Up);
        assert!(lo.mul(&lo).le(&two));
        assert!(two.le(&hi.mul(&hi)));
        let width = hi.sub(&lo);
        assert!(width.le(&Dyadic::new(BigInt::from(1), -70)));
    }

    #[test]
    fn div_directed() {
        let a = Dyadic::from_i64(1);
        let b = Dyadic::from_i64(3);
        let lo = a.div(&b, 60, Dir::Down);
        let hi = a.div(&b, 60, Dir::Up);
        let third = crate::rat::rat(1, 3);
        assert!(lo.to_rat() <= third && third <= hi.to_rat());
    }

    #[test]
    fn f64_roundtrip_directed() {
        let a = Dyadic::from_f64(0.1).mul(&Dyadic::from_f64(0.7));
        let lo = a.to_f64_dir(Dir::Down);
        let hi = a.to_f64_dir(Dir::Up);
        let exact = a.to_rat();
        assert!(crate::rat::Rat::from_float(lo).unwrap() <= exact);
        assert!(exact <= crate::rat::Rat::from_float(hi).unwrap());
    }

    #[test]
    fn complex_mul() {
        // (1+2i)(3-i) = 5 + 5i
        let a = CDyadic::from_f64(1.0, 2.0);
        let b = CDyadic::from_f64(3.0, -1.0);
        let p = a.mul(&b);
        assert_eq!(p.re.to_rat(), crate::rat::rat_int(5));
        assert_eq!(p.im.to_rat(), crate::rat::rat_int(5));
    }
}
