//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and its last entry is nonzero otherwise.

use crate::rat::{denominator_lcm, numerator_gcd, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Rat>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*y", c),
                _ => format!("{}*y^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial c*y^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        UPoly::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - other.coeff(i));
        }
        UPoly::new(v)
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.deg();
        let lead_inv = Rat::one() / divisor.leading();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = rem.deg() - dd;
            let c = rem.leading() * &lead_inv;
            quot[k] = c.clone();
            // rem -= c * y^k * divisor
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &c * b;
                rem.coeffs[k + j] -= t;
            }
            rem = UPoly::new(rem.coeffs);
        }
        (UPoly::new(quot), rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * crate::rat::rat_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading();
            a.scale(&(Rat::one() / lc))
        }
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// Primitive integer coefficients with positive leading sign, ascending.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = denominator_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let scaled: Vec<Rat> = ints.iter().map(|n| Rat::from_integer(n.clone())).collect();
        let g = numerator_gcd(scaled.iter());
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sign;
        ints.iter().map(|n| n / &g).collect()
    }

    /// Content of a rational polynomial: gcd(numerators)/lcm(denominators).
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let l = denominator_lcm(self.coeffs.iter());
        let scaled: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|c| c * Rat::from_integer(l.clone()))
            .collect();
        let g = numerator_gcd(scaled.iter());
        Rat::new(g, l)
    }

    pub fn from_big_coeffs(coeffs: Vec<BigInt>) -> Self {
        UPoly::new(coeffs.into_iter().map(Rat::from_integer).collect())
    }

    /// y^k coefficient view as integer polynomial; requires integer coefficients.
    pub fn big_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Some(c.numer().clone())
                } else {
                    None
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn divrem_roundtrip() {
        let f = p(&[-2, 0, 1]); // y^2 - 2
        let g = p(&[1, 1]); // y + 1
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert_eq!(r, p(&[-1])); // (-1)^2 - 2 = -1
    }

    #[test]
    fn gcd_of_multiple() {
        let f = p(&[-1, 0, 1]); // (y-1)(y+1)
        let g = p(&[-1, 1]); // y - 1
        assert_eq!(f.gcd(&g), g);
    }

    #[test]
    fn squarefree_detects_square() {
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert!(!p(&[1, 2, 1]).is_squarefree()); // (y+1)^2
    }

    #[test]
    fn primitive_integer_normalizes() {
        let f = UPoly::new(vec![rat(-3, 2), rat_int(0), rat(-9, 4)]);
        let ints = f.primitive_integer();
        assert_eq!(ints, vec![crate::rat::big(2), crate::rat::big(0), crate::rat::big(3)]);
    }

    #[test]
    fn content_multiplicative_smoke() {
        let f = UPoly::new(vec![rat(2, 3), rat(4, 3)]);
        let g = UPoly::new(vec![rat(3, 5), rat(9, 5)]);
        let c = f.mul(&g).content();
        assert_eq!(c, f.content() * g.content());
    }

    #[test]
    fn content_multiplicative_1000_trials() {
        // gcd-content of a product of integer polynomials is the product of
        // the gcd-contents
        let mut rng = crate::seeded_rng(14);
        use rand::Rng;
        let mut done = 0;
        while done < 1000 {
            let f = UPoly::from_int_coeffs(
                &(0..rng.gen_range(1..=4))
                    .map(|_| rng.gen_range(-9..=9))
                    .collect::<Vec<_>>(),
            );
            let g = UPoly::from_int_coeffs(
                &(0..rng.gen_range(1..=4))
                    .map(|_| rng.gen_range(-9..=9))
                    .collect::<Vec<_>>(),
            );
            if f.is_zero() || g.is_zero() {
                continue;
            }
            assert_eq!(f.mul(&g).content(), f.content() * g.content());
            done += 1;
        }
    }
}
