//! Integral bases of orders in number fields.
//!
//! Maximal-order computation is out of scope: bases come from the quadratic
//! catalog, a monogenic power basis (user-asserted O_K = Z[theta]), or are
//! supplied explicitly. The basis must start with 1 (a supplied basis
//! lacking a leading 1 is rebased by a unimodular transform) and be
//! multiplicatively closed; closure gives the integer structure tensor for
//! multiplication in basis coordinates.

use crate::error::{Error, Result};
use crate::matrix::{IMat, QMat};
use crate::numfield::{FieldElement, NumberField};
use crate::poly::UPoly;
use crate::rat::{rat, rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisProvenance {
    Catalog,
    Monogenic,
    User,
}

#[derive(Clone, Debug)]
pub struct IntegralBasis {
    pub field: NumberField,
    pub elements: Vec<FieldElement>,
    /// columns = power-basis coordinates of the basis elements
    to_power: QMat,
    from_power: QMat,
    /// tensor[i] = integer matrix of multiplication by e_i in basis coordinates
    tensor: Vec<IMat>,
    pub provenance: BasisProvenance,
}

impl IntegralBasis {
    pub fn new(
        field: NumberField,
        elements: Vec<FieldElement>,
        provenance: BasisProvenance,
    ) -> Result<IntegralBasis> {
        let d = field.degree();
        if elements.len() != d {
            return Err(Error::DimensionMismatch("integral basis size".into()));
        }
        let elements = ensure_leading_one(&field, elements)?;
        let to_power = QMat::from_columns(
            &elements
                .iter()
                .map(|e| e.coeffs.clone())
                .collect::<Vec<_>>(),
        );
        let from_power = to_power
            .inverse()
            .ok_or_else(|| Error::Invalid("basis elements are linearly dependent".into()))?;
        // closure under multiplication; build the structure tensor
        let mut tensor = vec![];
        for i in 0..d {
            let mut t = IMat::zero(d, d);
            for j in 0..d {
                let prod = field.mul(&elements[i], &elements[j]);
                let coords = from_power.mul_vec(&prod.coeffs);
                for (m, c) in coords.iter().enumerate() {
                    if !c.denom().is_one() {
                        return Err(Error::BasisNotClosed);
                    }
                    t[(m, j)] = c.numer().clone();
                }
            }
            tensor.push(t);
        }
        Ok(IntegralBasis {
            field,
            elements,
            to_power,
            from_power,
            tensor,
            provenance,
        })
    }

    /// Catalog basis for Q(sqrt m): {1, sqrt m} or {1, (1 + sqrt m)/2}.
    pub fn quadratic(m: i64) -> Result<(NumberField, IntegralBasis)> {
        if m == 0 || m == 1 {
            return Err(Error::NotSquarefree(m));
        }
        if !is_squarefree(m)? {
            return Err(Error::NotSquarefree(m));
        }
        let field = NumberField::new(UPoly::new(vec![
            rat_int(-m),
            Rat::zero(),
            Rat::one(),
        ]))?;
        let theta = field.theta();
        let e2 = if m.rem_euclid(4) == 1 {
            // (1 + sqrt m)/2
            field.scale(&field.add(&field.one(), &theta), &rat(1, 2))
        } else {
            theta
        };
        let basis = IntegralBasis::new(
            field.clone(),
            vec![field.one(), e2],
            BasisProvenance::Catalog,
        )?;
        Ok((field, basis))
    }

    /// Power basis 1, theta, ..., theta^(d-1); requires a monic defining
    /// polynomial and is user-asserted to span the whole ring of integers.
    pub fn monogenic(field: NumberField) -> Result<IntegralBasis> {
        if !field.poly().leading().is_one() {
            return Err(Error::Invalid(
                "monogenic basis requires a monic defining polynomial".into(),
            ));
        }
        let d = field.degree();
        let elements = (0..d)
            .map(|i| field.pow(&field.theta(), i as u32))
            .collect();
        IntegralBasis::new(field, elements, BasisProvenance::Monogenic)
    }

    /// Basis of Z inside Q.
    pub fn rationals() -> (NumberField, IntegralBasis) {
        let field = NumberField::rationals();
        let basis = IntegralBasis::new(field.clone(), vec![field.one()], BasisProvenance::Catalog)
            .expect("Z is closed");
        (field, basis)
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Basis coordinates of a field element (rational in general).
    pub fn to_coords(&self, a: &FieldElement) -> Vec<Rat> {
        self.from_power.mul_vec(&a.coeffs)
    }

    pub fn from_coords(&self, coords: &[Rat]) -> FieldElement {
        FieldElement {
            coeffs: self.to_power.mul_vec(coords),
        }
    }

    pub fn from_int_coords(&self, coords: &[i64]) -> FieldElement {
        let r: Vec<Rat> = coords.iter().map(|&c| rat_int(c)).collect();
        self.from_coords(&r)
    }

    /// Matrix of multiplication by `a` acting on basis coordinates.
    pub fn mult_matrix_coords(&self, a: &FieldElement) -> QMat {
        let mp = self.field.mult_matrix_power_basis(a);
        self.from_power.mul(&mp).mul(&self.to_power)
    }

    /// Multiplication matrix for an element given by integer coordinates.
    pub fn mult_matrix_int_coords(&self, coords: &[BigInt]) -> IMat {
        let d = self.degree();
        let mut m = IMat::zero(d, d);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            m = m.add(&self.tensor[i].scale(c));
        }
        m
    }

    pub fn tensor(&self) -> &[IMat] {
        &self.tensor
    }
}

fn ensure_leading_one(field: &NumberField, elements: Vec<FieldElement>) -> Result<Vec<FieldElement>> {
    if elements[0] == field.one() {
        return Ok(elements);
    }
    // coordinates of 1 in the proposed basis
    let to_power = QMat::from_columns(
        &elements
            .iter()
            .map(|e| e.coeffs.clone())
            .collect::<Vec<_>>(),
    );
    let from_power = to_power
        .inverse()
        .ok_or_else(|| Error::Invalid("basis elements are linearly dependent".into()))?;
    let coords = from_power.mul_vec(&field.one().coeffs);
    let c: Vec<BigInt> = coords
        .iter()
        .map(|r| {
            if r.denom().is_one() {
                Ok(r.numer().clone())
            } else {
                Err(Error::Invalid("1 is not in the span of the basis over Z".into()))
            }
        })
        .collect::<Result<_>>()?;
    // unimodular U with first column c, so e'_1 = sum c_i e_i = 1
    let u = unimodular_with_first_column(&c)?;
    let d = field.degree();
    let new_elements: Vec<FieldElement> = (0..d)
        .map(|j| {
            let mut acc = field.zero();
            for i in 0..d {
                let coeff = Rat::from_integer(u[(i, j)].clone());
                acc = field.add(&acc, &field.scale(&elements[i], &coeff));
            }
            acc
        })
        .collect();
    Ok(new_elements)
}

/// A unimodular integer matrix whose first column is `c` (gcd of entries 1).
fn unimodular_with_first_column(c: &[BigInt]) -> Result<IMat> {
    let d = c.len();
    // reduce c to e_1 by elementary row operations, accumulating W: W c = e_1,
    // then U = W^{-1}.
    let mut v: Vec<BigInt> = c.to_vec();
    let mut w = IMat::identity(d);
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| !v[i].is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::Invalid("zero coordinate vector for 1".into()));
        }
        if nonzero.len() == 1 {
            let i = nonzero[0];
            if !v[i].abs().is_one() {
                return Err(Error::Invalid("1 is not primitive in the basis lattice".into()));
            }
            if v[i].is_negative() {
                v[i] = -v[i].clone();
                for j in 0..d {
                    w[(i, j)] = -w[(i, j)].clone();
                }
            }
            if i != 0 {
                v.swap(0, i);
                for j in 0..d {
                    let t = w[(0, j)].clone();
                    w[(0, j)] = w[(i, j)].clone();
                    w[(i, j)] = t;
                }
            }
            break;
        }
        let &imin = nonzero
            .iter()
            .min_by_key(|&&i| v[i].abs())
            .expect("nonempty");
        for &j in nonzero.iter().filter(|&&j| j != imin) {
            let q = v[j].div_floor(&v[imin]);
            if !q.is_zero() {
                let t = &q * &v[imin];
                v[j] -= t;
                for k in 0..d {
                    let t = &q * &w[(imin, k)];
                    w[(j, k)] -= t;
                }
            }
        }
    }
    // U = W^{-1}: integer since W is unimodular
    let wq = w.to_qmat();
    let inv = wq.inverse().expect("unimodular");
    let mut u = IMat::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            debug_assert!(inv[(i, j)].denom().is_one());
            u[(i, j)] = inv[(i, j)].numer().clone();
        }
    }
    Ok(u)
}

fn is_squarefree(m: i64) -> Result<bool> {
    let mut n = m.unsigned_abs();
    if n > 1_000_000 {
        return Err(Error::Invalid(
            "squarefree check supported for |m| <= 10^6".into(),
        ));
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(false);
            }
        }
        p += 1;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_catalog_sqrt2() {
        let (field, basis) = IntegralBasis::quadratic(2).unwrap();
        assert_eq!(basis.elements[0], field.one());
        assert_eq!(basis.elements[1], field.theta());
    }

    #[test]
    fn quadratic_catalog_golden() {
        // m = 5 = 1 mod 4: {1, (1+sqrt5)/2}
        let (field, basis) = IntegralBasis::quadratic(5).unwrap();
        let phi = basis.elements[1].clone();
        // phi^2 = phi + 1
        assert_eq!(
            field.mul(&phi, &phi),
            field.add(&phi, &field.one())
        );
    }

    #[test]
    fn quadratic_catalog_gaussian() {
        let (field, basis) = IntegralBasis::quadratic(-1).unwrap();
        assert_eq!(basis.elements[1], field.theta());
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(IntegralBasis::quadratic(4).is_err());
        assert!(IntegralBasis::quadratic(12).is_err());
    }

    #[test]
    fn rejects_unclosed_basis() {
        // {1, theta/2} in Q(sqrt 2) is not multiplicatively closed
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let half_theta = field.scale(&field.theta(), &rat(1, 2));
        assert!(matches!(
            IntegralBasis::new(field.clone(), vec![field.one(), half_theta], BasisProvenance::User),
            Err(Error::BasisNotClosed)
        ));
    }

    #[test]
    fn rebases_missing_leading_one() {
        // supply {1 + sqrt2, sqrt2}: Z-span equals Z[sqrt2] but e1 != 1
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let t = field.theta();
        let e1 = field.add(&field.one(), &t);
        let b = IntegralBasis::new(field.clone(), vec![e1, t], BasisProvenance::User).unwrap();
        assert_eq!(b.elements[0], field.one());
        // the rebased lattice is still Z[sqrt2]: coords of sqrt2 are integral
        let coords = b.to_coords(&field.theta());
        assert!(coords.iter().all(|c| c.denom().is_one()));
    }

    #[test]
    fn coords_roundtrip() {
        let (_, basis) = IntegralBasis::quadratic(5).unwrap();
        let x = basis.from_int_coords(&[3, -2]);
        let coords = basis.to_coords(&x);
        assert_eq!(coords, vec![rat_int(3), rat_int(-2)]);
    }

    #[test]
    fn monogenic_cubic() {
        // y^3 - 2 is monogenic
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 0, 1])).unwrap();
        let basis = IntegralBasis::monogenic(field.clone()).unwrap();
        assert_eq!(basis.degree(), 3);
        let t = field.theta();
        let t2 = field.mul(&t, &t);
        let coords = basis.to_coords(&field.mul(&t2, &t2)); // theta^4 = 2 theta
        assert_eq!(coords, vec![rat_int(0), rat_int(2), rat_int(0)]);
    }
}
