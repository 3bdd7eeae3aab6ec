//! Number fields K = Q[y]/(f) with exact element arithmetic.
//!
//! The defining polynomial is stored primitive (integer coefficients,
//! content 1) and may be non-monic; elements are rational coefficient
//! vectors in the power basis 1, theta, ..., theta^(d-1) and all reduction
//! happens over Q. Irreducibility is certified where possible (mod-p
//! certificate, Zassenhaus fallback up to degree 6) and otherwise accepted
//! on trust with a flag.

pub mod basis;
pub mod ideal;
pub mod norm;

pub use basis::{BasisProvenance, IntegralBasis};
pub use ideal::{
    denominator_ideal, ideal_intersect, ideal_inverse, ideal_pow, ideal_product,
    imat_to_rows_i64, mult_matrix, FractionalIdealLattice,
};
pub use norm::{denominator_norm, norm_form};

use crate::error::{Error, Result};
use crate::matrix::QMat;
use crate::poly::factor::is_irreducible_rational;
use crate::poly::UPoly;
use crate::rat::{rat_int, Rat};
use num_traits::{One, Zero};
use rand::Rng;

/// How the defining polynomial's irreducibility was established.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IrreducibilityStatus {
    Certified,
    Trusted,
}

#[derive(Clone, Debug)]
pub struct NumberField {
    f: UPoly, // primitive integer coefficients
    degree: usize,
    pub irreducibility: IrreducibilityStatus,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElement {
    pub coeffs: Vec<Rat>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl NumberField {
    /// Build a field from a defining polynomial with rational coefficients;
    /// the stored polynomial is its primitive integer form.
    pub fn new(f: UPoly) -> Result<NumberField> {
        let Some(d) = f.degree() else {
            return Err(Error::Invalid("zero defining polynomial".into()));
        };
        if d == 0 {
            return Err(Error::Invalid("constant defining polynomial".into()));
        }
        let prim = UPoly::from_big_coeffs(f.primitive_integer());
        if !prim.is_squarefree() {
            return Err(Error::Invalid("defining polynomial is not squarefree".into()));
        }
        let irreducibility = match is_irreducible_rational(&prim) {
            Some(true) => IrreducibilityStatus::Certified,
            Some(false) => {
                return Err(Error::Invalid("defining polynomial is reducible".into()))
            }
            None => IrreducibilityStatus::Trusted,
        };
        Ok(NumberField {
            f: prim,
            degree: d,
            irreducibility,
        })
    }

    pub fn rationals() -> NumberField {
        // y - 1 defines Q with theta = 1
        NumberField::new(UPoly::from_int_coeffs(&[-1, 1])).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &UPoly {
        &self.f
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.rational(Rat::one())
    }

    pub fn rational(&self, r: Rat) -> FieldElement {
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[0] = r;
        FieldElement { coeffs }
    }

    pub fn theta(&self) -> FieldElement {
        if self.degree == 1 {
            // theta is the rational root of the linear polynomial
            let root = -self.f.coeff(0) / self.f.coeff(1);
            return self.rational(root);
        }
        let mut coeffs = vec![Rat::zero(); self.degree];
        coeffs[1] = Rat::one();
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<Rat>) -> Result<FieldElement> {
        if coeffs.len() != self.degree {
            return Err(Error::DimensionMismatch("element coefficients".into()));
        }
        Ok(FieldElement { coeffs })
    }

    /// Reduce a polynomial in theta modulo the defining polynomial.
    pub fn reduce(&self, p: &UPoly) -> FieldElement {
        let r = if p.degree().map_or(false, |dp| dp >= self.degree) {
            p.rem(&self.f)
        } else {
            p.clone()
        };
        let mut coeffs = vec![Rat::zero(); self.degree];
        for (i, c) in r.coeffs.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        FieldElement { coeffs }
    }

    pub fn to_upoly(&self, a: &FieldElement) -> UPoly {
        UPoly::new(a.coeffs.clone())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(&self.to_upoly(a).mul(&self.to_upoly(b)))
    }

    pub fn scale(&self, a: &FieldElement, c: &Rat) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let pa = self.to_upoly(a);
        // extended euclid: s*pa + t*f = gcd = const
        let (mut r0, mut r1) = (pa, self.f.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0.degree(), Some(0), "defining polynomial not coprime to element");
        let inv_c = Rat::one() / r0.coeff(0);
        Some(self.reduce(&s0.scale(&inv_c)))
    }

    pub fn pow(&self, a: &FieldElement, e: u32) -> FieldElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of multiplication by `a` in the power basis.
    pub fn mult_matrix_power_basis(&self, a: &FieldElement) -> QMat {
        let d = self.degree;
        let mut m = QMat::zero(d, d);
        let mut cur = a.clone();
        for j in 0..d {
            for i in 0..d {
                m[(i, j)] = cur.coeffs[i].clone();
            }
            if j + 1 < d {
                cur = self.mul(&cur, &self.theta());
            }
        }
        m
    }

    /// Field norm N(a): determinant of the multiplication map.
    pub fn norm(&self, a: &FieldElement) -> Rat {
        self.mult_matrix_power_basis(a).det()
    }

    /// Monic minimal polynomial of `a` over Q.
    pub fn min_poly(&self, a: &FieldElement) -> UPoly {
        let d = self.degree;
        // find first linear dependence among 1, a, a^2, ...
        let mut powers: Vec<FieldElement> = vec![self.one()];
        for _ in 0..d {
            let last = powers.last().unwrap();
            powers.push(self.mul(last, a));
        }
        for m in 1..=d {
            // solve sum_{i<m} c_i a^i = a^m
            let cols: Vec<Vec<Rat>> = powers[..m].iter().map(|p| p.coeffs.clone()).collect();
            if let Some(sol) = solve_least(cols, &powers[m].coeffs, d) {
                let mut coeffs = vec![Rat::zero(); m + 1];
                for (i, c) in sol.iter().enumerate() {
                    coeffs[i] = -c.clone();
                }
                coeffs[m] = Rat::one();
                return UPoly::new(coeffs);
            }
        }
        unreachable!("element of degree-d field has minimal polynomial of degree <= d")
    }
}

/// Solve an overdetermined consistent system (columns as generators); None
/// when the target is outside the span.
fn solve_least(cols: Vec<Vec<Rat>>, target: &[Rat], rows: usize) -> Option<Vec<Rat>> {
    let n = cols.len();
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rat::one() / aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // consistency: no row with zero coefficients and nonzero rhs
    for row in aug.iter() {
        if row[..n].iter().all(|x| x.is_zero()) && !row[n].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = aug[i][n].clone();
    }
    Some(sol)
}

/// A number field together with the dilates λ1, ..., λk (λ0 = 1 implicit).
#[derive(Clone, Debug)]
pub struct DilateSystem {
    pub field: NumberField,
    pub dilates: Vec<FieldElement>,
}

impl DilateSystem {
    pub fn new(field: NumberField, dilates: Vec<FieldElement>) -> Result<DilateSystem> {
        if dilates.is_empty() {
            return Err(Error::Invalid("at least one dilate required".into()));
        }
        for l in &dilates {
            if l.coeffs.len() != field.degree() {
                return Err(Error::DimensionMismatch("dilate coefficients".into()));
            }
            if l.is_zero() {
                return Err(Error::Invalid("zero dilate".into()));
            }
        }
        Ok(DilateSystem { field, dilates })
    }

    pub fn k(&self) -> usize {
        self.dilates.len()
    }

    /// Do the dilates generate the whole field? Checked through the degree of
    /// the minimal polynomial of a generic small integer combination, with
    /// three seeded retries.
    pub fn generates_field(&self, seed: u64) -> bool {
        let d = self.field.degree();
        if d == 1 {
            return true;
        }
        let mut rng = crate::seeded_rng(seed);
        for _ in 0..3 {
            let mut combo = self.field.zero();
            for l in &self.dilates {
                let c = rat_int(rng.gen_range(-5..=5i64));
                combo = self.field.add(&combo, &self.field.scale(l, &c));
            }
            if combo.is_zero() {
                continue;
            }
            let mp = self.field.min_poly(&combo);
            if mp.deg() == d {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sqrt2() -> NumberField {
        NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn theta_squared_is_two() {
        let k = sqrt2();
        let t = k.theta();
        assert_eq!(k.mul(&t, &t), k.rational(rat_int(2)));
    }

    #[test]
    fn one_times_x() {
        let k = sqrt2();
        let x = k.element(vec![rat(1, 3), rat(-2, 5)]).unwrap();
        assert_eq!(k.mul(&k.one(), &x), x);
    }

    #[test]
    fn conjugate_product() {
        // (1+theta)(1-theta) = 1 - 2 = -1 in Q(sqrt 2)
        let k = sqrt2();
        let t = k.theta();
        let a = k.add(&k.one(), &t);
        let b = k.sub(&k.one(), &t);
        assert_eq!(k.mul(&a, &b), k.rational(rat_int(-1)));
    }

    #[test]
    fn nonmonic_field_arithmetic() {
        // f = 2y^2 - 1, theta = 1/sqrt(2); theta^2 = 1/2
        let k = NumberField::new(UPoly::from_int_coeffs(&[-1, 0, 2])).unwrap();
        let t = k.theta();
        assert_eq!(k.mul(&t, &t), k.rational(rat(1, 2)));
    }

    #[test]
    fn inverse_works() {
        let k = sqrt2();
        let a = k.element(vec![rat_int(3), rat_int(1)]).unwrap(); // 3 + sqrt2
        let inv = k.inverse(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
    }

    #[test]
    fn norm_on_quadratic() {
        // N(a + b sqrt2) = a^2 - 2 b^2
        let k = sqrt2();
        let a = k.element(vec![rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(k.norm(&a), rat_int(7));
    }

    #[test]
    fn norm_multiplicative() {
        let k = sqrt2();
        let mut rng = crate::seeded_rng(15);
        use rand::Rng;
        for _ in 0..100 {
            let a = k
                .element(vec![
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                ])
                .unwrap();
            let b = k
                .element(vec![
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                ])
                .unwrap();
            assert_eq!(k.norm(&k.mul(&a, &b)), k.norm(&a) * k.norm(&b));
        }
    }

    #[test]
    fn min_poly_of_theta() {
        let k = sqrt2();
        let mp = k.min_poly(&k.theta());
        assert_eq!(mp, UPoly::new(vec![rat_int(-2), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn min_poly_of_rational() {
        let k = sqrt2();
        let mp = k.min_poly(&k.rational(rat(7, 2)));
        assert_eq!(mp.deg(), 1);
    }

    #[test]
    fn generation_check() {
        let k = sqrt2();
        let sys = DilateSystem::new(k.clone(), vec![k.theta()]).unwrap();
        assert!(sys.generates_field(1));
        let sys2 = DilateSystem::new(k.clone(), vec![k.rational(rat(3, 2))]).unwrap();
        assert!(!sys2.generates_field(1));
    }

    #[test]
    fn rejects_reducible() {
        assert!(NumberField::new(UPoly::from_int_coeffs(&[-1, 0, 1])).is_err());
    }
}
