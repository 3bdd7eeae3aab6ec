//! Fractional ideals as integer lattices in integral-basis coordinates.
//!
//! An ideal is (1/denom) * lattice with the lattice in canonical HNF and the
//! scalar denominator minimal, so equality is structural. Construction
//! verifies closure under multiplication by every basis element.

use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::matrix::IMat;
use crate::numfield::basis::IntegralBasis;
use crate::numfield::{DilateSystem, FieldElement};
use crate::rat::{denominator_lcm, to_i128, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionalIdealLattice {
    pub lattice: IntegerLattice,
    pub denom: i64,
}

impl FractionalIdealLattice {
    /// Normalized, closure-checked constructor.
    pub fn new(lattice: IntegerLattice, denom: i64, basis: &IntegralBasis) -> Result<Self> {
        let fil = Self::normalize(lattice, denom);
        fil.verify_closed(basis)?;
        Ok(fil)
    }

    fn normalize(lattice: IntegerLattice, denom: i64) -> Self {
        assert!(denom >= 1);
        let mut content: i64 = 0;
        for col in lattice.basis_cols() {
            for v in col {
                content = content.abs().gcd(&v.abs());
            }
        }
        let g = content.gcd(&denom);
        if g <= 1 {
            return FractionalIdealLattice { lattice, denom };
        }
        let cols: Vec<Vec<i64>> = lattice
            .basis_cols()
            .iter()
            .map(|c| c.iter().map(|&x| x / g).collect())
            .collect();
        FractionalIdealLattice {
            lattice: IntegerLattice::hnf(&cols).expect("scaling preserves rank"),
            denom: denom / g,
        }
    }

    fn verify_closed(&self, basis: &IntegralBasis) -> Result<()> {
        for t in basis.tensor() {
            for col in self.lattice.basis_cols() {
                let big: Vec<BigInt> = col.iter().map(|&x| BigInt::from(x)).collect();
                let image = t.mul_vec(&big);
                let image_i64: Vec<i64> = image
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("ideal closure")))
                    .collect::<Result<_>>()?;
                if !self.lattice.member(&image_i64) {
                    return Err(Error::BasisNotClosed);
                }
            }
        }
        Ok(())
    }

    pub fn whole_ring(basis: &IntegralBasis) -> Self {
        FractionalIdealLattice {
            lattice: IntegerLattice::standard(basis.degree()),
            denom: 1,
        }
    }

    /// Ideal generated by rational coordinate vectors.
    pub fn from_generators(gens: &[Vec<Rat>], basis: &IntegralBasis) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let all: Vec<&Rat> = gens.iter().flatten().collect();
        let q = denominator_lcm(all.into_iter());
        let q_i64 = q.to_i64().ok_or(Error::Overflow("ideal denominator"))?;
        let cols: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|r| {
                        let scaled = r.numer() * (&q / r.denom());
                        scaled.to_i64().ok_or(Error::Overflow("ideal generator"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        // generators of the ideal lattice: e_i * g_j for all basis elements e_i
        let d = basis.degree();
        let mut closure_cols: Vec<Vec<i64>> = vec![];
        for col in &cols {
            let big: Vec<BigInt> = col.iter().map(|&x| BigInt::from(x)).collect();
            for t in basis.tensor() {
                let img = t.mul_vec(&big);
                closure_cols.push(
                    img.iter()
                        .map(|x| x.to_i64().ok_or(Error::Overflow("ideal generator")))
                        .collect::<Result<_>>()?,
                );
            }
        }
        let _ = d;
        let lattice = IntegerLattice::hnf(&closure_cols)?;
        FractionalIdealLattice::new(lattice, q_i64, basis)
    }

    /// Principal ideal generated by a field element.
    pub fn principal(a: &FieldElement, basis: &IntegralBasis) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Self::from_generators(&[basis.to_coords(a)], basis)
    }

    /// {x in K : a*x is integral}: the inverse image of O under
    /// multiplication by a.
    pub fn inverse_image(a: &FieldElement, basis: &IntegralBasis) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let m = basis.mult_matrix_coords(a);
        let minv = m.inverse().expect("nonzero element");
        let gens: Vec<Vec<Rat>> = (0..basis.degree()).map(|j| minv.col(j)).collect();
        Self::from_generators(&gens, basis)
    }

    /// Ideal norm [O : I] as an exact rational (an integer for integral ideals).
    pub fn norm(&self) -> Rat {
        let idx = Rat::from_integer(BigInt::from(self.lattice.index()));
        let q = Rat::from_integer(BigInt::from(self.denom).pow(self.lattice.dim() as u32));
        idx / q
    }

    pub fn is_integral(&self) -> bool {
        self.denom == 1
    }

    /// Does this ideal contain the other one?
    pub fn contains(&self, other: &Self) -> bool {
        let q = (self.denom as i128).lcm(&(other.denom as i128)) as i64;
        let a = self.lattice.scaled(q / self.denom);
        let b = other.lattice.scaled(q / other.denom);
        a.contains_lattice(&b)
    }

    /// Membership of a field element.
    pub fn contains_element(&self, a: &FieldElement, basis: &IntegralBasis) -> bool {
        let coords = basis.to_coords(a);
        let scaled: Vec<i64> = match coords
            .iter()
            .map(|r| {
                let v = r * crate::rat::rat_int(self.denom);
                if v.denom().is_one() {
                    v.numer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i64>>>()
        {
            Some(v) => v,
            None => return false,
        };
        self.lattice.member(&scaled)
    }

    /// Coordinates of this ideal's lattice relative to an ambient ideal
    /// containing it (columns must come out integral).
    pub fn coords_in(&self, ambient: &Self) -> Result<IntegerLattice> {
        let amb_inv = ambient
            .lattice
            .to_qmat()
            .inverse()
            .expect("full-rank lattice");
        let scale = Rat::new(BigInt::from(ambient.denom), BigInt::from(self.denom));
        let mut cols = vec![];
        for col in self.lattice.basis_cols() {
            let v: Vec<Rat> = col.iter().map(|&x| crate::rat::rat_int(x)).collect();
            let sol = amb_inv.mul_vec(&v);
            let mut out = vec![];
            for s in sol {
                let s = s * &scale;
                if !s.denom().is_one() {
                    return Err(Error::NotASublattice);
                }
                out.push(s.numer().to_i64().ok_or(Error::Overflow("ideal coords"))?);
            }
            cols.push(out);
        }
        IntegerLattice::hnf(&cols)
    }
}

/// Intersection of two fractional ideals.
pub fn ideal_intersect(
    a: &FractionalIdealLattice,
    b: &FractionalIdealLattice,
    basis: &IntegralBasis,
) -> Result<FractionalIdealLattice> {
    let q = to_i128(&(BigInt::from(a.denom).lcm(&BigInt::from(b.denom))))
        .and_then(|v| i64::try_from(v).ok())
        .ok_or(Error::Overflow("ideal intersect"))?;
    let la = a.lattice.scaled(q / a.denom);
    let lb = b.lattice.scaled(q / b.denom);
    FractionalIdealLattice::new(la.intersect(&lb)?, q, basis)
}

/// Product of two fractional ideals: HNF of the pairwise generator products.
pub fn ideal_product(
    a: &FractionalIdealLattice,
    b: &FractionalIdealLattice,
    basis: &IntegralBasis,
) -> Result<FractionalIdealLattice> {
    let d = basis.degree();
    let mut cols: Vec<Vec<i64>> = vec![];
    for u in a.lattice.basis_cols() {
        let ub: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let mu = basis.mult_matrix_int_coords(&ub);
        for v in b.lattice.basis_cols() {
            let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            let prod = mu.mul_vec(&vb);
            cols.push(
                prod.iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("ideal product")))
                    .collect::<Result<_>>()?,
            );
        }
    }
    let _ = d;
    let q = (a.denom as i128)
        .checked_mul(b.denom as i128)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or(Error::Overflow("ideal product denominator"))?;
    FractionalIdealLattice::new(IntegerLattice::hnf(&cols)?, q, basis)
}

/// Inverse ideal {x in K : x * I is integral}.
pub fn ideal_inverse(
    a: &FractionalIdealLattice,
    basis: &IntegralBasis,
) -> Result<FractionalIdealLattice> {
    let d = basis.degree();
    // treat the integer lattice part J = a.lattice as an integral ideal;
    // J^{-1} is contained in (1/N(J)) O since N(J) annihilates O/J
    let nj = i64::try_from(a.lattice.index()).map_err(|_| Error::Overflow("ideal norm"))?;
    // solve M_{l_j} c == 0 mod nj for all basis columns l_j
    let mut stacked = IMat::zero(d * d, d + d * d);
    for (jcol, col) in a.lattice.basis_cols().iter().enumerate() {
        let cb: Vec<BigInt> = col.iter().map(|&x| BigInt::from(x)).collect();
        let m = basis.mult_matrix_int_coords(&cb);
        for i in 0..d {
            for j in 0..d {
                stacked[(jcol * d + i, j)] = m[(i, j)].clone();
            }
            stacked[(jcol * d + i, d + jcol * d + i)] = BigInt::from(nj);
        }
    }
    let kernel = crate::lattice::integer_kernel(&stacked);
    let mut cols: Vec<Vec<i64>> = vec![];
    for k in kernel {
        let c: Vec<i64> = k[..d]
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("ideal inverse")))
            .collect::<Result<_>>()?;
        if c.iter().any(|&x| x != 0) {
            cols.push(c);
        }
    }
    let linv = IntegerLattice::hnf(&cols)?;
    // I^{-1} = denom * (1/nj) * linv
    let g = BigInt::from(a.denom).gcd(&BigInt::from(nj));
    let num = a.denom / g.to_i64().unwrap();
    let den = nj / g.to_i64().unwrap();
    let scaled = if num == 1 { linv } else { linv.scaled(num) };
    FractionalIdealLattice::new(scaled, den, basis)
}

/// n-th power of an ideal (n >= 0).
pub fn ideal_pow(
    a: &FractionalIdealLattice,
    n: u32,
    basis: &IntegralBasis,
) -> Result<FractionalIdealLattice> {
    let mut acc = FractionalIdealLattice::whole_ring(basis);
    for _ in 0..n {
        acc = ideal_product(&acc, a, basis)?;
    }
    Ok(acc)
}

/// The denominator ideal {x in O : x*λ_l in O for all l}, computed by
/// intersecting O with the inverse images of O under each dilate.
pub fn denominator_ideal(
    sys: &DilateSystem,
    basis: &IntegralBasis,
) -> Result<FractionalIdealLattice> {
    let mut acc = FractionalIdealLattice::whole_ring(basis);
    for l in &sys.dilates {
        let pre = FractionalIdealLattice::inverse_image(l, basis)?;
        acc = ideal_intersect(&acc, &pre, basis)?;
    }
    Ok(acc)
}

/// Integer matrix of multiplication by λ from `from`-coordinates to
/// `to`-coordinates; requires λ·from ⊆ to and checks the determinant
/// identity |det| = |N(λ)| · norm(from) / norm(to).
pub fn mult_matrix(
    lam: &FieldElement,
    from: &FractionalIdealLattice,
    to: &FractionalIdealLattice,
    basis: &IntegralBasis,
) -> Result<IMat> {
    let d = basis.degree();
    let m = basis.mult_matrix_coords(lam);
    let to_inv = to.lattice.to_qmat().inverse().expect("full rank");
    let scale = Rat::new(BigInt::from(to.denom), BigInt::from(from.denom));
    let mut out = IMat::zero(d, d);
    for j in 0..d {
        let col: Vec<Rat> = from
            .lattice
            .basis_col(j)
            .iter()
            .map(|&x| crate::rat::rat_int(x))
            .collect();
        let image = m.mul_vec(&col);
        let coords = to_inv.mul_vec(&image);
        for (i, c) in coords.iter().enumerate() {
            let c = c * &scale;
            if !c.denom().is_one() {
                return Err(Error::LatticeNotMapped);
            }
            out[(i, j)] = c.numer().clone();
        }
    }
    // |det| = |N(λ)| * norm(from) / norm(to)
    let det = out.det().abs();
    let expected = basis.field.norm(lam).abs() * from.norm() / to.norm();
    if Rat::from_integer(det) != expected {
        return Err(Error::Invalid(
            "multiplication matrix determinant identity failed".into(),
        ));
    }
    Ok(out)
}

/// Convert an integer matrix to i64 rows (for the sumset engine).
pub fn imat_to_rows_i64(m: &IMat) -> Result<Vec<Vec<i64>>> {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m[(i, j)].to_i64().ok_or(Error::Overflow("matrix entry")))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::basis::IntegralBasis;
    use crate::numfield::{DilateSystem, NumberField};
    use crate::rat::{rat, rat_int};
    use rand::Rng;

    fn zsqrt2() -> (NumberField, IntegralBasis) {
        IntegralBasis::quadratic(2).unwrap()
    }

    #[test]
    fn denominator_ideal_of_integer_dilate() {
        let (field, basis) = zsqrt2();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let d = denominator_ideal(&sys, &basis).unwrap();
        assert_eq!(d, FractionalIdealLattice::whole_ring(&basis));
        assert_eq!(d.norm(), rat_int(1));
    }

    #[test]
    fn denominator_ideal_of_inverse_sqrt2() {
        let (field, basis) = zsqrt2();
        // λ = 1/sqrt2 = theta/2
        let lam = field.scale(&field.theta(), &rat(1, 2));
        let sys = DilateSystem::new(field.clone(), vec![lam]).unwrap();
        let d = denominator_ideal(&sys, &basis).unwrap();
        // sqrt2 * O = {a + b sqrt2 : a even}: diag(2, 1)
        assert_eq!(d.lattice, IntegerLattice::from_diag(&[2, 1]));
        assert_eq!(d.denom, 1);
        assert_eq!(d.norm(), rat_int(2));
    }

    #[test]
    fn denominator_ideal_rational() {
        let (field, basis) = IntegralBasis::rationals();
        let sys = DilateSystem::new(field.clone(), vec![field.rational(rat(3, 2))]).unwrap();
        let d = denominator_ideal(&sys, &basis).unwrap();
        assert_eq!(d.lattice, IntegerLattice::scalar(2));
        assert_eq!(d.norm(), rat_int(2));
    }

    #[test]
    fn sqrt2_ideal_squared_is_two() {
        let (field, basis) = zsqrt2();
        let s = FractionalIdealLattice::principal(&field.theta(), &basis).unwrap();
        let sq = ideal_product(&s, &s, &basis).unwrap();
        assert_eq!(sq.lattice, IntegerLattice::from_diag(&[2, 2]));
        assert_eq!(sq.denom, 1);
    }

    #[test]
    fn whole_ring_product_identity() {
        let (_, basis) = zsqrt2();
        let o = FractionalIdealLattice::whole_ring(&basis);
        assert_eq!(ideal_product(&o, &o, &basis).unwrap(), o);
    }

    #[test]
    fn inverse_times_ideal_is_ring() {
        let (field, basis) = zsqrt2();
        let o = FractionalIdealLattice::whole_ring(&basis);
        let mut rng = crate::seeded_rng(5);
        let mut done = 0;
        while done < 20 {
            let a = rng.gen_range(-9..=9i64);
            let b = rng.gen_range(-9..=9i64);
            let c = rng.gen_range(1..=4i64);
            let el = field.scale(
                &field.element(vec![rat_int(a), rat_int(b)]).unwrap(),
                &rat(1, c),
            );
            if el.is_zero() {
                continue;
            }
            let i = FractionalIdealLattice::principal(&el, &basis).unwrap();
            let iinv = ideal_inverse(&i, &basis).unwrap();
            assert_eq!(ideal_product(&i, &iinv, &basis).unwrap(), o);
            done += 1;
        }
    }

    #[test]
    fn mult_matrix_sqrt2_on_ring() {
        let (field, basis) = zsqrt2();
        let o = FractionalIdealLattice::whole_ring(&basis);
        let m = mult_matrix(&field.theta(), &o, &o, &basis).unwrap();
        assert_eq!(m, IMat::from_rows_i64(&[vec![0, 2], vec![1, 0]]));
    }

    #[test]
    fn mult_matrix_identity() {
        let (field, basis) = zsqrt2();
        let o = FractionalIdealLattice::whole_ring(&basis);
        let m = mult_matrix(&field.one(), &o, &o, &basis).unwrap();
        assert_eq!(m, IMat::identity(2));
    }

    #[test]
    fn mult_matrix_inverse_sqrt2_unimodular() {
        let (field, basis) = zsqrt2();
        let lam = field.scale(&field.theta(), &rat(1, 2));
        let sys = DilateSystem::new(field.clone(), vec![lam.clone()]).unwrap();
        let d = denominator_ideal(&sys, &basis).unwrap();
        let o = FractionalIdealLattice::whole_ring(&basis);
        let m = mult_matrix(&lam, &d, &o, &basis).unwrap();
        assert_eq!(m.det().abs(), num_bigint::BigInt::from(1));
    }

    #[test]
    fn mult_matrix_rejects_unmapped() {
        let (field, basis) = zsqrt2();
        let lam = field.scale(&field.theta(), &rat(1, 2));
        let o = FractionalIdealLattice::whole_ring(&basis);
        // 1/sqrt2 does not map O into O
        assert!(matches!(
            mult_matrix(&lam, &o, &o, &basis),
            Err(Error::LatticeNotMapped)
        ));
    }

    #[test]
    fn functoriality_of_mult_matrices() {
        let (field, basis) = zsqrt2();
        let o = FractionalIdealLattice::whole_ring(&basis);
        let a = field.element(vec![rat_int(1), rat_int(1)]).unwrap();
        let b = field.element(vec![rat_int(2), rat_int(-1)]).unwrap();
        let ma = mult_matrix(&a, &o, &o, &basis).unwrap();
        let mb = mult_matrix(&b, &o, &o, &basis).unwrap();
        let mab = mult_matrix(&field.mul(&a, &b), &o, &o, &basis).unwrap();
        assert_eq!(ma.mul(&mb), mab);
    }
}
