//! Ideal-derived flag families: a_l = O ∩ λ1^{-1}O ∩ ... ∩ λl^{-1}O,
//! b_l = a_l a_{l-1}^{-1} (always integral), c_{n,l} = prod_{j>l} b_j^{n_j},
//! and the two flags
//!   F_n = { a_k c_{n,0} ⊆ ... ⊆ a_k c_{n,k-1} ⊆ a_k }   (in D-coordinates)
//!   G_n = { c_{n,0} ⊆ ... ⊆ c_{n,k-1} ⊆ O }             (in O-coordinates).

use crate::density::Flag;
use crate::error::{Error, Result};
use crate::numfield::{
    ideal_intersect, ideal_inverse, ideal_pow, ideal_product, DilateSystem,
    FractionalIdealLattice, IntegralBasis,
};

#[derive(Clone, Debug)]
pub struct IdealFlagData {
    /// a_0 = O, ..., a_k = D
    pub a_ideals: Vec<FractionalIdealLattice>,
    /// b_1, ..., b_k
    pub b_ideals: Vec<FractionalIdealLattice>,
}

impl IdealFlagData {
    pub fn new(sys: &DilateSystem, basis: &IntegralBasis) -> Result<Self> {
        let whole = FractionalIdealLattice::whole_ring(basis);
        let mut a_ideals = vec![whole.clone()];
        for l in &sys.dilates {
            let pre = FractionalIdealLattice::inverse_image(l, basis)?;
            let next = ideal_intersect(a_ideals.last().unwrap(), &pre, basis)?;
            a_ideals.push(next);
        }
        let mut b_ideals = vec![];
        for l in 1..a_ideals.len() {
            let inv_prev = ideal_inverse(&a_ideals[l - 1], basis)?;
            let b = ideal_product(&a_ideals[l], &inv_prev, basis)?;
            if !b.is_integral() {
                return Err(Error::Invalid(
                    "quotient ideal b_l not integral: ideal arithmetic bug".into(),
                ));
            }
            b_ideals.push(b);
        }
        Ok(IdealFlagData { a_ideals, b_ideals })
    }

    pub fn denominator(&self) -> &FractionalIdealLattice {
        self.a_ideals.last().unwrap()
    }

    /// c_{n,l} = prod_{j=l+1..k} b_j^{n_j}.
    pub fn c_ideal(
        &self,
        n: &[u32],
        l: usize,
        basis: &IntegralBasis,
    ) -> Result<FractionalIdealLattice> {
        let k = self.b_ideals.len();
        assert_eq!(n.len(), k);
        let mut acc = FractionalIdealLattice::whole_ring(basis);
        for j in l..k {
            let p = ideal_pow(&self.b_ideals[j], n[j], basis)?;
            acc = ideal_product(&acc, &p, basis)?;
        }
        Ok(acc)
    }

    /// F_n as a flag of sublattices of Z^d in D-coordinates (Phi').
    pub fn f_flag(&self, n: &[u32], basis: &IntegralBasis) -> Result<Flag> {
        let k = self.b_ideals.len();
        let dd = self.denominator();
        let mut chain = vec![];
        for l in 0..=k {
            let c = self.c_ideal(n, l, basis)?;
            let member = ideal_product(dd, &c, basis)?;
            chain.push(member.coords_in(dd)?);
        }
        Flag::new(chain)
    }

    /// G_n as a flag of sublattices of Z^d in O-coordinates (Phi).
    pub fn g_flag(&self, n: &[u32], basis: &IntegralBasis) -> Result<Flag> {
        let k = self.b_ideals.len();
        let whole = FractionalIdealLattice::whole_ring(basis);
        let mut chain = vec![];
        for l in 0..=k {
            let c = self.c_ideal(n, l, basis)?;
            chain.push(c.coords_in(&whole)?);
        }
        Flag::new(chain)
    }
}

/// Both flags for one n-vector.
pub fn flags_from_ideals(
    sys: &DilateSystem,
    basis: &IntegralBasis,
    n: &[u32],
) -> Result<(Flag, Flag)> {
    let data = IdealFlagData::new(sys, basis)?;
    Ok((data.f_flag(n, basis)?, data.g_flag(n, basis)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntegerLattice;
    use crate::rat::rat;

    fn inv_sqrt2_system() -> (DilateSystem, IntegralBasis) {
        // K = Q(sqrt2) with λ = theta/2 = 1/sqrt2
        let (field, basis) = IntegralBasis::quadratic(2).unwrap();
        let lam = field.scale(&field.theta(), &rat(1, 2));
        (DilateSystem::new(field, vec![lam]).unwrap(), basis)
    }

    #[test]
    fn ideals_for_inverse_sqrt2() {
        let (sys, basis) = inv_sqrt2_system();
        let data = IdealFlagData::new(&sys, &basis).unwrap();
        // a_1 = sqrt2 O: diag(2,1) in {1, sqrt2} coordinates
        assert_eq!(
            data.a_ideals[1].lattice,
            IntegerLattice::from_diag(&[2, 1])
        );
        // b_1 = a_1 (a_0 = O)
        assert_eq!(data.b_ideals[0], data.a_ideals[1]);
    }

    #[test]
    fn flags_n1_spec_example() {
        // n = (1): F = (2O ⊆ sqrt2 O) in D-coords, G = (sqrt2 O ⊆ O)
        let (sys, basis) = inv_sqrt2_system();
        let (f, g) = flags_from_ideals(&sys, &basis, &[1]).unwrap();
        // G: sqrt2 O in O-coordinates is diag(2,1); top is Z^2
        assert_eq!(g.chain[0], IntegerLattice::from_diag(&[2, 1]));
        assert_eq!(g.chain[1], IntegerLattice::standard(2));
        // F: a_1 c_{n,0} = (sqrt2)^2 O = 2O; in sqrt2O-coordinates the
        // inclusion 2O ⊆ sqrt2 O has index 2
        assert_eq!(f.chain[1], IntegerLattice::standard(2));
        assert_eq!(f.chain[0].index(), 2);
    }

    #[test]
    fn integral_dilates_collapse() {
        // all λ integral: every b_l = O and the flags are constant chains
        let (field, basis) = IntegralBasis::quadratic(2).unwrap();
        let sys = DilateSystem::new(
            field.clone(),
            vec![field.theta(), field.rational(crate::rat::rat_int(3))],
        )
        .unwrap();
        let data = IdealFlagData::new(&sys, &basis).unwrap();
        let whole = FractionalIdealLattice::whole_ring(&basis);
        for b in &data.b_ideals {
            assert_eq!(b, &whole);
        }
        let (f, g) = flags_from_ideals(&sys, &basis, &[2, 1]).unwrap();
        for l in &f.chain {
            assert_eq!(l, &IntegerLattice::standard(2));
        }
        for l in &g.chain {
            assert_eq!(l, &IntegerLattice::standard(2));
        }
    }

    #[test]
    fn rational_three_halves_powers() {
        // λ = 3/2 over Q: a_1 = 2Z, b_1 = 2Z, c_{(n),0} = 2^n Z
        let (field, basis) = IntegralBasis::rationals();
        let sys = DilateSystem::new(field.clone(), vec![field.rational(rat(3, 2))]).unwrap();
        let data = IdealFlagData::new(&sys, &basis).unwrap();
        assert_eq!(data.a_ideals[1].lattice, IntegerLattice::scalar(2));
        for n in 0..4u32 {
            let c = data.c_ideal(&[n], 0, &basis).unwrap();
            assert_eq!(c.lattice, IntegerLattice::scalar(1 << n));
        }
    }
}
