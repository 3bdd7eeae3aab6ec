//! Norm forms N(x0 + x1 λ1 + ... + xk λk) and the denominator norm.
//!
//! The form is the y-resultant of the defining polynomial with the generic
//! linear form, divided by lc(f)^(deg_y of the linear form); its coefficient
//! denominators determine the ideal norm of the denominator ideal.

use crate::error::Result;
use crate::numfield::DilateSystem;
use crate::poly::multipoly::{resultant, MultiPoly};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::One;

/// The degree-d form in x0, ..., xk equal to prod_i (x0 + sum_l σ_i(λ_l) x_l).
/// Variables of the result: 0 = x0, 1 = x1, ..., k = xk.
pub fn norm_form(sys: &DilateSystem) -> Result<MultiPoly> {
    let k = sys.k();
    let d = sys.field.degree();
    let nx = k + 1;
    if d == 1 {
        // K = Q: the form is the linear form itself
        let mut form = MultiPoly::var(nx, 0);
        for (l, lam) in sys.dilates.iter().enumerate() {
            let r = lam.as_rational().expect("degree-1 field element");
            form = form.add(&MultiPoly::var(nx, l + 1).scale(&r));
        }
        return Ok(form);
    }
    // variables: 0 = y, 1 = x0, 2.. = x_l
    let nv = nx + 1;
    let f = MultiPoly::from_upoly(sys.field.poly(), 0, nv);
    let mut linear = MultiPoly::var(nv, 1);
    for (l, lam) in sys.dilates.iter().enumerate() {
        let g = MultiPoly::from_upoly(&sys.field.to_upoly(lam), 0, nv);
        linear = linear.add(&g.mul(&MultiPoly::var(nv, l + 2)));
    }
    let m = linear.degree_in(0);
    let full = if m == 0 {
        // all dilates rational inside a bigger field: (x0 + sum λ x)^d
        let mut acc = MultiPoly::one(nv);
        for _ in 0..d {
            acc = acc.mul(&linear);
        }
        acc
    } else {
        let res = resultant(&f, &linear, 0)?;
        let lc = sys.field.poly().leading();
        let mut scale = Rat::one();
        for _ in 0..m {
            scale /= &lc;
        }
        res.scale(&scale)
    };
    // drop the y slot (exponent 0 everywhere by now)
    let mut out = MultiPoly::zero(nx);
    for (mono, c) in &full.terms {
        debug_assert_eq!(mono.0[0], 0);
        out.terms
            .insert(crate::poly::multipoly::Mono(mono.0[1..].to_vec()), c.clone());
    }
    Ok(out)
}

/// The smallest positive integer D such that D times the norm form has
/// integer coefficients; equals the ideal norm of the denominator ideal.
pub fn denominator_norm(sys: &DilateSystem) -> Result<BigInt> {
    let form = norm_form(sys)?;
    Ok(crate::rat::denominator_lcm(form.terms.values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::poly::UPoly;
    use crate::rat::{big, rat, rat_int};

    #[test]
    fn norm_form_sqrt2() {
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let form = norm_form(&sys).unwrap();
        // x0^2 - 2 x1^2
        let x0 = MultiPoly::var(2, 0);
        let x1 = MultiPoly::var(2, 1);
        let expect = x0.mul(&x0).sub(&x1.mul(&x1).scale(&rat_int(2)));
        assert_eq!(form, expect);
        assert_eq!(denominator_norm(&sys).unwrap(), big(1));
    }

    #[test]
    fn norm_form_inverse_sqrt2_nonmonic() {
        // f = 2y^2 - 1, λ = theta = 1/sqrt2: x0^2 - x1^2/2, D = 2
        let field = NumberField::new(UPoly::from_int_coeffs(&[-1, 0, 2])).unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let form = norm_form(&sys).unwrap();
        let x0 = MultiPoly::var(2, 0);
        let x1 = MultiPoly::var(2, 1);
        let expect = x0.mul(&x0).sub(&x1.mul(&x1).scale(&rat(1, 2)));
        assert_eq!(form, expect);
        assert_eq!(denominator_norm(&sys).unwrap(), big(2));
    }

    #[test]
    fn norm_form_rational() {
        let field = NumberField::rationals();
        let sys =
            DilateSystem::new(field.clone(), vec![field.rational(rat(3, 2))]).unwrap();
        let form = norm_form(&sys).unwrap();
        let expect = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1).scale(&rat(3, 2)));
        assert_eq!(form, expect);
        assert_eq!(denominator_norm(&sys).unwrap(), big(2));
    }

    #[test]
    fn norm_form_evaluates_to_element_norm() {
        // N(a0 + a1 λ) from the form matches the multiplication-matrix norm
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let form = norm_form(&sys).unwrap();
        let mut rng = crate::seeded_rng(3);
        for _ in 0..50 {
            use rand::Rng;
            let a0 = rat_int(rng.gen_range(-9..=9));
            let a1 = rat_int(rng.gen_range(-9..=9));
            let el = field.add(
                &field.rational(a0.clone()),
                &field.scale(&field.theta(), &a1),
            );
            assert_eq!(form.eval(&[a0, a1]), field.norm(&el));
        }
    }

    #[test]
    fn two_dilate_rational_norm() {
        // (λ1, λ2) = (1/2, 3/2): x0 + x1/2 + 3x2/2, D = 2
        let field = NumberField::rationals();
        let sys = DilateSystem::new(
            field.clone(),
            vec![field.rational(rat(1, 2)), field.rational(rat(3, 2))],
        )
        .unwrap();
        assert_eq!(denominator_norm(&sys).unwrap(), big(2));
    }
}
