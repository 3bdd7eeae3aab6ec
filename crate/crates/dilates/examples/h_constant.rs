//! Certified sharp growth constants H(λ1,...,λk) for several dilate systems:
//! rational dilates give exact values, algebraic ones certified intervals.

use dilates::hconst::h_constant;
use dilates::numfield::{DilateSystem, NumberField};
use dilates::poly::UPoly;
use dilates::rat::rat;

fn main() -> dilates::Result<()> {
    // λ = 3/2 over Q: H = |p| + |q| = 5 exactly
    let q = NumberField::rationals();
    let sys = DilateSystem::new(q.clone(), vec![q.rational(rat(3, 2))])?;
    let h = h_constant(&sys, 1e-9, 0)?;
    println!("H(3/2)        = {} (exact)", h.exact_rational.as_deref().unwrap_or("?"));

    // two rational dilates: H(1/2, 3/2) = q + |p1| + |p2| = 6
    let sys = DilateSystem::new(
        q.clone(),
        vec![q.rational(rat(1, 2)), q.rational(rat(3, 2))],
    )?;
    let h = h_constant(&sys, 1e-9, 0)?;
    println!("H(1/2, 3/2)   = {} (exact)", h.exact_rational.as_deref().unwrap_or("?"));

    // λ = sqrt2: H = (1 + sqrt2)^2 = 3 + 2 sqrt2
    let k = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1]))?;
    let sys = DilateSystem::new(k.clone(), vec![k.theta()])?;
    let h = h_constant(&sys, 1e-12, 0)?;
    println!("H(sqrt2)      in [{:.14}, {:.14}]", h.h_lo, h.h_hi);

    // λ = 1/sqrt2 through the non-monic field 2y^2 - 1: the denominator
    // ideal contributes a factor N(D) = 2 and H is again 3 + 2 sqrt2
    let k = NumberField::new(UPoly::from_int_coeffs(&[-1, 0, 2]))?;
    let sys = DilateSystem::new(k.clone(), vec![k.theta()])?;
    let h = h_constant(&sys, 1e-12, 0)?;
    println!(
        "H(1/sqrt2)    in [{:.14}, {:.14}]  (N(D) = {})",
        h.h_lo, h.h_hi, h.ideal_norm_factor
    );

    // λ = 2^(1/3): H = (1 + 2^(1/3))^3
    let k = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 0, 1]))?;
    let sys = DilateSystem::new(k.clone(), vec![k.theta()])?;
    let h = h_constant(&sys, 1e-12, 0)?;
    println!("H(2^(1/3))    in [{:.14}, {:.14}]", h.h_lo, h.h_hi);
    Ok(())
}
