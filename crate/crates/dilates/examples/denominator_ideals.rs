//! Number-field machinery behind the constants: norm forms, denominator
//! ideals as lattices, ideal arithmetic, and multiplication matrices between
//! coordinate systems.

use dilates::numfield::{
    denominator_ideal, denominator_norm, ideal_inverse, ideal_product, mult_matrix, norm_form,
    DilateSystem, FractionalIdealLattice, IntegralBasis, NumberField,
};
use dilates::poly::UPoly;
use dilates::rat::rat;

fn main() -> dilates::Result<()> {
    // λ = 1/sqrt2 inside K = Q(sqrt2), with the catalog basis {1, sqrt2}
    let (field, basis) = IntegralBasis::quadratic(2)?;
    let lam = field.scale(&field.theta(), &rat(1, 2));
    let sys = DilateSystem::new(field.clone(), vec![lam.clone()])?;

    let names = vec!["x0".to_string(), "x1".to_string()];
    let form = norm_form(&sys)?;
    println!("norm form N(x0 + x1/sqrt2) = {}", form.format_with_vars(&names));
    println!("denominator norm D = {}", denominator_norm(&sys)?);

    let dd = denominator_ideal(&sys, &basis)?;
    println!(
        "denominator ideal: columns {:?}, norm {}",
        dd.lattice.basis_cols(),
        dd.norm()
    );

    // ideal arithmetic: (sqrt2 O)^2 = 2 O, I * I^{-1} = O
    let sq = ideal_product(&dd, &dd, &basis)?;
    println!("(sqrt2 O)^2 columns: {:?}", sq.lattice.basis_cols());
    let inv = ideal_inverse(&dd, &basis)?;
    let unit = ideal_product(&dd, &inv, &basis)?;
    println!(
        "I * I^(-1) = O: {}",
        unit == FractionalIdealLattice::whole_ring(&basis)
    );

    // multiplication by 1/sqrt2 carries D into O with a unimodular matrix
    let whole = FractionalIdealLattice::whole_ring(&basis);
    let m = mult_matrix(&lam, &dd, &whole, &basis)?;
    println!("matrix of (1/sqrt2): D -> O has det = {}", m.det());

    // a non-monic field gives the same constant: 2y^2 - 1 with theta = 1/sqrt2
    let nonmonic = NumberField::new(UPoly::from_int_coeffs(&[-1, 0, 2]))?;
    let sys2 = DilateSystem::new(nonmonic.clone(), vec![nonmonic.theta()])?;
    println!("denominator norm via the non-monic field: {}", denominator_norm(&sys2)?);
    Ok(())
}
