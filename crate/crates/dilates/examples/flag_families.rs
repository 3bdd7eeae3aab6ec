//! Ideal-derived flag families for a non-integral dilate, and the projection
//! stability that makes them useful: pi_1 is preserved when passing from the
//! F-flag to the shifted G-flag, and pi_2 can only grow under multiplication.

use dilates::density::flags::IdealFlagData;
use dilates::density::{lattice_density, PeriodicSet, DEFAULT_DENSITY_CAP};
use dilates::lattice::IntegerLattice;
use dilates::matrix::IMat;
use dilates::numfield::{DilateSystem, IntegralBasis};
use dilates::rat::rat;
use dilates::sumset::coordinate_maps;

fn main() -> dilates::Result<()> {
    // K = Q(sqrt2), λ = 1/sqrt2 = theta/2
    let (field, basis) = IntegralBasis::quadratic(2)?;
    let lam = field.scale(&field.theta(), &rat(1, 2));
    let sys = DilateSystem::new(field, vec![lam])?;
    let data = IdealFlagData::new(&sys, &basis)?;
    println!(
        "denominator ideal sqrt2*O in {{1, sqrt2}} coordinates: {:?}, norm {}",
        data.denominator().lattice.basis_cols(),
        data.denominator().norm()
    );
    for n in 0..=2u32 {
        let f = data.f_flag(&[n], &basis)?;
        let g = data.g_flag(&[n], &basis)?;
        println!(
            "n = {}: F indices {:?}, G indices {:?}",
            n,
            f.chain.iter().map(IntegerLattice::index).collect::<Vec<_>>(),
            g.chain.iter().map(IntegerLattice::index).collect::<Vec<_>>()
        );
    }

    // stability on a sample periodic set
    let a = PeriodicSet::new(
        IntegerLattice::from_diag(&[4, 2]),
        vec![vec![0, 0], vec![1, 1], vec![2, 1], vec![3, 0]],
    );
    let maps = coordinate_maps(&sys, &basis)?;
    let l0 = IMat::from_rows_i64(&maps.mats[0]);
    let l1 = IMat::from_rows_i64(&maps.mats[1]);
    for n in 0..=2u32 {
        let f_n = data.f_flag(&[n], &basis)?;
        let g_n = data.g_flag(&[n], &basis)?;
        let g_n1 = data.g_flag(&[n + 1], &basis)?;
        let pi1_f = lattice_density(&a, &f_n, DEFAULT_DENSITY_CAP)?.projection(1);
        let pi1_g = lattice_density(&a.apply_matrix(&l0)?, &g_n1, DEFAULT_DENSITY_CAP)?.projection(1);
        let pi2_f = lattice_density(&a, &f_n, DEFAULT_DENSITY_CAP)?.projection(2);
        let pi2_g = lattice_density(&a.apply_matrix(&l1)?, &g_n, DEFAULT_DENSITY_CAP)?.projection(2);
        println!(
            "n = {}: pi_1 {} = {} (equal), pi_2 {} <= {}",
            n, pi1_f, pi1_g, pi2_f, pi2_g
        );
    }
    Ok(())
}
