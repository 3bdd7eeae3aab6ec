//! The lower-bound construction nA' ∩ D: growth ratios of the extremal sets
//! approach the sharp constant H as n grows.

use dilates::hconst::h_constant;
use dilates::numfield::{DilateSystem, IntegralBasis, NumberField};
use dilates::poly::UPoly;
use dilates::sumset::{ratio_experiment, DEFAULT_POINT_CAP};

fn main() -> dilates::Result<()> {
    let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1]))?;
    let (_, basis) = IntegralBasis::quadratic(2)?;
    let sys = DilateSystem::new(field.clone(), vec![field.theta()])?;
    let h = h_constant(&sys, 1e-9, 0)?;
    println!("target H(sqrt2) in [{:.9}, {:.9}]", h.h_lo, h.h_hi);
    println!("n   |A|    |A+sqrt2 A|   ratio      margin  ambiguous");
    for report in ratio_experiment(&sys, &basis, &[5, 10, 20, 40], None, &h, DEFAULT_POINT_CAP)? {
        println!(
            "{:<3} {:<6} {:<13} {:<10.6} {:<7} {}",
            report.n,
            report.set_size,
            report.sum_size,
            report.ratio_f64,
            report.margin,
            report.ambiguous
        );
    }
    Ok(())
}
