//! Regularity decomposition: cut [0,N) into cubes at shrinking dyadic scales
//! until the cubes carrying most of the set are regular for the projection
//! pi_2 of the ideal-derived flag family of λ = 3/2.

use dilates::density::flags::IdealFlagData;
use dilates::density::regular::regular_decomposition;
use dilates::density::DEFAULT_DENSITY_CAP;
use dilates::numfield::{DilateSystem, IntegralBasis};
use dilates::rat::rat;
use dilates::sumset::PointSet;
use rand::Rng;

fn main() -> dilates::Result<()> {
    let (field, basis) = IntegralBasis::rationals();
    let sys = DilateSystem::new(field.clone(), vec![field.rational(rat(3, 2))])?;
    let family = IdealFlagData::new(&sys, &basis)?;
    let n = 256i64;
    let mut rng = dilates::seeded_rng(42);
    let pts: Vec<Vec<i64>> = (0..n).filter(|_| rng.gen_bool(0.55)).map(|x| vec![x]).collect();
    let a = PointSet::new(1, pts);
    println!("A: {} of {} points in [0,{})", a.len(), n, n);
    let dec = regular_decomposition(
        &a,
        &family,
        &basis,
        n,
        2,
        &rat(1, 5),
        1,
        &[],
        DEFAULT_DENSITY_CAP,
    )?;
    println!(
        "stabilized at r = {}: cube side {}, {} regular cubes, retained {} points (>= (1-δ)|A| = {:.1})",
        dec.r,
        dec.cube_side,
        dec.cubes.len(),
        dec.retained.len(),
        0.8 * a.len() as f64
    );
    Ok(())
}
