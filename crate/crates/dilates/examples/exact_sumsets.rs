//! Exact sumset enumeration: linear transformations of finite point sets and
//! sums of dilates of sets of field elements.

use dilates::numfield::{DilateSystem, IntegralBasis, NumberField};
use dilates::poly::UPoly;
use dilates::rat::rat_int;
use dilates::sumset::{field_sumset, linear_sumset, PointSet, DEFAULT_POINT_CAP};

fn main() -> dilates::Result<()> {
    // 1A + 2A for A = {0, 1, 2}: the progression {0..6}
    let a = PointSet::interval_1d(0, 2);
    let sum = linear_sumset(
        &[a.clone(), a],
        &[vec![vec![1]], vec![vec![2]]],
        DEFAULT_POINT_CAP,
    )?;
    println!("|{{0,1,2}} + 2*{{0,1,2}}| = {}", sum.len());

    // A + sqrt2 A for A = {0, 1} inside Z[sqrt2]
    let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1]))?;
    let (_, basis) = IntegralBasis::quadratic(2)?;
    let sys = DilateSystem::new(field.clone(), vec![field.theta()])?;
    let size = field_sumset(
        &[field.zero(), field.one()],
        &sys,
        &basis,
        DEFAULT_POINT_CAP,
    )?;
    println!("|{{0,1}} + sqrt2*{{0,1}}| = {}", size);

    // a progression under λ = 3/2: the set is rescaled into the denominator
    // ideal 2Z internally, cardinality unchanged
    let (q, qbasis) = IntegralBasis::rationals();
    let sys = DilateSystem::new(q.clone(), vec![q.rational(dilates::rat::rat(3, 2))])?;
    let elements: Vec<_> = (0..8).map(|i| q.rational(rat_int(i))).collect();
    let size = field_sumset(&elements, &sys, &qbasis, DEFAULT_POINT_CAP)?;
    println!("|A + (3/2)A| for A = {{0..7}}: {}", size);
    Ok(())
}
