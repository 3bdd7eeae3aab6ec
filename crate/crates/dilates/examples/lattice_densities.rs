//! Lattice densities: the staircase body of a periodic set relative to a
//! flag of sublattices, its projections, and densities of periodic sumsets.

use dilates::density::{
    density, lattice_density, periodic_sumset, Flag, PeriodicSet, DEFAULT_DENSITY_CAP,
};
use dilates::lattice::IntegerLattice;
use dilates::matrix::IMat;

fn main() -> dilates::Result<()> {
    // A = 12Z ∪ (12Z+1) ∪ (6Z+3) relative to the flag 3Z ⊆ Z
    let a = PeriodicSet::new(
        IntegerLattice::scalar(12),
        vec![vec![0], vec![1], vec![3], vec![9]],
    );
    let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)])?;
    let ld = lattice_density(&a, &f, DEFAULT_DENSITY_CAP)?;
    println!("staircase of A over (3Z ⊆ Z):");
    println!("  heights  {:?}", ld.heights.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    println!("  volume   {}", ld.volume());
    println!("  pi_1     {}", ld.projection(1));
    println!("  pi_2     {}", ld.projection(2));
    println!("  density of A in Z: {}", density(&a, &IntegerLattice::standard(1), DEFAULT_DENSITY_CAP)?);

    // the asymmetric sums 2A1 + 3A2 and 2A2 + 3A1 with A1 = {0,3}+6Z,
    // A2 = {0,4}+6Z: one collapses to 6Z, the other fills 2/3 of Z
    let a1 = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![3]]);
    let a2 = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![4]]);
    let two = IMat::from_rows_i64(&[vec![2]]);
    let three = IMat::from_rows_i64(&[vec![3]]);
    let s1 = periodic_sumset(&a1, &a2, &two, &three, DEFAULT_DENSITY_CAP)?;
    let s2 = periodic_sumset(&a2, &a1, &two, &three, DEFAULT_DENSITY_CAP)?;
    println!("density(2A1 + 3A2) = {}", s1.global_density());
    println!("density(2A2 + 3A1) = {}", s2.global_density());
    Ok(())
}
