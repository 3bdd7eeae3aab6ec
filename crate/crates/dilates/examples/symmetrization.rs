//! Voxel verification of the continuous lower bound: symmetrizations
//! preserve measure, and the measured Minkowski sum always dominates the
//! product-of-scales bound. The disk under a scaled rotation is the equality
//! case.

use dilates::rat::rat;
use dilates::voxel::{
    ball_rearrange_2d, steiner_1d, verify_cts_bound, EigenBlock, EigenStructure, VoxelSet,
};

fn main() -> dilates::Result<()> {
    // measure preservation of the two symmetrizations
    let blob = VoxelSet::from_box(&[0.0, 0.0], &[0.75, 0.5], rat(1, 64));
    let steiner = steiner_1d(&blob, 0);
    let ball = ball_rearrange_2d(&blob, (0, 1));
    println!(
        "measures: blob {} | steiner {} | ball {}",
        blob.measure(),
        steiner.measure(),
        ball.measure()
    );

    // interval case: [0,1] + 2[0,1] has measure exactly 3
    let seg = VoxelSet::from_box(&[0.0], &[1.0], rat(1, 128));
    let eigen = EigenStructure {
        blocks: vec![EigenBlock {
            dim: 1,
            scales: vec![1.0, 2.0],
            angles: vec![0.0, 0.0],
        }],
    };
    let rep = verify_cts_bound(&seg, &eigen, &eigen.maps())?;
    println!(
        "interval: measured {:.4} >= bound {:.4}: {}",
        rep.measured,
        rep.bound,
        if rep.pass { "PASS" } else { "FAIL" }
    );

    // equality case: disk plus rotated scaled disk
    let disk = VoxelSet::disk(1.0, rat(1, 128));
    let eigen = EigenStructure {
        blocks: vec![EigenBlock {
            dim: 2,
            scales: vec![1.0, 0.8],
            angles: vec![0.0, 0.6],
        }],
    };
    let rep = verify_cts_bound(&disk, &eigen, &eigen.maps())?;
    let exact = (1.0f64 + 0.8).powi(2) * std::f64::consts::PI;
    println!(
        "disk + 0.8*rot(disk): measured {:.4}, bound {:.4}, continuum value {:.4}: {}",
        rep.measured,
        rep.bound,
        exact,
        if rep.pass { "PASS" } else { "FAIL" }
    );
    Ok(())
}
