//! Voxel-grid verification of the continuous lower bound for sums of linear
//! transformations, via Steiner symmetrization and ball rearrangement.
//!
//! Rasterizations round outward, so the measured sum is always a superset of
//! the true Minkowski sum and the one-sided inequality check is sound.

use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, Rat};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::collections::HashSet;

/// A finite set of occupied voxels; voxel i covers [i*h, (i+1)*h) per axis.
#[derive(Clone, Debug)]
pub struct VoxelSet {
    pub dim: usize,
    /// voxel edge length
    pub res: Rat,
    pub occupied: HashSet<Vec<i64>>,
}

impl VoxelSet {
    pub fn new(dim: usize, res: Rat, occupied: HashSet<Vec<i64>>) -> Self {
        VoxelSet { dim, res, occupied }
    }

    pub fn count(&self) -> usize {
        self.occupied.len()
    }

    /// Exact measure: count * h^dim.
    pub fn measure(&self) -> Rat {
        let mut hpow = Rat::from_integer(1.into());
        for _ in 0..self.dim {
            hpow *= &self.res;
        }
        hpow * Rat::from_integer((self.count() as i64).into())
    }

    pub fn measure_f64(&self) -> f64 {
        rat_to_f64(&self.measure())
    }

    /// Axis-aligned box [lo, hi] rasterized outward.
    pub fn from_box(lo: &[f64], hi: &[f64], res: Rat) -> Self {
        let dim = lo.len();
        let h = rat_to_f64(&res);
        let ranges: Vec<(i64, i64)> = lo
            .iter()
            .zip(hi)
            .map(|(&a, &b)| ((a / h).floor() as i64, ((b / h).ceil() as i64 - 1).max((a / h).floor() as i64)))
            .collect();
        let mut occupied = HashSet::new();
        let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            occupied.insert(idx.clone());
            let mut pos = 0;
            loop {
                if pos == dim {
                    break 'scan;
                }
                idx[pos] += 1;
                if idx[pos] <= ranges[pos].1 {
                    break;
                }
                idx[pos] = ranges[pos].0;
                pos += 1;
            }
        }
        VoxelSet::new(dim, res, occupied)
    }

    /// Disk of the given radius centered at the origin (d = 2), rasterized by
    /// the cell-center rule.
    pub fn disk(radius: f64, res: Rat) -> Self {
        let h = rat_to_f64(&res);
        let r_cells = (radius / h).ceil() as i64 + 1;
        let mut occupied = HashSet::new();
        for i in -r_cells..=r_cells {
            for j in -r_cells..=r_cells {
                let cx = (i as f64 + 0.5) * h;
                let cy = (j as f64 + 0.5) * h;
                if cx * cx + cy * cy <= radius * radius {
                    occupied.insert(vec![i, j]);
                }
            }
        }
        VoxelSet::new(2, res, occupied)
    }

    pub fn bbox(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        if self.occupied.is_empty() {
            return None;
        }
        let d = self.dim;
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &self.occupied {
            for j in 0..d {
                lo[j] = lo[j].min(v[j]);
                hi[j] = hi[j].max(v[j]);
            }
        }
        Some((lo, hi))
    }

    /// Voxels adjacent (face, edge or corner) to an unoccupied voxel.
    pub fn boundary_count(&self) -> usize {
        let d = self.dim;
        self.occupied
            .iter()
            .filter(|v| {
                let mut offset = vec![-1i64; d];
                loop {
                    if offset.iter().any(|&o| o != 0) {
                        let n: Vec<i64> = v.iter().zip(&offset).map(|(a, b)| a + b).collect();
                        if !self.occupied.contains(&n) {
                            return true;
                        }
                    }
                    let mut pos = 0;
                    loop {
                        if pos == d {
                            return false;
                        }
                        offset[pos] += 1;
                        if offset[pos] <= 1 {
                            break;
                        }
                        offset[pos] = -1;
                        pos += 1;
                    }
                }
            })
            .count()
    }
}

/// Outward rasterization of the image of a voxel set under a real matrix:
/// every voxel box maps to a parallelotope whose bounding box is filled.
fn rasterize_image(a: &VoxelSet, map: &[Vec<f64>]) -> VoxelSet {
    let d = a.dim;
    let mut occupied = HashSet::new();
    for v in &a.occupied {
        // image of the box [v, v+1]^d (in voxel units) under the map
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        // corners
        for mask in 0..(1u32 << d) {
            let corner: Vec<f64> = (0..d)
                .map(|j| v[j] as f64 + ((mask >> j) & 1) as f64)
                .collect();
            for i in 0..d {
                let x: f64 = (0..d).map(|j| map[i][j] * corner[j]).sum();
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        let ranges: Vec<(i64, i64)> = (0..d).map(|i| outer_range(lo[i], hi[i])).collect();
        let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            occupied.insert(idx.clone());
            let mut pos = 0;
            loop {
                if pos == d {
                    break 'scan;
                }
                idx[pos] += 1;
                if idx[pos] <= ranges[pos].1 {
                    break;
                }
                idx[pos] = ranges[pos].0;
                pos += 1;
            }
        }
    }
    VoxelSet::new(d, a.res.clone(), occupied)
}

/// Closed-voxel index range covering [lo, hi]. Values exactly on the grid
/// stay tight (closed voxel boxes already cover their endpoints); otherwise
/// a guard band absorbs f64 rounding, keeping the output a superset.
fn outer_range(lo: f64, hi: f64) -> (i64, i64) {
    let eps = 1e-9;
    let mut a = lo.floor();
    if lo != a && lo - a < eps {
        a -= 1.0;
    }
    let mut b = hi.ceil();
    if hi != b && b - hi < eps {
        b += 1.0;
    }
    (a as i64, (b as i64 - 1).max(a as i64))
}

/// Exact Minkowski sum of two voxel regions: index sums expanded by one
/// voxel per axis (a box of side h plus a box of side h is a box of side 2h).
fn region_sum(a: &VoxelSet, b: &VoxelSet) -> VoxelSet {
    let d = a.dim;
    let index_sum = if (a.count() as u128) * (b.count() as u128) <= 2_000_000 || d != 2 {
        dilate_naive(&a.occupied, &b.occupied, d)
    } else {
        dilate_fft_2d(a, b)
    };
    // expand by {0,1}^d
    let mut occupied = HashSet::with_capacity(index_sum.len() * (1 << d));
    for v in index_sum {
        let mut offset = vec![0i64; d];
        loop {
            occupied.insert(v.iter().zip(&offset).map(|(a, b)| a + b).collect());
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                offset[pos] += 1;
                if offset[pos] <= 1 {
                    break;
                }
                offset[pos] = 0;
                pos += 1;
            }
            if offset.iter().all(|&o| o == 0) {
                break;
            }
        }
    }
    VoxelSet::new(d, a.res.clone(), occupied)
}

fn dilate_naive(a: &HashSet<Vec<i64>>, b: &HashSet<Vec<i64>>, d: usize) -> HashSet<Vec<i64>> {
    let mut out = HashSet::with_capacity(a.len().max(b.len()));
    let _ = d;
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    out
}

/// 2-d set dilation by FFT convolution of indicators. Indicator counts are
/// far below the f64 convolution error threshold at these grid sizes.
fn dilate_fft_2d(a: &VoxelSet, b: &VoxelSet) -> HashSet<Vec<i64>> {
    let (alo, ahi) = a.bbox().expect("nonempty");
    let (blo, bhi) = b.bbox().expect("nonempty");
    let w = (ahi[0] - alo[0] + bhi[0] - blo[0] + 2) as usize;
    let h = (ahi[1] - alo[1] + bhi[1] - blo[1] + 2) as usize;
    let w2 = w.next_power_of_two();
    let h2 = h.next_power_of_two();
    let mut ga = vec![Complex64::new(0.0, 0.0); w2 * h2];
    let mut gb = vec![Complex64::new(0.0, 0.0); w2 * h2];
    for v in &a.occupied {
        let x = (v[0] - alo[0]) as usize;
        let y = (v[1] - alo[1]) as usize;
        ga[y * w2 + x] = Complex64::new(1.0, 0.0);
    }
    for v in &b.occupied {
        let x = (v[0] - blo[0]) as usize;
        let y = (v[1] - blo[1]) as usize;
        gb[y * w2 + x] = Complex64::new(1.0, 0.0);
    }
    fft2d(&mut ga, w2, h2, false);
    fft2d(&mut gb, w2, h2, false);
    for (x, y) in ga.iter_mut().zip(&gb) {
        *x *= y;
    }
    fft2d(&mut ga, w2, h2, true);
    let scale = 1.0 / (w2 * h2) as f64;
    let mut out = HashSet::new();
    for y in 0..h2 {
        for x in 0..w2 {
            if ga[y * w2 + x].re * scale > 0.5 {
                out.insert(vec![x as i64 + alo[0] + blo[0], y as i64 + alo[1] + blo[1]]);
            }
        }
    }
    out
}

fn fft2d(data: &mut [Complex64], w: usize, h: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let row_fft = if inverse {
        planner.plan_fft_inverse(w)
    } else {
        planner.plan_fft_forward(w)
    };
    for row in data.chunks_mut(w) {
        row_fft.process(row);
    }
    let col_fft = if inverse {
        planner.plan_fft_inverse(h)
    } else {
        planner.plan_fft_forward(h)
    };
    let mut col = vec![Complex64::new(0.0, 0.0); h];
    for x in 0..w {
        for y in 0..h {
            col[y] = data[y * w + x];
        }
        col_fft.process(&mut col);
        for y in 0..h {
            data[y * w + x] = col[y];
        }
    }
}

/// Outward-rounded rasterization of M_1 A_1 + ... + M_k A_k; the true sum of
/// the voxel regions is contained in the returned region.
pub fn voxel_sum(sets: &[VoxelSet], maps: &[Vec<Vec<f64>>]) -> Result<VoxelSet> {
    if sets.is_empty() || sets.len() != maps.len() {
        return Err(Error::DimensionMismatch("sets vs maps".into()));
    }
    let res = &sets[0].res;
    for s in sets {
        if &s.res != res {
            return Err(Error::Invalid("mixed voxel resolutions".into()));
        }
        if s.occupied.is_empty() {
            return Ok(VoxelSet::new(s.dim, res.clone(), HashSet::new()));
        }
    }
    let mut acc = rasterize_image(&sets[0], &maps[0]);
    for (s, m) in sets.iter().zip(maps).skip(1) {
        let img = rasterize_image(s, m);
        acc = region_sum(&acc, &img);
    }
    Ok(acc)
}

/// Steiner symmetrization along one axis: each line's voxels are replaced by
/// a centered contiguous run of the same count. Measure is exactly preserved.
pub fn steiner_1d(a: &VoxelSet, axis: usize) -> VoxelSet {
    let d = a.dim;
    let mut columns: std::collections::HashMap<Vec<i64>, usize> = std::collections::HashMap::new();
    for v in &a.occupied {
        let mut key = v.clone();
        key.remove(axis);
        *columns.entry(key).or_insert(0) += 1;
    }
    let mut occupied = HashSet::with_capacity(a.count());
    for (key, c) in columns {
        let start = -((c / 2) as i64);
        for t in 0..c as i64 {
            let mut v = key.clone();
            v.insert(axis, start + t);
            occupied.insert(v);
        }
    }
    VoxelSet::new(d, a.res.clone(), occupied)
}

/// Deterministic fill order for discrete disks: cells sorted by squared
/// distance of their center to the origin, ties broken lexicographically.
fn disk_fill_order(count: usize) -> Vec<(i64, i64)> {
    // enough candidate cells: radius^2 * pi >= count
    let r = ((count as f64 / std::f64::consts::PI).sqrt().ceil() as i64) + 3;
    let mut cells: Vec<(i64, i64)> = vec![];
    for i in -r..=r {
        for j in -r..=r {
            cells.push((i, j));
        }
    }
    cells.sort_by_key(|&(i, j)| {
        // 4 * |center|^2 = (2i+1)^2 + (2j+1)^2, exact in integers
        let di = 2 * i + 1;
        let dj = 2 * j + 1;
        (di * di + dj * dj, i, j)
    });
    cells.truncate(count);
    cells
}

/// Ball rearrangement of 2-d slices: each fiber over the remaining axes is
/// replaced by the centered discrete disk with the same voxel count.
pub fn ball_rearrange_2d(a: &VoxelSet, axes: (usize, usize)) -> VoxelSet {
    let d = a.dim;
    assert!(axes.0 < axes.1);
    let mut fibers: std::collections::HashMap<Vec<i64>, usize> = std::collections::HashMap::new();
    for v in &a.occupied {
        let mut key = v.clone();
        key.remove(axes.1);
        key.remove(axes.0);
        *fibers.entry(key).or_insert(0) += 1;
    }
    let mut occupied = HashSet::with_capacity(a.count());
    for (key, c) in fibers {
        for (i, j) in disk_fill_order(c) {
            let mut v = key.clone();
            v.insert(axes.0, i);
            v.insert(axes.1, j);
            occupied.insert(v);
        }
    }
    VoxelSet::new(d, a.res.clone(), occupied)
}

/// Eigenstructure of a family of maps: 1- or 2-dimensional blocks on which
/// map l acts by the scale r_{lj} (times a rotation for 2-d blocks).
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct EigenBlock {
    pub dim: usize,
    pub scales: Vec<f64>,
    #[serde(default)]
    pub angles: Vec<f64>,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct EigenStructure {
    pub blocks: Vec<EigenBlock>,
}

impl EigenStructure {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn n_maps(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.scales.len())
    }

    /// The block-diagonal matrices described by the structure.
    pub fn maps(&self) -> Vec<Vec<Vec<f64>>> {
        let d = self.total_dim();
        let k = self.n_maps();
        let mut out = vec![vec![vec![0.0; d]; d]; k];
        for (l, map) in out.iter_mut().enumerate() {
            let mut offset = 0;
            for b in &self.blocks {
                match b.dim {
                    1 => {
                        map[offset][offset] = b.scales[l];
                    }
                    2 => {
                        let (s, c) = b.angles[l].sin_cos();
                        map[offset][offset] = b.scales[l] * c;
                        map[offset][offset + 1] = -b.scales[l] * s;
                        map[offset + 1][offset] = b.scales[l] * s;
                        map[offset + 1][offset + 1] = b.scales[l] * c;
                    }
                    _ => panic!("blocks must be 1- or 2-dimensional"),
                }
                offset += b.dim;
            }
        }
        out
    }

    /// The lower-bound factor prod_j (sum_l r_lj)^(d_j).
    pub fn bound_factor(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.scales.iter().sum::<f64>().powi(b.dim as i32))
            .product()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CtsBoundReport {
    pub measured: f64,
    pub bound: f64,
    /// estimated rasterization overcount (outward rounding only ever
    /// enlarges the measured sum, so the one-sided check needs no slack)
    pub budget: f64,
    pub pass: bool,
    pub input_measure: f64,
    pub sum_voxels: usize,
}

/// Check μ(M_1 A + ... + M_k A) >= (prod_j (sum_l r_lj)^{d_j}) μ(A) on the
/// voxel grid. The measured value is an outward-rounded superset measure.
pub fn verify_cts_bound(
    a: &VoxelSet,
    eigen: &EigenStructure,
    maps: &[Vec<Vec<f64>>],
) -> Result<CtsBoundReport> {
    let d = a.dim;
    if eigen.total_dim() != d {
        return Err(Error::DimensionMismatch("eigenstructure vs voxel set".into()));
    }
    // maps must agree with the structure within f64 tolerance
    let expect = eigen.maps();
    if maps.len() != expect.len() {
        return Err(Error::DimensionMismatch("maps vs eigenstructure".into()));
    }
    for (m, e) in maps.iter().zip(&expect) {
        for i in 0..d {
            for j in 0..d {
                if (m[i][j] - e[i][j]).abs() > 1e-9 {
                    return Err(Error::Invalid(
                        "maps inconsistent with the eigenstructure".into(),
                    ));
                }
            }
        }
    }
    let sum = voxel_sum(&vec![a.clone(); maps.len()], maps)?;
    let measured = sum.measure_f64();
    let input = a.measure_f64();
    let bound = eigen.bound_factor() * input;
    let h = rat_to_f64(&a.res);
    let budget = sum.boundary_count() as f64 * h.powi(d as i32) * 3f64.powi(d as i32);
    Ok(CtsBoundReport {
        measured,
        bound,
        budget,
        pass: measured >= bound - budget,
        input_measure: input,
        sum_voxels: sum.count(),
    })
}
