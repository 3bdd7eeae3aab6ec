//! The lattice-density calculus: densities of periodic sets relative to
//! flags of sublattices, represented as compressed staircase bodies.
//!
//! A staircase body is a height grid over the cells of axes 2..r (cell
//! widths 1/m_l) with heights in [0,1] along axis 1. The canonical form
//! sorts heights non-increasingly along axes r, r-1, ..., 2 in that order;
//! the represented body is then a downset and equality is structural. The
//! closure-of-interior correction in the underlying compression is automatic
//! here: degenerate zero-height slabs are not representable.

pub mod flags;
pub mod regular;

use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::matrix::IMat;
use crate::rat::{rat_int, Rat};
use crate::sumset::PointSet;
use num_traits::Zero;
use std::collections::{HashMap, HashSet};

pub const DEFAULT_DENSITY_CAP: u128 = 1_000_000;

/// A d-periodic subset of Z^d: a full-rank period lattice and the canonical
/// residues of the set modulo that lattice.
#[derive(Clone, Debug)]
pub struct PeriodicSet {
    pub period: IntegerLattice,
    pub residues: Vec<Vec<i64>>,
    lookup: HashSet<Vec<i64>>,
}

impl PartialEq for PeriodicSet {
    fn eq(&self, other: &Self) -> bool {
        self.period == other.period && self.residues == other.residues
    }
}

impl PeriodicSet {
    pub fn new(period: IntegerLattice, residues: Vec<Vec<i64>>) -> Self {
        let reduced: HashSet<Vec<i64>> = residues.iter().map(|r| period.reduce(r)).collect();
        let mut sorted: Vec<Vec<i64>> = reduced.iter().cloned().collect();
        sorted.sort();
        PeriodicSet {
            period,
            residues: sorted,
            lookup: reduced,
        }
    }

    pub fn dim(&self) -> usize {
        self.period.dim()
    }

    /// The whole ambient lattice Z^d.
    pub fn full(dim: usize) -> Self {
        PeriodicSet::new(IntegerLattice::standard(dim), vec![vec![0; dim]])
    }

    /// A sublattice viewed as a periodic set.
    pub fn from_lattice(l: &IntegerLattice) -> Self {
        let dim = l.dim();
        PeriodicSet::new(l.clone(), vec![vec![0; dim]])
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.lookup.contains(&self.period.reduce(v))
    }

    pub fn translate(&self, a: &[i64]) -> Self {
        let moved: Vec<Vec<i64>> = self
            .residues
            .iter()
            .map(|r| r.iter().zip(a).map(|(x, y)| x + y).collect())
            .collect();
        PeriodicSet::new(self.period.clone(), moved)
    }

    /// Density |A mod P| / [Z^d : P] of the set in the ambient lattice.
    pub fn global_density(&self) -> Rat {
        Rat::new(
            (self.residues.len() as i64).into(),
            (self.period.index() as i64).into(),
        )
    }

    /// Re-represent with a finer period (new ⊆ current).
    pub fn refine(&self, finer: &IntegerLattice, cap: u128) -> Result<Self> {
        if finer == &self.period {
            return Ok(self.clone());
        }
        let reps = self.period.coset_reps(finer, cap)?;
        let mut residues = vec![];
        for r in &self.residues {
            for t in &reps {
                residues.push(r.iter().zip(t).map(|(a, b)| a + b).collect());
            }
        }
        Ok(PeriodicSet::new(finer.clone(), residues))
    }

    /// Image under a nonsingular integer matrix.
    pub fn apply_matrix(&self, m: &IMat) -> Result<Self> {
        let period = self.period.apply(m)?;
        let residues: Vec<Vec<i64>> = self
            .residues
            .iter()
            .map(|r| {
                let big: Vec<num_bigint::BigInt> =
                    r.iter().map(|&x| num_bigint::BigInt::from(x)).collect();
                m.mul_vec(&big)
                    .iter()
                    .map(|x| {
                        use num_traits::ToPrimitive;
                        x.to_i64().ok_or(Error::Overflow("periodic image"))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(PeriodicSet::new(period, residues))
    }

    /// Set equality through a common refinement.
    pub fn set_equal(&self, other: &Self, cap: u128) -> Result<bool> {
        let q = self.period.intersect(&other.period)?;
        let a = self.refine(&q, cap)?;
        let b = other.refine(&q, cap)?;
        Ok(a.residues == b.residues)
    }

    /// Union with another set over a common refinement.
    pub fn union(&self, other: &Self, cap: u128) -> Result<Self> {
        let q = self.period.intersect(&other.period)?;
        let a = self.refine(&q, cap)?;
        let b = other.refine(&q, cap)?;
        let mut residues = a.residues;
        residues.extend(b.residues);
        Ok(PeriodicSet::new(q, residues))
    }

    /// The finite points of the set inside the half-open box
    /// [origin, origin + sides).
    pub fn points_in_box(&self, origin: &[i64], sides: &[i64], cap: u128) -> Result<PointSet> {
        let d = self.dim();
        let vol: u128 = sides.iter().map(|&s| s as u128).product();
        if vol > cap {
            return Err(Error::IndexCapExceeded { got: vol, cap });
        }
        let mut pts = vec![];
        let mut counter = vec![0i64; d];
        'scan: loop {
            let p: Vec<i64> = counter.iter().zip(origin).map(|(c, o)| c + o).collect();
            if self.contains(&p) {
                pts.push(p);
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    break 'scan;
                }
                counter[pos] += 1;
                if counter[pos] < sides[pos] {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
        }
        Ok(PointSet::new(d, pts))
    }
}

/// A verified chain L_1 ⊆ L_2 ⊆ ... ⊆ L_r of full-rank sublattices of Z^d.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    pub chain: Vec<IntegerLattice>,
    /// indices [L_l : L_{l-1}] for l = 2..r
    pub rel_indices: Vec<u128>,
}

impl Flag {
    pub fn new(chain: Vec<IntegerLattice>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::Invalid("empty flag".into()));
        }
        let dim = chain[0].dim();
        for w in chain.windows(2) {
            if w[1].dim() != dim || !w[1].contains_lattice(&w[0]) {
                return Err(Error::NotASublattice);
            }
        }
        let rel_indices = chain
            .windows(2)
            .map(|w| w[1].index_of(&w[0]))
            .collect::<Result<_>>()?;
        Ok(Flag { chain, rel_indices })
    }

    pub fn dim(&self) -> usize {
        self.chain[0].dim()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> &IntegerLattice {
        &self.chain[0]
    }

    pub fn top(&self) -> &IntegerLattice {
        self.chain.last().unwrap()
    }

    fn drop_top(&self) -> Flag {
        Flag {
            chain: self.chain[..self.chain.len() - 1].to_vec(),
            rel_indices: self.rel_indices[..self.rel_indices.len() - 1].to_vec(),
        }
    }
}

/// Compressed lattice density as a monotone height grid.
#[derive(Clone, Debug, PartialEq)]
pub struct StaircaseBody {
    /// grid sizes m_2, ..., m_r (empty when the flag has one member)
    pub dims: Vec<usize>,
    /// heights in [0,1], row-major with axis 2 slowest
    pub heights: Vec<Rat>,
}

impl StaircaseBody {
    pub fn empty_like(dims: Vec<usize>) -> Self {
        let cells = dims.iter().product::<usize>().max(1);
        StaircaseBody {
            dims,
            heights: vec![Rat::zero(); cells],
        }
    }

    pub fn cells(&self) -> usize {
        self.heights.len()
    }

    fn strides(&self) -> Vec<usize> {
        let r = self.dims.len();
        let mut s = vec![1usize; r];
        for j in (0..r.saturating_sub(1)).rev() {
            s[j] = s[j + 1] * self.dims[j + 1];
        }
        s
    }

    pub fn cell(&self, idx: &[usize]) -> &Rat {
        let s = self.strides();
        let flat: usize = idx.iter().zip(&s).map(|(i, st)| i * st).sum();
        &self.heights[flat]
    }

    /// Vol = (sum of heights) / prod m_l.
    pub fn volume(&self) -> Rat {
        let total: Rat = self.heights.iter().sum();
        let cells: i64 = self.cells() as i64;
        total / rat_int(cells)
    }

    /// Sort heights non-increasingly along axes r, r-1, ..., 2.
    pub fn canonicalize(&mut self) {
        let r = self.dims.len();
        if r == 0 {
            return;
        }
        let strides = self.strides();
        for axis in (0..r).rev() {
            let m = self.dims[axis];
            if m <= 1 {
                continue;
            }
            // iterate over all fixed values of the other axes
            let mut fixed = vec![0usize; r];
            'outer: loop {
                let base: usize = fixed
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != axis)
                    .map(|(j, &i)| i * strides[j])
                    .sum();
                let mut vals: Vec<Rat> = (0..m)
                    .map(|i| self.heights[base + i * strides[axis]].clone())
                    .collect();
                vals.sort_by(|a, b| b.cmp(a));
                for (i, v) in vals.into_iter().enumerate() {
                    self.heights[base + i * strides[axis]] = v;
                }
                // advance the mixed counter, skipping the sorting axis
                let mut pos = 0;
                loop {
                    if pos == r {
                        break 'outer;
                    }
                    if pos == axis {
                        pos += 1;
                        continue;
                    }
                    fixed[pos] += 1;
                    if fixed[pos] < self.dims[pos] {
                        break;
                    }
                    fixed[pos] = 0;
                    pos += 1;
                }
            }
        }
    }

    pub fn is_compressed(&self) -> bool {
        let r = self.dims.len();
        let strides = self.strides();
        for axis in 0..r {
            let m = self.dims[axis];
            let mut idx = vec![0usize; r];
            'outer: loop {
                let base: usize = idx
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != axis)
                    .map(|(j, &i)| i * strides[j])
                    .sum();
                for i in 1..m {
                    if self.heights[base + (i - 1) * strides[axis]]
                        < self.heights[base + i * strides[axis]]
                    {
                        return false;
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == r {
                        break 'outer;
                    }
                    if pos == axis {
                        pos += 1;
                        continue;
                    }
                    idx[pos] += 1;
                    if idx[pos] < self.dims[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
        true
    }

    /// Projection onto axis l (1-based): axis 1 gives the maximum height;
    /// axis l >= 2 gives (cells with positive height along that axis at the
    /// origin corner) / m_l, which for a compressed body is the measure of
    /// the projection interval.
    pub fn projection(&self, l: usize) -> Rat {
        if l == 1 {
            return self.heights.iter().max().cloned().unwrap_or_else(Rat::zero);
        }
        let axis = l - 2;
        let m = self.dims[axis];
        let strides = self.strides();
        let count = (0..m)
            .filter(|&i| !self.heights[i * strides[axis]].is_zero())
            .count();
        Rat::new((count as i64).into(), (m as i64).into())
    }

    /// Membership of the grid point (r, c_2/m_2, ..., c_r/m_r) in the closed
    /// body (c_l in 0..=m_l).
    pub fn contains_grid_point(&self, r: &Rat, counts: &[usize]) -> bool {
        assert_eq!(counts.len(), self.dims.len());
        if r.is_zero() {
            return true;
        }
        let idx: Vec<usize> = counts
            .iter()
            .map(|&c| c.saturating_sub(1))
            .collect();
        if idx.iter().zip(&self.dims).any(|(&i, &m)| i >= m) {
            return false;
        }
        r <= self.cell(&idx)
    }

    /// Upper-corner grid points of all cells with positive height.
    pub fn corner_points(&self) -> Vec<(Rat, Vec<usize>)> {
        let r = self.dims.len();
        let strides = self.strides();
        let mut out = vec![];
        for flat in 0..self.cells() {
            if self.heights[flat].is_zero() {
                continue;
            }
            let mut idx = vec![0usize; r];
            let mut rem = flat;
            for j in 0..r {
                idx[j] = rem / strides[j] + 1;
                rem %= strides[j];
            }
            out.push((self.heights[flat].clone(), idx));
        }
        out
    }

    pub fn scale_first_axis(&self, c: &Rat) -> StaircaseBody {
        StaircaseBody {
            dims: self.dims.clone(),
            heights: self.heights.iter().map(|h| h * c).collect(),
        }
    }
}

/// Exact density of A in the affine lattice M (shift + sublattice).
pub fn density(a: &PeriodicSet, m: &IntegerLattice, cap: u128) -> Result<Rat> {
    let shift = m.shift.clone().unwrap_or_else(|| vec![0; m.dim()]);
    let lin = m.linear();
    let q = a.period.intersect(&lin)?;
    let reps = lin.coset_reps(&q, cap)?;
    let count = reps
        .iter()
        .filter(|t| {
            let p: Vec<i64> = t.iter().zip(&shift).map(|(a, b)| a + b).collect();
            a.contains(&p)
        })
        .count();
    Ok(Rat::new((count as i64).into(), (reps.len() as i64).into()))
}

/// The lattice density LD(A; F) as a canonical staircase body.
pub fn lattice_density(a: &PeriodicSet, f: &Flag, cap: u128) -> Result<StaircaseBody> {
    // refine A so its period lies inside the bottom lattice
    let p = a.period.intersect(f.bottom())?;
    let a = a.refine(&p, cap)?;
    lattice_density_rec(&a, f, cap)
}

fn lattice_density_rec(a: &PeriodicSet, f: &Flag, cap: u128) -> Result<StaircaseBody> {
    if f.len() == 1 {
        let h = density(a, f.bottom(), cap)?;
        return Ok(StaircaseBody {
            dims: vec![],
            heights: vec![h],
        });
    }
    let sub_flag = f.drop_top();
    let top = f.top();
    let below = &f.chain[f.len() - 2];
    let reps = top.coset_reps(below, cap)?;
    let m = reps.len();
    let children: Vec<StaircaseBody> = reps
        .iter()
        .map(|r| lattice_density_rec(&a.translate(r), &sub_flag, cap))
        .collect::<Result<_>>()?;
    let mut dims = children[0].dims.clone();
    dims.push(m);
    let child_cells = children[0].cells();
    let mut heights = vec![Rat::zero(); child_cells * m];
    for (j, child) in children.iter().enumerate() {
        for (c, h) in child.heights.iter().enumerate() {
            heights[c * m + j] = h.clone();
        }
    }
    let mut body = StaircaseBody { dims, heights };
    body.canonicalize();
    Ok(body)
}

/// Projection measure computed directly from coset counts, independent of
/// the staircase construction. Axis 1: maximum translated density of the
/// bottom lattice. Axis l >= 2: the maximum number of L_{l-1}-cosets meeting
/// A ∩ L_r inside one L_l-coset, over m_l (the clique reformulation of the
/// pairwise-difference condition).
pub fn projection_direct(a: &PeriodicSet, f: &Flag, l: usize, cap: u128) -> Result<Rat> {
    let top = f.top();
    if l == 1 {
        let bottom = f.bottom();
        let reps = top.coset_reps(bottom, cap)?;
        let mut best = Rat::zero();
        for t in &reps {
            let r = density(&a.translate(t), bottom, cap)?;
            if r > best {
                best = r;
            }
        }
        return Ok(best);
    }
    let ll = &f.chain[l - 1];
    let lprev = &f.chain[l - 2];
    let ml = f.rel_indices[l - 2];
    // classify points of A ∩ L_r modulo P ∩ L_{l-1}
    let q = a.period.intersect(lprev)?;
    let reps = top.coset_reps(&q, cap)?;
    let mut buckets: HashMap<Vec<i64>, HashSet<Vec<i64>>> = HashMap::new();
    for t in &reps {
        if a.contains(t) {
            let key = ll.reduce(t);
            let sub = lprev.reduce(t);
            buckets.entry(key).or_default().insert(sub);
        }
    }
    let best = buckets.values().map(|s| s.len()).max().unwrap_or(0);
    Ok(Rat::new((best as i64).into(), (ml as i64).into()))
}

/// Membership of a grid point in LD(A;F) by exhaustive witness search
/// (independent of the staircase construction): at each level l pick
/// representatives of L_l/L_{l-1} whose translated subtree succeeds; the
/// point lies in the body iff at least m_l representatives succeed per node,
/// with the leaf condition ρ_{L_1}(A + t) >= r.
pub fn ld_contains(
    a: &PeriodicSet,
    f: &Flag,
    r: &Rat,
    counts: &[usize],
    cap: u128,
) -> Result<bool> {
    if counts.len() + 1 != f.len() {
        return Err(Error::DimensionMismatch("grid point arity".into()));
    }
    if r.is_zero() {
        return Ok(true);
    }
    let p = a.period.intersect(f.bottom())?;
    let a = a.refine(&p, cap)?;
    let mut budget: u64 = 2_000_000;
    let zero = vec![0i64; f.dim()];
    solve_witness(&a, f, r, counts, f.len(), &zero, cap, &mut budget)
}

fn solve_witness(
    a: &PeriodicSet,
    f: &Flag,
    r: &Rat,
    counts: &[usize],
    level: usize,
    t: &[i64],
    cap: u128,
    budget: &mut u64,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::SearchCapExceeded);
    }
    *budget -= 1;
    if level == 1 {
        let rho = density(&a.translate(t), f.bottom(), cap)?;
        return Ok(&rho >= r);
    }
    let need = counts[level - 2];
    let ll = &f.chain[level - 1];
    let lprev = &f.chain[level - 2];
    let reps = ll.coset_reps(lprev, cap)?;
    if need > reps.len() {
        return Ok(false);
    }
    let mut successes = 0usize;
    for (i, c) in reps.iter().enumerate() {
        if successes + (reps.len() - i) < need {
            return Ok(false);
        }
        let shifted: Vec<i64> = t.iter().zip(c).map(|(x, y)| x + y).collect();
        if solve_witness(a, f, r, counts, level - 1, &shifted, cap, budget)? {
            successes += 1;
            if successes >= need {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exact periodic sumset M1 A + M2 B with the stored period being the
/// intersection of the image periods (the set is also invariant under their
/// sum, which is accounted for in the residues).
pub fn periodic_sumset(
    a: &PeriodicSet,
    b: &PeriodicSet,
    m1: &IMat,
    m2: &IMat,
    cap: u128,
) -> Result<PeriodicSet> {
    let ia = a.apply_matrix(m1)?;
    let ib = b.apply_matrix(m2)?;
    let q = ia.period.intersect(&ib.period)?;
    let s = ia.period.sum(&ib.period)?;
    let sum_reps = s.coset_reps(&q, cap)?;
    let total = ia.residues.len() as u128 * ib.residues.len() as u128 * sum_reps.len() as u128;
    if total > cap {
        return Err(Error::IndexCapExceeded { got: total, cap });
    }
    let mut residues = vec![];
    for ra in &ia.residues {
        for rb in &ib.residues {
            for t in &sum_reps {
                residues.push(
                    ra.iter()
                        .zip(rb)
                        .zip(t)
                        .map(|((x, y), z)| x + y + z)
                        .collect(),
                );
            }
        }
    }
    Ok(PeriodicSet::new(q, residues))
}

/// Local lattice density LD_S(A; F) of a finite set inside the half-open box
/// S = [origin, origin + sides): the set is tiled periodically by the
/// diagonal lattice of the box sides, which must lie inside the bottom flag
/// lattice.
pub fn local_ld(
    points: &PointSet,
    origin: &[i64],
    sides: &[i64],
    f: &Flag,
    cap: u128,
) -> Result<StaircaseBody> {
    let tile = tiling_lattice(origin, sides, f)?;
    let in_box: Vec<Vec<i64>> = points
        .points
        .iter()
        .filter(|p| {
            p.iter()
                .zip(origin)
                .zip(sides)
                .all(|((&x, &o), &s)| x >= o && x < o + s)
        })
        .cloned()
        .collect();
    let set = PeriodicSet::new(tile, in_box);
    lattice_density(&set, f, cap)
}

/// The diagonal tiling lattice of a box, verified to lie in the bottom flag
/// lattice.
pub fn tiling_lattice(origin: &[i64], sides: &[i64], f: &Flag) -> Result<IntegerLattice> {
    let d = f.dim();
    if origin.len() != d || sides.len() != d {
        return Err(Error::DimensionMismatch("box".into()));
    }
    if sides.iter().any(|&s| s <= 0) {
        return Err(Error::NotTileable("empty box side".into()));
    }
    let tile = IntegerLattice::from_diag(sides);
    for j in 0..d {
        if !f.bottom().member(&tile.basis_col(j)) {
            return Err(Error::NotTileable(format!(
                "side {} not a period of the bottom lattice",
                sides[j]
            )));
        }
    }
    Ok(tile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    /// The worked example: A = 12Z ∪ (12Z+1) ∪ (6Z+3), flag 3Z ⊆ Z.
    fn worked_example() -> (PeriodicSet, Flag) {
        let period = IntegerLattice::scalar(12);
        let mut residues = vec![vec![0], vec![1], vec![3], vec![9]];
        residues.sort();
        let a = PeriodicSet::new(period, residues);
        let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)]).unwrap();
        (a, f)
    }

    #[test]
    fn worked_example_heights() {
        let (a, f) = worked_example();
        let ld = lattice_density(&a, &f, DEFAULT_DENSITY_CAP).unwrap();
        assert_eq!(ld.dims, vec![3]);
        assert_eq!(ld.heights, vec![rat(3, 4), rat(1, 4), rat(0, 1)]);
        assert_eq!(ld.volume(), rat(1, 3));
        assert_eq!(ld.projection(1), rat(3, 4));
        assert_eq!(ld.projection(2), rat(2, 3));
    }

    #[test]
    fn worked_example_direct_projections() {
        let (a, f) = worked_example();
        assert_eq!(
            projection_direct(&a, &f, 1, DEFAULT_DENSITY_CAP).unwrap(),
            rat(3, 4)
        );
        assert_eq!(
            projection_direct(&a, &f, 2, DEFAULT_DENSITY_CAP).unwrap(),
            rat(2, 3)
        );
    }

    #[test]
    fn worked_example_point_membership() {
        let (a, f) = worked_example();
        assert!(ld_contains(&a, &f, &rat(3, 4), &[1], DEFAULT_DENSITY_CAP).unwrap());
        assert!(!ld_contains(&a, &f, &rat(3, 4), &[2], DEFAULT_DENSITY_CAP).unwrap());
        assert!(ld_contains(&a, &f, &rat(1, 4), &[2], DEFAULT_DENSITY_CAP).unwrap());
        assert!(!ld_contains(&a, &f, &rat(1, 3), &[2], DEFAULT_DENSITY_CAP).unwrap());
    }

    #[test]
    fn full_set_all_heights_one() {
        let a = PeriodicSet::full(1);
        let f = Flag::new(vec![
            IntegerLattice::scalar(6),
            IntegerLattice::scalar(2),
            IntegerLattice::standard(1),
        ])
        .unwrap();
        let ld = lattice_density(&a, &f, DEFAULT_DENSITY_CAP).unwrap();
        assert!(ld.heights.iter().all(|h| h == &rat_int(1)));
        assert_eq!(ld.volume(), rat_int(1));
        assert_eq!(ld.projection(1), rat_int(1));
        assert_eq!(ld.projection(2), rat_int(1));
        assert_eq!(ld.projection(3), rat_int(1));
    }

    #[test]
    fn density_examples() {
        // A = {0,3}+6Z: density 1/3 in Z, and 1/3 in 2Z (A ∩ 2Z = 6Z)
        let a = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![3]]);
        assert_eq!(
            density(&a, &IntegerLattice::standard(1), DEFAULT_DENSITY_CAP).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            density(&a, &IntegerLattice::scalar(2), DEFAULT_DENSITY_CAP).unwrap(),
            rat(1, 3)
        );
        let z = PeriodicSet::full(1);
        assert_eq!(
            density(&z, &IntegerLattice::scalar(5), DEFAULT_DENSITY_CAP).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn volume_identity_example() {
        // A = {0,3}+6Z over flag 6Z ⊆ 2Z ⊆ Z: Vol = 1/3
        let a = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![3]]);
        let f = Flag::new(vec![
            IntegerLattice::scalar(6),
            IntegerLattice::scalar(2),
            IntegerLattice::standard(1),
        ])
        .unwrap();
        let ld = lattice_density(&a, &f, DEFAULT_DENSITY_CAP).unwrap();
        assert_eq!(ld.volume(), rat(1, 3));
        assert_eq!(
            ld.volume(),
            density(&a, f.top(), DEFAULT_DENSITY_CAP).unwrap()
        );
    }

    #[test]
    fn paper_periodic_sumsets() {
        // 2(A1) + 3(A2) = 6Z (density 1/6); 2(A2) + 3(A1) = {0,2,3,5}+6Z (2/3)
        let a1 = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![3]]);
        let a2 = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![4]]);
        let two = IMat::from_rows_i64(&[vec![2]]);
        let three = IMat::from_rows_i64(&[vec![3]]);
        let s1 = periodic_sumset(&a1, &a2, &two, &three, DEFAULT_DENSITY_CAP).unwrap();
        let expect1 = PeriodicSet::from_lattice(&IntegerLattice::scalar(6));
        assert!(s1.set_equal(&expect1, DEFAULT_DENSITY_CAP).unwrap());
        assert_eq!(s1.global_density(), rat(1, 6));
        let s2 = periodic_sumset(&a2, &a1, &two, &three, DEFAULT_DENSITY_CAP).unwrap();
        let expect2 = PeriodicSet::new(
            IntegerLattice::scalar(6),
            vec![vec![0], vec![2], vec![3], vec![5]],
        );
        assert!(s2.set_equal(&expect2, DEFAULT_DENSITY_CAP).unwrap());
        assert_eq!(s2.global_density(), rat(2, 3));
    }

    #[test]
    fn sumset_with_zero_translate_identity() {
        // B = 0 + P_A: adding it reproduces A
        let a = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![1], vec![4]]);
        let zero = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0]]);
        let id = IMat::identity(1);
        let s = periodic_sumset(&a, &zero, &id, &id, DEFAULT_DENSITY_CAP).unwrap();
        assert!(s.set_equal(&a, DEFAULT_DENSITY_CAP).unwrap());
    }

    #[test]
    fn translation_invariance_of_ld() {
        let (a, f) = worked_example();
        let ld = lattice_density(&a, &f, DEFAULT_DENSITY_CAP).unwrap();
        // translate by elements of the top lattice Z
        for t in [1i64, 5, -7] {
            let ld2 = lattice_density(&a.translate(&[t]), &f, DEFAULT_DENSITY_CAP).unwrap();
            assert_eq!(ld, ld2);
        }
    }

    #[test]
    fn monotone_under_subset() {
        let (a, f) = worked_example();
        let b = PeriodicSet::new(IntegerLattice::scalar(12), vec![vec![0], vec![3]]);
        let la = lattice_density(&a, &f, DEFAULT_DENSITY_CAP).unwrap();
        let lb = lattice_density(&b, &f, DEFAULT_DENSITY_CAP).unwrap();
        assert!(lb
            .heights
            .iter()
            .zip(&la.heights)
            .all(|(hb, ha)| hb <= ha));
    }

    #[test]
    fn local_ld_matches_periodic_definition() {
        // S = [0,6), A = {0,3}: equals LD of {0,3}+6Z
        let pts = PointSet::new(1, vec![vec![0], vec![3]]);
        let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)]).unwrap();
        let local = local_ld(&pts, &[0], &[6], &f, DEFAULT_DENSITY_CAP).unwrap();
        let periodic = PeriodicSet::new(IntegerLattice::scalar(6), vec![vec![0], vec![3]]);
        let ld = lattice_density(&periodic, &f, DEFAULT_DENSITY_CAP).unwrap();
        assert_eq!(local, ld);
    }

    #[test]
    fn local_ld_empty_box() {
        let pts = PointSet::new(1, vec![vec![7]]);
        let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)]).unwrap();
        let local = local_ld(&pts, &[0], &[6], &f, DEFAULT_DENSITY_CAP).unwrap();
        assert!(local.heights.iter().all(|h| h.is_zero()));
    }

    #[test]
    fn local_ld_independent_of_tiling() {
        // doubling the box (with the same contents extended periodically)
        // leaves the local density unchanged
        let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)]).unwrap();
        let pts6 = PointSet::new(1, vec![vec![0], vec![3]]);
        let pts12 = PointSet::new(1, vec![vec![0], vec![3], vec![6], vec![9]]);
        let l6 = local_ld(&pts6, &[0], &[6], &f, DEFAULT_DENSITY_CAP).unwrap();
        let l12 = local_ld(&pts12, &[0], &[12], &f, DEFAULT_DENSITY_CAP).unwrap();
        assert_eq!(l6, l12);
    }

    #[test]
    fn rejects_non_tileable_box() {
        let pts = PointSet::new(1, vec![vec![0]]);
        let f = Flag::new(vec![IntegerLattice::scalar(3), IntegerLattice::standard(1)]).unwrap();
        assert!(matches!(
            local_ld(&pts, &[0], &[4], &f, DEFAULT_DENSITY_CAP),
            Err(Error::NotTileable(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn canonicalize_is_idempotent_and_compressed(
            dims in proptest::collection::vec(1usize..4, 0..3),
            seed in 0u64..1000,
        ) {
            let cells: usize = dims.iter().product::<usize>().max(1);
            let mut rng = crate::seeded_rng(seed);
            use rand::Rng;
            let heights: Vec<Rat> = (0..cells)
                .map(|_| rat(rng.gen_range(0..=8), 8))
                .collect();
            let mut b = StaircaseBody { dims: dims.clone(), heights };
            let total_before: Rat = b.heights.iter().sum();
            b.canonicalize();
            let total_after: Rat = b.heights.iter().sum();
            proptest::prop_assert_eq!(&total_before, &total_after);
            proptest::prop_assert!(b.is_compressed());
            let again = {
                let mut c = b.clone();
                c.canonicalize();
                c
            };
            proptest::prop_assert_eq!(b, again);
        }
    }

    #[test]
    fn compression_preserves_total() {
        let mut b = StaircaseBody {
            dims: vec![2, 3],
            heights: vec![
                rat(1, 4),
                rat(3, 4),
                rat(1, 2),
                rat_int(1),
                rat(1, 8),
                rat(0, 1),
            ],
        };
        let total_before: Rat = b.heights.iter().sum();
        b.canonicalize();
        let total_after: Rat = b.heights.iter().sum();
        assert_eq!(total_before, total_after);
        assert!(b.is_compressed());
    }
}
