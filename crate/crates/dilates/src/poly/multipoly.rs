//! Sparse multivariate polynomials over the rationals with a graded
//! lexicographic term order, plus fraction-free determinants of polynomial
//! matrices and the Sylvester resultant built on them.

use crate::error::{Error, Result};
use crate::poly::upoly::UPoly;
use crate::rat::{denominator_lcm, numerator_gcd, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lex ordering (total degree first, then lex).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u64 = self.0.iter().map(|&e| e as u64).sum();
        let db: u64 = other.0.iter().map(|&e| e as u64).sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Rat>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i)).collect();
        write!(f, "{}", self.format_with_vars(&names))
    }
}

impl MultiPoly {
    /// Human-readable rendering with the given variable names.
    pub fn format_with_vars(&self, names: &[String]) -> String {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&format!("{}", mag));
            } else if mag.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, vars.join("*")));
            }
        }
        out
    }

    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Mono(exps), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn insert_add(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_add(Mono(exps), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; panics if `self` is not a multiple of `divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let exps: Vec<u32> = rm
                .0
                .iter()
                .zip(&dm.0)
                .map(|(a, b)| {
                    assert!(a >= b, "inexact multivariate division");
                    a - b
                })
                .collect();
            let coeff = rc / &dc;
            let t = MultiPoly::monomial(self.nvars, exps, coeff);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        quot
    }

    /// Coefficients with respect to `var`, ascending; entries do not use `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[k].insert_add(Mono(exps), c.clone());
        }
        out
    }

    /// Substitute rational values for all variables.
    pub fn eval(&self, xs: &[Rat]) -> Rat {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &xs[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a value for one variable, keeping the variable slot.
    pub fn eval_var(&self, var: usize, x: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut t = c.clone();
            for _ in 0..e {
                t *= x;
            }
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.insert_add(Mono(exps), t);
        }
        out
    }

    /// gcd-content of the coefficients (gcd of numerators over lcm of denominators).
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let l = denominator_lcm(self.terms.values());
        let scaled: Vec<Rat> = self
            .terms
            .values()
            .map(|c| c * Rat::from_integer(l.clone()))
            .collect();
        Rat::new(numerator_gcd(scaled.iter()), l)
    }

    /// Embed a univariate polynomial using variable `var` of an `nvars` ring.
    pub fn from_upoly(u: &UPoly, var: usize, nvars: usize) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in u.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; nvars];
                exps[var] = k as u32;
                out.insert_add(Mono(exps), c.clone());
            }
        }
        out
    }

    /// Collapse to univariate in `var`; fails if any other variable occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if i != var && e > 0 {
                    return None;
                }
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }
}

/// Fraction-free Bareiss determinant of a square matrix of polynomials.
pub fn det_bareiss(mat: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = mat.len();
    assert!(n > 0 && mat.iter().all(|r| r.len() == n));
    let nvars = mat[0][0].nvars;
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut m: Vec<Vec<MultiPoly>> = mat.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = MultiPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Cofactor-expansion determinant, for small matrices.
pub fn det_cofactor(mat: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = mat.len();
    let nvars = mat[0][0].nvars;
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for (j, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = entry.mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 { acc.add(&sub) } else { acc.sub(&sub) };
    }
    acc
}

/// Resultant of `f` and `g` with respect to variable `var`, as the
/// determinant of their Sylvester matrix computed by fraction-free Bareiss
/// elimination.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateResultant);
    }
    let n = f.degree_in(var) as usize;
    let m = g.degree_in(var) as usize;
    if n == 0 {
        return Err(Error::DegenerateResultant);
    }
    let nvars = f.nvars;
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    if m == 0 {
        // Res(f, c) = c^deg(f)
        let mut acc = MultiPoly::one(nvars);
        for _ in 0..n {
            acc = acc.mul(&gc[0]);
        }
        return Ok(acc);
    }
    let size = n + m;
    let mut mat = vec![vec![MultiPoly::zero(nvars); size]; size];
    // m rows of f coefficients (descending), then n rows of g coefficients.
    for r in 0..m {
        for (k, c) in fc.iter().enumerate() {
            mat[r][r + n - k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in gc.iter().enumerate() {
            mat[m + r][r + m - k] = c.clone();
        }
    }
    Ok(det_bareiss(&mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    /// vars: 0 = y, 1 = x0, 2 = x1
    fn y_x0_x1() -> (MultiPoly, MultiPoly, MultiPoly) {
        (
            MultiPoly::var(3, 0),
            MultiPoly::var(3, 1),
            MultiPoly::var(3, 2),
        )
    }

    #[test]
    fn resultant_linear_case() {
        // Res_y(y - 1, y + 1) = 2
        let y = MultiPoly::var(1, 0);
        let f = y.sub(&MultiPoly::one(1));
        let g = y.add(&MultiPoly::one(1));
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, MultiPoly::constant(1, rat_int(2)));
    }

    #[test]
    fn resultant_sqrt2_norm_form() {
        // Res_y(y^2 - 2, x0 + x1*y) = x0^2 - 2*x1^2
        let (y, x0, x1) = y_x0_x1();
        let f = y.mul(&y).sub(&MultiPoly::constant(3, rat_int(2)));
        let g = x0.add(&x1.mul(&y));
        let r = resultant(&f, &g, 0).unwrap();
        let expect = x0.mul(&x0).sub(&x1.mul(&x1).scale(&rat_int(2)));
        assert_eq!(r, expect);
    }

    #[test]
    fn resultant_gaussian_norm_form() {
        // Res_y(y^2 + 1, x0 + x1*y) = x0^2 + x1^2
        let (y, x0, x1) = y_x0_x1();
        let f = y.mul(&y).add(&MultiPoly::one(3));
        let g = x0.add(&x1.mul(&y));
        let r = resultant(&f, &g, 0).unwrap();
        let expect = x0.mul(&x0).add(&x1.mul(&x1));
        assert_eq!(r, expect);
    }

    #[test]
    fn resultant_rejects_zero_operand() {
        let y = MultiPoly::var(1, 0);
        assert!(matches!(
            resultant(&y, &MultiPoly::zero(1), 0),
            Err(Error::DegenerateResultant)
        ));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // det over polynomials in 2 vars
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(2, 1);
        let one = MultiPoly::one(2);
        let mat = vec![
            vec![a.clone(), b.clone(), one.clone()],
            vec![b.clone(), one.clone(), a.clone()],
            vec![one.clone(), a.clone(), b.clone()],
        ];
        assert_eq!(det_bareiss(&mat), det_cofactor(&mat));
    }

    #[test]
    fn resultant_multiplicative() {
        // Res(f, g*h) = Res(f,g) * Res(f,h) on random small polynomials
        let mut rng = crate::seeded_rng(12);
        use rand::Rng;
        let mut rand_poly = |deg_y: u32, rng: &mut rand_chacha::ChaCha8Rng| {
            let mut acc = MultiPoly::zero(2);
            for e in 0..=deg_y {
                let c = rng.gen_range(-4..=4i64);
                if c != 0 {
                    acc = acc.add(&MultiPoly::monomial(2, vec![e, 0], rat_int(c)));
                }
                let cx = rng.gen_range(-2..=2i64);
                if cx != 0 {
                    acc = acc.add(&MultiPoly::monomial(2, vec![e, 1], rat_int(cx)));
                }
            }
            acc
        };
        let mut done = 0;
        while done < 40 {
            let f = rand_poly(rng.gen_range(1..=3), &mut rng);
            let g = rand_poly(rng.gen_range(1..=2), &mut rng);
            let h = rand_poly(rng.gen_range(1..=2), &mut rng);
            if f.degree_in(0) == 0 || g.is_zero() || h.is_zero() {
                continue;
            }
            let lhs = resultant(&f, &g.mul(&h), 0).unwrap();
            let rhs = resultant(&f, &g, 0).unwrap().mul(&resultant(&f, &h, 0).unwrap());
            assert_eq!(lhs, rhs);
            done += 1;
        }
    }

    #[test]
    fn div_exact_roundtrip() {
        let (y, x0, x1) = y_x0_x1();
        let f = y.mul(&x0).add(&x1).add(&MultiPoly::one(3));
        let g = x0.mul(&x0).sub(&y.scale(&rat(1, 2)));
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&g), f);
    }
}
