//! Small dense matrices over BigInt and over Q, sized for d <= 8.

use crate::poly::UPoly;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> IMat {
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, s);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = QMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn det(&self) -> Rat {
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                for j in 0..n {
                    let t = m[(k, j)].clone();
                    m[(k, j)] = m[(p, j)].clone();
                    m[(p, j)] = t;
                }
                det = -det;
            }
            let pivot = m[(k, k)].clone();
            det *= &pivot;
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let factor = &m[(i, k)] / &pivot;
                for j in k..n {
                    let t = &factor * &m[(k, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] /= pivot.clone();
                inv[(k, j)] /= pivot.clone();
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let t1 = &f * &a[(k, j)];
                    a[(i, j)] -= t1;
                    let t2 = &f * &inv[(k, j)];
                    inv[(i, j)] -= t2;
                }
            }
        }
        Some(inv)
    }

    /// Solve self * x = b; None when singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        Some(self.inverse()?.mul_vec(b))
    }

    /// Characteristic polynomial via Faddeev-LeVerrier (exact over Q).
    pub fn charpoly(&self) -> UPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // p(x) = x^n - c1 x^(n-1) - c2 x^(n-2) - ... - cn
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut mk = self.clone();
        let mut cs = vec![];
        for k in 1..=n {
            let ck = mk.trace() / crate::rat::rat_int(k as i64);
            cs.push(ck.clone());
            if k < n {
                let mut shifted = mk.clone();
                for i in 0..n {
                    shifted[(i, i)] -= ck.clone();
                }
                mk = self.mul(&shifted);
            }
        }
        for (k, c) in cs.iter().enumerate() {
            coeffs[n - 1 - k] = -c.clone();
        }
        UPoly::new(coeffs)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Clears denominators: returns (integer matrix, common denominator).
    pub fn to_imat_scaled(&self) -> (IMat, BigInt) {
        let l = crate::rat::denominator_lcm(self.data.iter());
        let mut m = IMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let r = &self[(i, j)];
                m[(i, j)] = r.numer() * (&l / r.denom());
            }
        }
        (m, l)
    }

    /// Entry-wise absolute-value f64 infinity norm (row sum); approximate.
    pub fn inf_norm_f64(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| crate::rat::rat_to_f64(&self[(i, j)]).abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn det_matches_cofactor_3x3() {
        let m = IMat::from_rows_i64(&[vec![2, 1, 0], vec![-1, 3, 4], vec![5, 0, 1]]);
        // cofactor by hand: 2*(3*1-4*0) - 1*(-1*1-4*5) + 0 = 6 + 21 = 27
        assert_eq!(m.det(), BigInt::from(27));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IMat::from_rows_i64(&[vec![1, 2], vec![3, 5]]).to_qmat();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
    }

    #[test]
    fn charpoly_companion_sqrt2() {
        // companion of y^2-2 has charpoly x^2 - 2
        let m = IMat::from_rows_i64(&[vec![0, 2], vec![1, 0]]).to_qmat();
        let cp = m.charpoly();
        assert_eq!(cp, UPoly::new(vec![rat_int(-2), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn charpoly_singular() {
        let m = IMat::from_rows_i64(&[vec![1, 1], vec![1, 1]]).to_qmat();
        // x^2 - 2x
        assert_eq!(
            m.charpoly(),
            UPoly::new(vec![rat_int(0), rat_int(-2), rat_int(1)])
        );
    }
}
