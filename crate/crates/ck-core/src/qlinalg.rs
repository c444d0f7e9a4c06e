//! Dense exact linear algebra over Q(i, sqrt2): reduced row echelon form,
//! fraction-free rank, nullspaces and annihilators. This is the workhorse
//! behind subspace canonicalization and all span/rank verification.

use std::fmt;

use crate::error::{CkError, Result};
use crate::scalar::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nr, nc);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (c, v) in row.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |r, c| {
            Cyclotomic::from_int(rows[r][c])
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Cyclotomic> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj_transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> QMatrix {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, k: &Cyclotomic) -> QMatrix {
        self.map(|x| x * k)
    }

    fn check_same_shape(&self, other: &QMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CkError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(CkError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let add = a * b;
                    out[(r, c)] += add;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if self.cols != v.len() {
            return Err(CkError::LengthMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = vec![Cyclotomic::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self[(r, c)].is_zero() && !v[c].is_zero() {
                    out[r] += &self[(r, c)] * &v[c];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)].clone();
        }
        t
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        QMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self[(r, c)].clone() } else { other[(r, c - self.cols)].clone() }
        })
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        QMatrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows { self[(r, c)].clone() } else { other[(r - self.rows, c)].clone() }
        })
    }

    /// Reduced row echelon form with unit pivots; returns pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m[(lead, col)].inv().expect("pivot nonzero");
            for c in col..m.cols {
                m[(lead, c)] = &m[(lead, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != lead && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        let sub = &f * &m[(lead, c)];
                        m[(r, c)] -= sub;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank by fraction-free (Bareiss-style) elimination; divisions are exact
    /// in the ring generated by the entries, keeping coefficient growth tame.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (nr, nc) = (m.rows, m.cols);
        let mut prev = Cyclotomic::one();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..nc {
            if row >= nr {
                break;
            }
            let Some(pr) = (row..nr).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let piv = m[(row, col)].clone();
            for r in row + 1..nr {
                for c in col + 1..nc {
                    let num = &(&piv * &m[(r, c)]) - &(&m[(r, col)] * &m[(row, c)]);
                    m[(r, c)] = num.div(&prev).expect("bareiss divisor nonzero");
                }
                m[(r, col)] = Cyclotomic::zero();
            }
            prev = piv;
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Basis of the right nullspace {x : M x = 0}, one vector per row.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Cyclotomic::zero(); self.cols];
            v[fc] = Cyclotomic::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r[(prow, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left nullspace {y : y M = 0}.
    pub fn left_nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        self.transpose().nullspace()
    }

    /// Solve M x = b; `None` when inconsistent. Returns one particular solution.
    pub fn solve(&self, b: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        assert_eq!(b.len(), self.rows);
        let bmat = QMatrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let aug = self.hstack(&bmat);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r[(prow, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by fraction-free elimination (square matrices).
    pub fn det(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Cyclotomic::one();
        }
        let mut m = self.clone();
        let mut prev = Cyclotomic::one();
        let mut sign = false;
        for k in 0..n - 1 {
            let Some(pr) = (k..n).find(|&r| !m[(r, k)].is_zero()) else {
                return Cyclotomic::zero();
            };
            if pr != k {
                m.swap_rows(k, pr);
                sign = !sign;
            }
            let piv = m[(k, k)].clone();
            for r in k + 1..n {
                for c in k + 1..n {
                    let num = &(&piv * &m[(r, c)]) - &(&m[(r, k)] * &m[(k, c)]);
                    m[(r, c)] = num.div(&prev).expect("bareiss divisor nonzero");
                }
                m[(r, k)] = Cyclotomic::zero();
            }
            prev = piv;
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Inverse of a square invertible matrix; error when singular.
    pub fn inverse(&self) -> Result<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&QMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(CkError::NotInvertible);
        }
        Ok(QMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// k-th exterior power: entries are k x k minors indexed by sorted
    /// k-subsets in lexicographic order.
    pub fn exterior_power(&self, k: usize) -> QMatrix {
        let row_subsets = subsets(self.rows, k);
        let col_subsets = subsets(self.cols, k);
        QMatrix::from_fn(row_subsets.len(), col_subsets.len(), |r, c| {
            self.minor(&row_subsets[r], &col_subsets[c])
        })
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Cyclotomic {
        let k = rows.len();
        QMatrix::from_fn(k, k, |r, c| self[(rows[r], cols[c])].clone()).det()
    }

    /// Kronecker product.
    pub fn kronecker(&self, other: &QMatrix) -> QMatrix {
        QMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (r1, r2) = (r / other.rows, r % other.rows);
            let (c1, c2) = (c / other.cols, c % other.cols);
            &self[(r1, c1)] * &other[(r2, c2)]
        })
    }
}

/// Sorted k-subsets of {0..n-1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n.saturating_sub(k) {
            cur.push(i);
            rec(i + 1, n, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Cyclotomic;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[(0, 0)], Cyclotomic::one());
        assert!(r.row(2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = QMatrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn det_and_inverse() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), Cyclotomic::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn exterior_power_multiplicative() {
        let a = QMatrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let b = QMatrix::from_int_rows(&[&[2, 0, 1], &[1, 1, 0], &[0, 2, 1]]);
        let lhs = a.mul(&b).unwrap().exterior_power(2);
        let rhs = a.exterior_power(2).mul(&b.exterior_power(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bareiss_rank_matches_rref_rank() {
        let m = QMatrix::from_fn(5, 7, |r, c| Cyclotomic::from_int(((r * c + r) % 4) as i64 - 1));
        assert_eq!(m.rank(), m.rref().1.len());
    }
}
