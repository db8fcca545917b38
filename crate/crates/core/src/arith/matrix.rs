//! Exact dense linear algebra over Q.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{GaloisError, Result};

pub type QVec = Vec<BigRational>;

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(GaloisError::InvalidInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[QVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GaloisError::InvalidInput("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[QVec]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(GaloisError::InvalidInput("column length mismatch".into()));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(GaloisError::InvalidInput("dimension mismatch in product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<QVec> {
        if v.len() != self.cols {
            return Err(GaloisError::InvalidInput("dimension mismatch in product".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GaloisError::InvalidInput("dimension mismatch in difference".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Reduced row echelon form and pivot columns. The pivot row is the first
    /// row at or below the current one with a nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let upd = m.get(i, j) - &factor * v;
                    m.set(i, j, upd);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<QVec> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        let mut free = Vec::new();
        for c in 0..self.cols {
            if pivot_iter.peek() == Some(&&c) {
                pivot_iter.next();
            } else {
                free.push(c);
            }
        }
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(GaloisError::InvalidInput("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &pivot;
                for j in c..n {
                    let upd = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, upd);
                }
            }
        }
        Ok(det)
    }

    /// Unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[BigRational]) -> Result<QVec> {
        if !self.is_square() || b.len() != self.rows {
            return Err(GaloisError::InvalidInput("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.last() == Some(&n) {
            return Err(GaloisError::DivisionByZero);
        }
        Ok((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(GaloisError::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(GaloisError::DivisionByZero);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

pub fn kernel_basis(m: &Matrix) -> Vec<QVec> {
    m.kernel_basis()
}

/// Canonical basis of the span of `vectors`: the nonzero rows of their RREF.
pub fn echelon_basis(dim: usize, vectors: &[QVec]) -> Vec<QVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors).expect("vectors share a length");
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of the echelon basis `basis`.
pub fn in_span(basis: &[QVec], v: &[BigRational]) -> bool {
    let mut rest = v.to_vec();
    for b in basis {
        let Some(p) = b.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if rest[p].is_zero() {
            continue;
        }
        let factor = &rest[p] / &b[p];
        for (x, y) in rest.iter_mut().zip(b) {
            if !y.is_zero() {
                *x -= &factor * y;
            }
        }
    }
    rest.iter().all(Zero::is_zero)
}

/// Coefficients `c` with `sum c_j columns[j] = target`, when the columns are
/// independent and the target lies in their span.
pub fn solve_in_columns(dim: usize, columns: &[QVec], target: &[BigRational]) -> Option<QVec> {
    let mut cols = columns.to_vec();
    cols.push(target.to_vec());
    let m = Matrix::from_columns(dim, &cols).ok()?;
    let last = columns.len();
    let k = m.kernel_basis().into_iter().find(|v| !v[last].is_zero())?;
    Some(k[..last].iter().map(|x| -(x / &k[last])).collect())
}

/// Echelon basis of the intersection of two subspaces of Q^dim.
pub fn intersect_spans(dim: usize, a: &[QVec], b: &[QVec]) -> Vec<QVec> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x = sum s_i a_i = sum t_j b_j  <=>  [A^T | -B^T] (s, t) = 0
    let cols: Vec<QVec> = a
        .iter()
        .cloned()
        .chain(b.iter().map(|v| v.iter().map(|x| -x).collect()))
        .collect();
    let m = Matrix::from_columns(dim, &cols).expect("consistent dimensions");
    let vectors: Vec<QVec> = m
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mut x = vec![BigRational::zero(); dim];
            for (s, v) in k.iter().zip(a) {
                if s.is_zero() {
                    continue;
                }
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += s * vi;
                }
            }
            x
        })
        .collect();
    echelon_basis(dim, &vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2)).len(), 2);
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        let k = kernel_basis(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn det_inverse_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant().unwrap(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(a.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert!(m(&[&[1, 1], &[2, 2]]).inverse().is_err());
        assert_eq!(m(&[&[1, 1], &[2, 2]]).determinant().unwrap(), int(0));
    }

    #[test]
    fn span_helpers() {
        let a = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        let b = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        assert_eq!(intersect_spans(3, &a, &b), vec![vec![int(0), int(1), int(0)]]);
        assert!(in_span(&a, &[int(3), int(-2), int(0)]));
        assert!(!in_span(&a, &[int(0), int(0), int(1)]));
    }

    proptest! {
        #[test]
        fn kernel_is_exact_and_rank_nullity(entries in prop::collection::vec(-3i64..=3, 12), rows in 1usize..=4) {
            let cols = 12 / rows.max(1);
            let entries: Vec<_> = entries.into_iter().take(rows * cols).map(int).collect();
            let a = Matrix::from_entries(rows, cols, entries).unwrap();
            let k = a.kernel_basis();
            for v in &k {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(a.rank() + k.len(), cols);
            if !k.is_empty() {
                let km = Matrix::from_rows(&k).unwrap();
                prop_assert_eq!(km.rank(), k.len());
            }
        }
    }
}
