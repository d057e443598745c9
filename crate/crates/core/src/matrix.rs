//! Dense matrices over an exact field, with reduced row-echelon form,
//! kernels and linear solving. Row-major storage; sizes here are tiny
//! (a handful of rows and columns), so no pivoting strategy beyond
//! "first nonzero" is needed and every result is exact.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix::from_fn(self.rows, self.cols, |r, c| f(&self[(r, c)]))
    }

    pub fn conjugate(&self) -> Self {
        self.map(K::conjugate)
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = K::zero();
            for k in 0..self.cols {
                acc = acc + self[(r, k)].clone() * rhs[(k, c)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = K::zero();
                for c in 0..self.cols {
                    acc = acc + self[(r, c)].clone() * v[c].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + rhs[(r, c)].clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row counts");
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Self {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place Gauss-Jordan reduction to reduced row-echelon form.
    /// Returns the pivot columns; their count is the rank.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            let inv_pivot = K::one() / self[(pivot_row, col)].clone();
            for c in col..self.cols {
                self[(pivot_row, c)] = self[(pivot_row, c)].clone() * inv_pivot.clone();
            }
            for r in 0..self.rows {
                if r != pivot_row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        self[(r, c)] = self[(r, c)].clone()
                            - factor.clone() * self[(pivot_row, c)].clone();
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{x : Ax = 0}`, one vector per row,
    /// built from the reduced echelon form by the free-variable rule.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Ax = b` with all free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(self.rows, b.len(), "solve rhs length");
        let rhs = Matrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let mut aug = self.hstack(&rhs);
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<K> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (r, c): (usize, usize)) -> &K {
        &self.data[r * self.cols + c]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut K {
        &mut self.data[r * self.cols + c]
    }
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
