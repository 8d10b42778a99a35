//! Compressed sparse row matrices.

use super::{DenseMatrix, Real};

/// CSR matrix. Column indices within a row are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Real> CsrMatrix<T> {
    /// Builds from `(row, col, value)` triplets. Duplicate coordinates are summed.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, T)>) -> Self {
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut counts = vec![0usize; rows];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of bounds");
            if last == Some((r, c)) {
                let n = values.len();
                values[n - 1] = values[n - 1] + v;
            } else {
                col_idx.push(c);
                values.push(v);
                counts[r] += 1;
                last = Some((r, c));
            }
        }
        let mut row_ptr = vec![0usize; rows + 1];
        for r in 0..rows {
            row_ptr[r + 1] = row_ptr[r] + counts[r];
        }
        Self { rows, cols, row_ptr, col_idx, values }
    }

    pub fn from_dense(m: &DenseMatrix<T>) -> Self {
        let mut triplets = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v != T::zero() {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(m.rows(), m.cols(), triplets)
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        self.col_idx[lo..hi]
            .iter()
            .zip(&self.values[lo..hi])
            .map(|(&c, &v)| (c, v))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.row_entries(i)
            .find(|&(c, _)| c == j)
            .map_or(T::zero(), |(_, v)| v)
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row_entries(i).map(|(c, a)| a * v[c]).sum())
            .collect()
    }

    /// `self^T * v`.
    pub fn tr_matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == T::zero() {
                continue;
            }
            for (c, a) in self.row_entries(i) {
                out[c] = out[c] + a * vi;
            }
        }
        out
    }

    /// `self * X` for dense `X`.
    pub fn matmul_dense(&self, x: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.cols, x.rows());
        let mut out = DenseMatrix::zeros(self.rows, x.cols());
        for i in 0..self.rows {
            for (c, a) in self.row_entries(i) {
                let src = x.row(c);
                let dst = out.row_mut(i);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + a * *s;
                }
            }
        }
        out
    }

    /// `self^T * X` for dense `X`.
    pub fn tr_matmul_dense(&self, x: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.rows, x.rows());
        let mut out = DenseMatrix::zeros(self.cols, x.cols());
        for i in 0..self.rows {
            let src = x.row(i);
            for (c, a) in self.row_entries(i) {
                let dst = out.row_mut(c);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + a * *s;
                }
            }
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_sym_diff(&self) -> T {
        let d = self.to_dense();
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = (d.get(i, j) - d.get(j, i)).abs();
                if e > worst {
                    worst = e;
                }
            }
        }
        worst
    }
}
