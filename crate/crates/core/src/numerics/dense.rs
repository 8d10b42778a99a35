//! Row-major dense matrices with the handful of operations the pipeline needs.

use serde::{Deserialize, Serialize};

use super::Real;
use crate::error::Error;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "dense shape mismatch");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == T::zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + a * *s;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    /// `self^T * v` without materializing the transpose.
    pub fn tr_matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "tr_matvec shape mismatch");
        let mut out = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == T::zero() {
                continue;
            }
            for (o, s) in out.iter_mut().zip(self.row(i)) {
                *o = *o + vi * *s;
            }
        }
        out
    }

    /// Gram matrix `self^T * self`.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for a in 0..self.cols {
                let ra = row[a];
                if ra == T::zero() {
                    continue;
                }
                for b in 0..self.cols {
                    let v = out.get(a, b) + ra * row[b];
                    out.set(a, b, v);
                }
            }
        }
        out
    }

    pub fn scale(&mut self, s: T) {
        for v in &mut self.data {
            *v = *v * s;
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: T) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (d, o) in self.data.iter_mut().zip(&other.data) {
            *d = *d + s * *o;
        }
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|v| v.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Solves `self * X = B` by LU decomposition with partial pivoting.
    ///
    /// Used for the dense teleport-propagation solve and as a rank probe;
    /// iterative solves elsewhere go through the conjugate-gradient path.
    pub fn lu_solve(&self, b: &Self) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols, "lu_solve needs a square matrix");
        assert_eq!(self.rows, b.rows, "lu_solve rhs shape mismatch");
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs().max(T::one());
        let tiny = T::of(1e-13) * scale;

        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_val = lu.get(k, k).abs();
            for r in k + 1..n {
                let v = lu.get(r, k).abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = r;
                }
            }
            if pivot_val <= tiny {
                return Err(Error::Numeric(format!(
                    "singular matrix in LU solve (pivot {pivot_val} at column {k})"
                )));
            }
            if pivot_row != k {
                for j in 0..n {
                    let a = lu.get(k, j);
                    let b = lu.get(pivot_row, j);
                    lu.set(k, j, b);
                    lu.set(pivot_row, j, a);
                }
                perm.swap(k, pivot_row);
            }
            let pk = lu.get(k, k);
            for r in k + 1..n {
                let f = lu.get(r, k) / pk;
                lu.set(r, k, f);
                for j in k + 1..n {
                    let v = lu.get(r, j) - f * lu.get(k, j);
                    lu.set(r, j, v);
                }
            }
        }

        let mut out = Self::zeros(n, b.cols);
        let mut col = vec![T::zero(); n];
        for c in 0..b.cols {
            for i in 0..n {
                col[i] = b.get(perm[i], c);
            }
            // forward substitution (unit lower triangle)
            for i in 1..n {
                let mut s = col[i];
                for j in 0..i {
                    s = s - lu.get(i, j) * col[j];
                }
                col[i] = s;
            }
            // back substitution
            for i in (0..n).rev() {
                let mut s = col[i];
                for j in i + 1..n {
                    s = s - lu.get(i, j) * col[j];
                }
                col[i] = s / lu.get(i, i);
            }
            for i in 0..n {
                out.set(i, c, col[i]);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_transpose() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let c = a.matmul(&b);
        assert_eq!(c.row(0), &[2.0, 1.0]);
        assert_eq!(c.row(1), &[4.0, 3.0]);
        assert_eq!(a.transpose().row(0), &[1.0, 3.0]);
    }

    #[test]
    fn gram_matches_explicit_product() {
        let z = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]);
        let g = z.gram();
        let g2 = z.transpose().matmul(&z);
        assert_eq!(g, g2);
    }

    #[test]
    fn tr_matvec_matches_transpose() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]);
        let v = vec![1.0, -1.0];
        assert_eq!(a.tr_matvec(&v), a.transpose().matvec(&v));
    }

    #[test]
    fn lu_solves_small_system() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![4.0, 1.0], vec![1.0, 3.0]]);
        let b = DenseMatrix::from_rows(&[vec![1.0], vec![2.0]]);
        let x = a.lu_solve(&b).unwrap();
        // hand solution of [[4,1],[1,3]] x = [1,2]
        assert!((x.get(0, 0) - 1.0 / 11.0).abs() < 1e-12);
        assert!((x.get(1, 0) - 7.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn lu_rejects_singular() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let b = DenseMatrix::from_rows(&[vec![1.0], vec![1.0]]);
        assert!(a.lu_solve(&b).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let a: DenseMatrix<f32> = DenseMatrix::identity(3);
        let v = a.matvec(&[1.0f32, 2.0, 3.0]);
        assert_eq!(v, vec![1.0f32, 2.0, 3.0]);
    }
}
