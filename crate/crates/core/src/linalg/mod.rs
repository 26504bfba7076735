//! Dense matrices, symmetric eigendecomposition, PSD factorization and
//! Haar-random orthogonal transforms.

mod jacobi;
mod orthogonal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use jacobi::{sym_eigen, SpectralData, DEFAULT_EIGEN_TOL};
pub use orthogonal::{random_orthogonal, random_orthonormal_frame};

/// Eigenvalues below this are clipped to zero by [`psd_factor`].
pub const DEFAULT_PSD_TOL: f64 = 1e-8;

/// Dense symmetric matrix. Setters write both triangles, so the stored
/// entries are always exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// The all-ones matrix J.
    pub fn ones(n: usize) -> Self {
        SymMatrix { n, data: vec![1.0; n * n] }
    }

    /// Builds from the upper triangle of `f(i, j)`, `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn add_diagonal(&mut self, values: &[f64]) {
        for (i, v) in values.iter().enumerate() {
            self.data[i * self.n + i] += v;
        }
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: f64, other: &SymMatrix) -> Result<SymMatrix> {
        check_order(self.n, other.n)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + alpha * b).collect();
        Ok(SymMatrix { n: self.n, data })
    }

    pub fn scale(&self, alpha: f64) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(|a| alpha * a).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_order(self.n, x.len())?;
        Ok((0..self.n).map(|i| dot_slices(self.row(i), x)).collect())
    }

    /// Frobenius inner product `trace(AᵀB)`.
    pub fn dot(&self, other: &SymMatrix) -> Result<f64> {
        check_order(self.n, other.n)?;
        Ok(dot_slices(&self.data, &other.data))
    }

    /// Rayleigh quotient `xᵀSx / xᵀx`.
    pub fn rayleigh(&self, x: &[f64]) -> Result<f64> {
        let sx = self.mul_vec(x)?;
        let xx = dot_slices(x, x);
        if xx == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(dot_slices(x, &sx) / xx)
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn check_order(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Frobenius inner product of two symmetric matrices.
pub fn dot(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    a.dot(b)
}

pub fn rayleigh(s: &SymMatrix, x: &[f64]) -> Result<f64> {
    s.rayleigh(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Dense row-major matrix. Serializes as `{"rows", "cols", "data"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TryFrom<RawMatrix> for Matrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        Matrix::from_row_major(raw.rows, raw.cols, raw.data)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_order(rows * cols, data.len())?;
        Ok(Matrix { rows, cols, data })
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
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

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Appends a row; an empty matrix adopts the row's length.
    pub fn push_row(&mut self, row: &[f64]) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// The first `k` rows, padded with zero rows if there are fewer.
    pub fn truncate_rows(&self, k: usize) -> Matrix {
        let mut data = self.data[..self.rows.min(k) * self.cols].to_vec();
        data.resize(k * self.cols, 0.0);
        Matrix { rows: k, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        check_order(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                for (o, b) in out.row_mut(i).iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix of the columns, `MᵀM`.
    pub fn column_gram(&self) -> SymMatrix {
        let mut g = SymMatrix::zeros(self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let s: f64 = (0..self.rows).map(|k| self.get(k, i) * self.get(k, j)).sum();
                g.set(i, j, s);
            }
        }
        g
    }

    /// Gram matrix of the rows, `MMᵀ`.
    pub fn row_gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.rows, |i, j| dot_slices(self.row(i), self.row(j)))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

/// Factor `X = RᵀR` through the eigendecomposition. `R` has one row per
/// eigenvalue above `tol`; smaller eigenvalues are clipped to zero.
pub fn psd_factor(x: &SymMatrix, tol: f64) -> Result<Matrix> {
    let spectral = sym_eigen(x, DEFAULT_EIGEN_TOL)?;
    let min = spectral.values.last().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotPsd { eigenvalue: min });
    }
    let mut r = Matrix::zeros(0, x.order());
    for (i, &lambda) in spectral.values.iter().enumerate() {
        if lambda <= tol {
            break;
        }
        let scale = lambda.sqrt();
        let row: Vec<f64> = spectral.vector(i).iter().map(|v| scale * v).collect();
        r.push_row(&row);
    }
    Ok(r)
}
