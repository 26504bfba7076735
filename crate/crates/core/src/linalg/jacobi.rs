use super::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Relative off-diagonal tolerance for [`sym_eigen`].
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; column `i` belongs to `values[i]`.
    pub vectors: Matrix,
}

impl SpectralData {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    /// λ₂, the second largest eigenvalue.
    pub fn second(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.values.len();
        SymMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| self.vectors.get(i, k) * self.values[k] * self.vectors.get(j, k)).sum()
        })
    }
}

/// Cyclic Jacobi eigendecomposition. Stops once the off-diagonal Frobenius
/// norm drops below `tol * ‖S‖_F`.
pub fn sym_eigen(s: &SymMatrix, tol: f64) -> Result<SpectralData> {
    let n = s.order();
    let mut a = s.data.clone();
    // Eigenvectors are accumulated as rows so every rotation touches two
    // contiguous rows.
    let mut vt = Matrix::identity(n).data;
    let target = tol * s.frobenius_norm();
    // Rotations this small cannot move the off-diagonal norm past the target.
    let skip = target / (n.max(1) as f64 * 1e3);

    let off_norm = |a: &[f64]| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    sum += a[i * n + j] * a[i * n + j];
                }
            }
        }
        sum.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { residual: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[p * n + k];
                    let akq = a[q * n + k];
                    let new_p = c * akp - sn * akq;
                    let new_q = sn * akp + c * akq;
                    a[p * n + k] = new_p;
                    a[k * n + p] = new_p;
                    a[q * n + k] = new_q;
                    a[k * n + q] = new_q;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                let (head, tail) = vt.split_at_mut(q * n);
                let vp = &mut head[p * n..(p + 1) * n];
                let vq = &mut tail[..n];
                for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = c * xp - sn * xq;
                    *y = sn * xp + c * xq;
                }
            }
        }
        off = off_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps ties in index order, so output is deterministic.
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, col, vt[i * n + k]);
        }
    }
    Ok(SpectralData { values, vectors })
}
