use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{random_orthonormal_frame, sym_eigen, Matrix, DEFAULT_EIGEN_TOL};

/// Relative threshold, against the largest row-Gram eigenvalue, below which a
/// principal direction counts as empty.
const RANK_TOL: f64 = 1e-9;

/// Rows are the eigenvectors of `A` for `λ₂ ≥ … ≥ λ_{k+1}`, each of unit
/// length. The layout is barycentre-0 but its columns are generally not unit.
/// With a repeated eigenvalue the rows depend on the eigensolver's basis.
pub fn spectral_drawing(g: &Graph, k: usize) -> Result<Matrix> {
    if !g.is_regular() {
        return Err(Error::NotRegular);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if k == 0 || k + 1 > g.n() {
        return Err(Error::InsufficientDimension { requested: k, available: g.n().saturating_sub(1) });
    }
    let spectral = sym_eigen(&g.adjacency_matrix(), DEFAULT_EIGEN_TOL)?;
    let rows: Vec<Vec<f64>> = (1..=k).map(|i| spectral.vector(i)).collect();
    Ok(Matrix::from_rows(&rows))
}

/// Rotates `r` onto its principal axes: returns `Uᵀ r` for the eigenvectors
/// `U` of `r rᵀ` (descending), together with the squared row norms, which are
/// the eigenvalues. Column inner products are unchanged.
pub fn principal_axes(r: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    let spectral = sym_eigen(&r.row_gram(), DEFAULT_EIGEN_TOL)?;
    let rotated = spectral.vectors.transpose().matmul(r)?;
    Ok((rotated, spectral.values))
}

/// Number of principal directions carrying more than a `1e-9` share of the
/// largest one.
pub fn numerical_rank(r: &Matrix) -> Result<usize> {
    if r.rows() == 0 {
        return Ok(0);
    }
    let (_, values) = principal_axes(r)?;
    Ok(rank_of(&values))
}

fn rank_of(values: &[f64]) -> usize {
    let top = values.first().copied().unwrap_or(0.0).max(0.0);
    if top == 0.0 {
        return 0;
    }
    values.iter().filter(|&&l| l > RANK_TOL * top).count()
}

/// `Qᵀ r` truncated to `k` rows, `Q` a Haar frame drawn from `seed`.
/// Only the first `k` columns of the orthogonal matrix are ever needed.
pub fn random_projection(r: &Matrix, k: usize, seed: u64) -> Matrix {
    let k = k.min(r.rows());
    let frame = random_orthonormal_frame(r.rows(), k, seed);
    frame.transpose().matmul(r).expect("frame rows match representation rows")
}

/// Reduces `r` to `k` rows. When the numerical rank is at most `k` the
/// representation is rotated onto its principal axes and the empty rows are
/// dropped, so column inner products survive. Otherwise a random orthogonal
/// transformation is applied and the first `k` rows are kept. Either way the
/// map is linear, so zero column sums stay zero. Fewer than `k` input rows
/// are padded with zero rows.
pub fn project(r: &Matrix, k: usize, seed: u64) -> Result<Matrix> {
    if r.rows() == 0 {
        return Err(Error::InvalidArgument("representation has no rows".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("target dimension must be positive".into()));
    }
    if r.rows() <= k {
        return Ok(r.truncate_rows(k));
    }
    let (rotated, values) = principal_axes(r)?;
    if rank_of(&values) <= k {
        return Ok(rotated.truncate_rows(k));
    }
    Ok(random_projection(r, k, seed))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::k3_equilateral;
    use super::*;
    use crate::linalg::{random_orthogonal, SymMatrix};
    use crate::representation::validate;
    use proptest::prelude::*;

    fn assert_rows_orthonormal(r: &Matrix, tol: f64) {
        let gram = r.row_gram();
        assert!(gram.max_abs_diff(&SymMatrix::identity(r.rows())) <= tol);
        for k in 0..r.rows() {
            assert!(r.row(k).iter().sum::<f64>().abs() <= tol);
        }
    }

    #[test]
    fn spectral_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let r = spectral_drawing(&c4, 2).unwrap();
        assert_rows_orthonormal(&r, 1e-10);
        let a = c4.adjacency_matrix();
        for k in 0..2 {
            assert!(a.mul_vec(r.row(k)).unwrap().iter().all(|x| x.abs() < 1e-10));
        }

        let p = Graph::petersen();
        let r = spectral_drawing(&p, 2).unwrap();
        assert_rows_orthonormal(&r, 1e-10);
        for k in 0..2 {
            assert!((p.adjacency_matrix().rayleigh(r.row(k)).unwrap() - 1.0).abs() < 1e-10);
        }
        // Rows are orthonormal, columns are not unit.
        assert!(validate(&p, &r).unwrap().residual_unit > 0.1);

        let c3 = Graph::cycle(3).unwrap();
        let r = spectral_drawing(&c3, 1).unwrap();
        assert!((c3.adjacency_matrix().rayleigh(r.row(0)).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_errors() {
        assert_eq!(spectral_drawing(&Graph::path(4), 1), Err(Error::NotRegular));
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(spectral_drawing(&two_triangles, 1), Err(Error::NotConnected));
        assert!(matches!(
            spectral_drawing(&Graph::complete(4), 4),
            Err(Error::InsufficientDimension { requested: 4, available: 3 })
        ));
    }

    fn pairwise_distances(r: &Matrix) -> Vec<f64> {
        let n = r.cols();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                out.push((0..r.rows()).map(|k| (r.get(k, u) - r.get(k, v)).powi(2)).sum::<f64>().sqrt());
            }
        }
        out
    }

    #[test]
    fn project_two_rows_is_isometric() {
        let (_, r) = k3_equilateral();
        let p = project(&r, 2, 7).unwrap();
        for (a, b) in pairwise_distances(&r).iter().zip(pairwise_distances(&p)) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn project_rank_two_layout_in_three_dimensions() {
        // Equilateral triangle embedded in ℝ³ by a random rotation.
        let (_, planar) = k3_equilateral();
        let lifted = random_orthogonal(3, 11).matmul(&planar.truncate_rows(3)).unwrap();
        assert_eq!(numerical_rank(&lifted).unwrap(), 2);
        let p = project(&lifted, 2, 3).unwrap();
        assert_eq!(p.rows(), 2);
        let side = 3f64.sqrt();
        for d in pairwise_distances(&p) {
            assert!((d - side).abs() < 1e-10);
        }
    }

    #[test]
    fn random_branch_is_seeded() {
        let r = random_orthogonal(5, 1);
        assert_eq!(numerical_rank(&r).unwrap(), 5);
        let a = project(&r, 2, 9).unwrap();
        assert_eq!(a, project(&r, 2, 9).unwrap());
        assert_ne!(a, project(&r, 2, 10).unwrap());
        // The random branch applies a Haar frame, so it matches random_projection.
        assert_eq!(a, random_projection(&r, 2, 9));
    }

    #[test]
    fn project_errors() {
        assert!(project(&Matrix::zeros(0, 3), 2, 0).is_err());
        assert!(project(&Matrix::identity(3), 0, 0).is_err());
    }

    proptest! {
        #[test]
        fn project_keeps_zero_column_sum(seed in any::<u64>(), rows in 1usize..7, k in 1usize..4) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 9;
            let mut r = Matrix::zeros(rows, n);
            for i in 0..rows {
                let vals: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let mean = vals.iter().sum::<f64>() / n as f64;
                for (j, v) in vals.iter().enumerate() {
                    r.set(i, j, v - mean);
                }
            }
            let p = project(&r, k, seed).unwrap();
            prop_assert_eq!(p.rows(), k);
            for i in 0..k {
                prop_assert!(p.row(i).iter().sum::<f64>().abs() <= 1e-10);
            }
        }
    }
}
