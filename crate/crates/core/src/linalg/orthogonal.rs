use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{dot_slices, Matrix};

/// Haar-random `n×n` orthogonal matrix.
///
/// Columns are Gram-Schmidt orthonormalizations of standard Gaussian columns
/// (with the positive-diagonal convention for the triangular factor), drawn
/// column by column from a seeded stream. The first `k` columns therefore
/// coincide exactly with [`random_orthonormal_frame`]`(n, k, seed)`.
pub fn random_orthogonal(n: usize, seed: u64) -> Matrix {
    random_orthonormal_frame(n, n, seed)
}

/// The first `k` columns of [`random_orthogonal`]`(n, seed)`, as an `n×k`
/// matrix. Panics if `k > n`.
pub fn random_orthonormal_frame(n: usize, k: usize, seed: u64) -> Matrix {
    assert!(k <= n, "frame of {k} columns in dimension {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        // Two passes of modified Gram-Schmidt keep the frame orthonormal to
        // roundoff even for large n.
        for _ in 0..2 {
            for q in &cols {
                let proj = dot_slices(q, &v);
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= proj * qi);
            }
        }
        let norm = dot_slices(&v, &v).sqrt();
        // A Gaussian draw in the span of the previous columns has probability
        // zero; redraw if roundoff makes it degenerate.
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut m = Matrix::zeros(n, k);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}
