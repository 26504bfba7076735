use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Restart cap for the pairing model.
pub const DEFAULT_REJECTION_CAP: usize = 10_000;

impl Graph {
    /// Random `d`-regular simple graph from the configuration (pairing) model,
    /// restarting from scratch whenever a loop or multi-edge appears.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
        Graph::random_regular_with_cap(n, d, seed, DEFAULT_REJECTION_CAP)
    }

    pub fn random_regular_with_cap(n: usize, d: usize, seed: u64, cap: usize) -> Result<Graph> {
        if !(n * d).is_multiple_of(2) {
            return Err(Error::DegreeParity { n, d });
        }
        if d >= n && d > 0 {
            return Err(Error::InvalidArgument(format!("degree {d} must be below n = {n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut seen = HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        'attempt: for _ in 0..cap {
            points.shuffle(&mut rng);
            seen.clear();
            edges.clear();
            for pair in points.chunks_exact(2) {
                let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if u == v || !seen.insert((u, v)) {
                    continue 'attempt;
                }
                edges.push((u, v));
            }
            return Graph::new(n, &edges);
        }
        Err(Error::RejectionLimit { attempts: cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_k4() {
        assert_eq!(Graph::random_regular(4, 3, 1).unwrap(), Graph::complete(4));
    }

    #[test]
    fn degrees_and_determinism() {
        for seed in 0..20 {
            let g = Graph::random_regular(10, 3, seed).unwrap();
            assert_eq!(g.regular_degree(), Some(3));
            assert_eq!(g.m(), 15);
            assert_eq!(g, Graph::random_regular(10, 3, seed).unwrap());
        }
        assert_ne!(Graph::random_regular(50, 3, 1).unwrap(), Graph::random_regular(50, 3, 2).unwrap());
    }

    #[test]
    fn parity_and_cap() {
        assert_eq!(Graph::random_regular(5, 3, 0), Err(Error::DegreeParity { n: 5, d: 3 }));
        assert!(Graph::random_regular(4, 4, 0).is_err());
        // Simple 9-regular pairings on 10 vertices are vanishingly rare.
        assert_eq!(
            Graph::random_regular_with_cap(10, 9, 0, 3),
            Err(Error::RejectionLimit { attempts: 3 })
        );
        assert_eq!(Graph::random_regular(6, 0, 0).unwrap().m(), 0);
    }
}
