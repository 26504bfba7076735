//! Splitting per-vertex deficiencies into squared pair weights.
//!
//! Given `f ≥ 0` with `f(v) ≤ ½·f(V)` for every `v`, find `g ≥ 0` on vertex
//! pairs with `Σ_u g(uv)² = f(v)`. The construction peels one pair at a
//! time: with `y` the largest and `v` the second largest value, and `x` the
//! smallest of the rest, it moves `δ = min(f(x), ½f(V) − f(v))` of mass
//! from `x` and `y` onto `g(xy)²`. Either `x` drops out or `v` becomes
//! tight, and a tight vertex is matched against everything else at once.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack when testing `f(v) ≤ ½f(V)` and tightness.
const STAR_TOL: f64 = 1e-12;

/// Nonnegative per-vertex weights satisfying `f(v) ≤ ½·f(V)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    f: Vec<f64>,
}

impl WeightProfile {
    /// Checks nonnegativity and the half-sum condition. Negative entries
    /// larger than roundoff are rejected; tiny ones are clamped to zero.
    pub fn new(f: Vec<f64>) -> Result<Self> {
        let total: f64 = f.iter().map(|x| x.max(0.0)).sum();
        let slack = STAR_TOL * total.max(1.0);
        let mut clean = Vec::with_capacity(f.len());
        for (v, &x) in f.iter().enumerate() {
            if !x.is_finite() || x < -slack {
                return Err(Error::InvalidArgument(format!("weight {x} at vertex {v} is not a nonnegative number")));
            }
            let x = x.max(0.0);
            if x > 0.5 * total + slack {
                return Err(Error::StarViolated { vertex: v });
            }
            clean.push(x);
        }
        Ok(WeightProfile { f: clean })
    }

    pub fn values(&self) -> &[f64] {
        &self.f
    }

    pub fn total(&self) -> f64 {
        self.f.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRepair {
    /// `(u, v, g(uv))` with `u < v` and `g(uv) > 0`, sorted.
    pub weights: Vec<(usize, usize, f64)>,
    /// Peeling steps taken before a tight vertex closed the recursion.
    pub depth: usize,
}

impl WeightRepair {
    /// `Σ_u g(uv)²` for every vertex.
    pub fn vertex_sums(&self, n: usize) -> Vec<f64> {
        let mut sums = vec![0.0; n];
        for &(u, v, w) in &self.weights {
            sums[u] += w * w;
            sums[v] += w * w;
        }
        sums
    }
}

pub fn weight_repair(profile: &WeightProfile) -> WeightRepair {
    let mut f = profile.f.clone();
    let mut squared: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut add = |a: usize, b: usize, w: f64| {
        if w > 0.0 {
            *squared.entry((a.min(b), a.max(b))).or_default() += w;
        }
    };
    let mut depth = 0;
    loop {
        let total: f64 = f.iter().sum();
        let live: Vec<usize> = (0..f.len()).filter(|&v| f[v] > 0.0).collect();
        if live.is_empty() {
            break;
        }
        let mut by_value = live.clone();
        // Largest first, ties by index, so the peeling order is deterministic.
        by_value.sort_by(|&a, &b| f[b].total_cmp(&f[a]).then(a.cmp(&b)));
        let top = by_value[0];
        if f[top] >= 0.5 * total - STAR_TOL * total {
            for &u in &live {
                if u != top {
                    add(u, top, f[u]);
                }
            }
            break;
        }
        // No tight vertex, so at least three are live.
        let (y, v) = (by_value[0], by_value[1]);
        let x = *by_value.last().expect("at least three live vertices");
        let room = 0.5 * total - f[v];
        let delta = f[x].min(room);
        add(x, y, delta);
        if delta == f[x] {
            f[x] = 0.0;
        } else {
            f[x] -= delta;
        }
        f[y] = (f[y] - delta).max(0.0);
        depth += 1;
    }
    let weights = squared.into_iter().map(|((u, v), w2)| (u, v, w2.sqrt())).collect();
    WeightRepair { weights, depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn weight(r: &WeightRepair, u: usize, v: usize) -> f64 {
        r.weights.iter().find(|&&(a, b, _)| (a, b) == (u, v)).map_or(0.0, |w| w.2)
    }

    #[test]
    fn examples() {
        let r = weight_repair(&WeightProfile::new(vec![0.0; 4]).unwrap());
        assert!(r.weights.is_empty());

        let r = weight_repair(&WeightProfile::new(vec![1.0, 1.0]).unwrap());
        assert_eq!(r.weights, vec![(0, 1, 1.0)]);

        let r = weight_repair(&WeightProfile::new(vec![1.0, 1.0, 2.0]).unwrap());
        assert_eq!(weight(&r, 0, 2), 1.0);
        assert_eq!(weight(&r, 1, 2), 1.0);
        assert_eq!(weight(&r, 0, 1), 0.0);
        assert_eq!(r.depth, 0);
    }

    #[test]
    fn rejects_violations() {
        assert_eq!(WeightProfile::new(vec![1.0, 3.0, 1.0]), Err(Error::StarViolated { vertex: 1 }));
        assert_eq!(WeightProfile::new(vec![1.0]), Err(Error::StarViolated { vertex: 0 }));
        assert!(matches!(WeightProfile::new(vec![1.0, 1.0, -1.0]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn uniform_profile_needs_peeling() {
        let r = weight_repair(&WeightProfile::new(vec![1.0; 5]).unwrap());
        assert!(r.depth > 0);
        for s in r.vertex_sums(5) {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn sums_reproduce_profile(raw in proptest::collection::vec(0.0f64..1.0, 2..50), zeros in 0usize..5) {
            let mut f = raw;
            for i in 0..zeros.min(f.len()) {
                f[i] = 0.0;
            }
            // Cap the largest entry at half the total to satisfy the condition.
            let total: f64 = f.iter().sum();
            let (imax, &max) = f.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
            if max > total - max {
                f[imax] = total - max;
            }
            let profile = WeightProfile::new(f.clone()).unwrap();
            let r = weight_repair(&profile);
            prop_assert!(r.depth <= f.len());
            for (got, want) in r.vertex_sums(f.len()).iter().zip(profile.values()) {
                prop_assert!((got - want).abs() <= 1e-9);
            }
            prop_assert!(r.weights.iter().all(|w| w.2 >= 0.0 && w.0 < w.1));
        }
    }
}
