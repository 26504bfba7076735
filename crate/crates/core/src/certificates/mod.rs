//! Lower-bound representations built from Nilli vectors.
//!
//! For an edge `e` and radius `k`, `V_s(e)` is the set of vertices at
//! distance exactly `s` from `e`. A Nilli vector for two far-apart edges `e`
//! and `ē` takes the value `(d−1)^{−s/2}` on `V_s(e)`, its negative on
//! `V_s(ē)`, and zero elsewhere. Stacking one such row per pair of a perfect
//! edge pairing and scaling by `t = √(2d(k+1))` gives a unit barycentre-0
//! representation whenever the graph has girth above `2k+2`.

mod construct;
mod pairing;
mod repair;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, DEFAULT_CYCLE_BUDGET, UNREACHABLE};

pub use construct::{
    choose_k, girth_lower_bound, girth_representation, random_regular_representation,
    random_regular_representation_with, CertificateReport,
    GirthRepresentation, RandomRegularCertificate,
};
pub use pairing::{edge_pairing, maximum_edge_pairing, EdgePairing};
pub use repair::{weight_repair, WeightProfile, WeightRepair};

/// Smallest edge distance allowed between the two edges of a Nilli vector.
pub fn pair_distance(k: usize) -> usize {
    2 * k + 2
}

/// `V_0(e), …, V_k(e)`, each sorted. Layers beyond the component are empty.
pub fn ball_layers(g: &Graph, e: Edge, k: usize) -> Result<Vec<Vec<usize>>> {
    let e = g.check_edge(e)?;
    let dist = g.bfs_limited(&[e.0, e.1], k as u32);
    let mut layers = vec![Vec::new(); k + 1];
    for (v, &d) in dist.iter().enumerate() {
        if d != UNREACHABLE {
            layers[d as usize].push(v);
        }
    }
    Ok(layers)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NilliVector {
    pub e: Edge,
    pub ebar: Edge,
    pub k: usize,
    pub d: usize,
    /// Nonzero entries as `(vertex, value)`, sorted by vertex.
    pub entries: Vec<(usize, f64)>,
}

impl NilliVector {
    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        for &(i, x) in &self.entries {
            v[i] = x;
        }
        v
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|&(_, x)| x).sum()
    }
}

/// Builds the Nilli vector of `e` and `ebar` with radius `k`. Edges in
/// different components count as infinitely far apart.
pub fn nilli_vector(g: &Graph, e: Edge, ebar: Edge, k: usize) -> Result<NilliVector> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let e = g.check_edge(e)?;
    let ebar = g.check_edge(ebar)?;
    let required = pair_distance(k);
    if let Some(distance) = g.edge_dist(e, ebar)? {
        if distance < required {
            return Err(Error::TooClose { e, ebar, distance, required });
        }
    }
    let mut entries = Vec::new();
    for (edge, sign) in [(e, 1.0), (ebar, -1.0)] {
        for (s, layer) in ball_layers(g, edge, k)?.iter().enumerate() {
            // Only reached when the layer is nonempty, so d ≥ 2 for s ≥ 1.
            let value = sign * ((d - 1) as f64).powf(-(s as f64) / 2.0);
            entries.extend(layer.iter().map(|&v| (v, value)));
        }
    }
    entries.sort_by_key(|&(v, _)| v);
    Ok(NilliVector { e, ebar, k, d, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NilliIdentities {
    pub norm_sq: f64,
    /// `w A wᵀ`.
    pub quad: f64,
    /// Whether the subgraph induced by the support is a forest. When it is,
    /// `norm_sq = 4(k+1)` and `quad = 4 + 8k√(d−1)`.
    pub tree_like: bool,
}

impl NilliIdentities {
    /// `(4(k+1), 4 + 8k√(d−1))`.
    pub fn expected(k: usize, d: usize) -> (f64, f64) {
        let k = k as f64;
        (4.0 * (k + 1.0), 4.0 + 8.0 * k * ((d as f64) - 1.0).sqrt())
    }
}

pub fn nilli_identities(g: &Graph, w: &NilliVector) -> NilliIdentities {
    let dense = w.to_dense(g.n());
    let norm_sq = w.entries.iter().map(|&(_, x)| x * x).sum();
    let quad = 2.0 * g.edges().iter().map(|e| dense[e.0] * dense[e.1]).sum::<f64>();

    // Union-find over the induced edges; a repeated component means a cycle.
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree_like = true;
    for e in g.edges() {
        if dense[e.0] != 0.0 && dense[e.1] != 0.0 {
            let (a, b) = (find(&mut parent, e.0), find(&mut parent, e.1));
            if a == b {
                tree_like = false;
                break;
            }
            parent[a] = b;
        }
    }
    NilliIdentities { norm_sq, quad, tree_like }
}

/// Edges within distance `k` of a cycle of length at most `2k+2`, sorted.
pub fn bad_edges(g: &Graph, k: usize) -> Result<Vec<Edge>> {
    bad_edges_with_budget(g, k, DEFAULT_CYCLE_BUDGET)
}

pub fn bad_edges_with_budget(g: &Graph, k: usize, budget: u64) -> Result<Vec<Edge>> {
    // A simple graph has no cycles of length 2, so k = 0 has no bad edges.
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut on_cycle = vec![false; g.n()];
    g.visit_cycles_upto(pair_distance(k), budget, |cycle| {
        for &v in cycle {
            on_cycle[v] = true;
        }
    })?;
    let sources: Vec<usize> = (0..g.n()).filter(|&v| on_cycle[v]).collect();
    if sources.is_empty() {
        return Ok(Vec::new());
    }
    let dist = g.bfs_limited(&sources, k as u32);
    Ok(g.edges().iter().copied().filter(|e| dist[e.0].min(dist[e.1]) as usize <= k).collect())
}

#[cfg(test)]
mod tests;
