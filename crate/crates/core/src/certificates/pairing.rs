use serde::Serialize;

use super::pair_distance;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matching::hopcroft_karp;
use crate::par::{map_indexed, Execution};

/// Pairs `(e_i, ē_i)` with `e_i` running over the edges in order and
/// `ē_i` at edge distance at least `2k+2` from `e_i`. A perfect pairing uses
/// every edge once on each side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgePairing {
    pub k: usize,
    pub pairs: Vec<(Edge, Edge)>,
    /// Number of edges in the graph.
    pub edges: usize,
}

impl EdgePairing {
    pub fn is_perfect(&self) -> bool {
        self.pairs.len() == self.edges
    }
}

/// For every edge, the indices of edges at distance at least `2k+2`
/// (different components included).
fn far_lists(g: &Graph, k: usize, exec: Execution) -> Vec<Vec<usize>> {
    let required = pair_distance(k) as u32;
    let edges = g.edges();
    map_indexed(exec, edges.len(), |i| {
        let e = edges[i];
        let dist = g.bfs_limited(&[e.0, e.1], required);
        edges.iter().enumerate().filter(|(_, f)| dist[f.0].min(dist[f.1]) >= required).map(|(j, _)| j).collect()
    })
}

/// Maximum matching between the two copies of `E(G)` where `e ∼ f` when
/// the edges are at least `2k+2` apart. May leave edges unpaired.
pub fn maximum_edge_pairing(g: &Graph, k: usize, exec: Execution) -> EdgePairing {
    let edges = g.edges();
    let matching = hopcroft_karp(&far_lists(g, k, exec), edges.len());
    let pairs = matching
        .left
        .iter()
        .enumerate()
        .filter_map(|(i, mate)| mate.map(|j| (edges[i], edges[j])))
        .collect();
    EdgePairing { k, pairs, edges: edges.len() }
}

/// A perfect pairing, or `NoPairing` when none exists.
pub fn edge_pairing(g: &Graph, k: usize) -> Result<EdgePairing> {
    if !g.is_regular() {
        return Err(Error::NotRegular);
    }
    let pairing = maximum_edge_pairing(g, k, Execution::default());
    if !pairing.is_perfect() {
        return Err(Error::NoPairing { k, matched: pairing.pairs.len(), edges: pairing.edges });
    }
    Ok(pairing)
}
