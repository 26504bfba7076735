//! Undirected simple graphs, metric queries, and generators.

mod cycles;
mod generators;
mod io;
mod random;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::par::{self, Execution};

pub use cycles::{CycleCensus, DEFAULT_CYCLE_BUDGET};
pub use generators::PlatonicSolid;
pub use io::{parse_edge_list, write_edge_list};
pub use random::DEFAULT_REJECTION_CAP;

/// An undirected edge stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

/// Marker for unreachable pairs in a [`DistanceTable`].
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(Edge::new(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&Edge::new(e.0, e.1)).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs(&[0]).iter().all(|&d| d != UNREACHABLE)
    }

    /// FNV-1a hash of the vertex count and sorted edge list; stable across
    /// runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        feed(self.n as u64);
        for e in &self.edges {
            feed(e.0 as u64);
            feed(e.1 as u64);
        }
        h
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for e in &self.edges {
            a.set(e.0, e.1, 1.0);
        }
        a
    }

    /// Multi-source BFS distances; [`UNREACHABLE`] for vertices not reached.
    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        self.bfs_limited(sources, u32::MAX)
    }

    /// BFS that stops expanding past depth `limit`.
    pub fn bfs_limited(&self, sources: &[usize], limit: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let dx = dist[x];
            if dx >= limit {
                continue;
            }
            for &y in &self.adj[x] {
                if dist[y] == UNREACHABLE {
                    dist[y] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_edge(&self, e: Edge) -> Result<Edge> {
        let e = Edge::new(e.0, e.1);
        if self.edge_index(e).is_some() {
            Ok(e)
        } else {
            Err(Error::EdgeNotInGraph(e))
        }
    }

    /// Shortest-path length, `None` when `v` is unreachable from `u`.
    pub fn dist(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let d = self.bfs(&[u])[v];
        Ok((d != UNREACHABLE).then_some(d as usize))
    }

    /// Minimum vertex distance between the endpoint sets of two edges.
    pub fn edge_dist(&self, e: Edge, f: Edge) -> Result<Option<usize>> {
        let e = self.check_edge(e)?;
        let f = self.check_edge(f)?;
        let d = self.bfs(&[e.0, e.1]);
        let best = d[f.0].min(d[f.1]);
        Ok((best != UNREACHABLE).then_some(best as usize))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![UNREACHABLE; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = UNREACHABLE);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                // Cycles found from deeper levels cannot improve on `best`.
                if 2 * dist[x] as usize + 1 >= best {
                    break;
                }
                for &y in &self.adj[x] {
                    if dist[y] == UNREACHABLE {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min((dist[x] + dist[y]) as usize + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// All-pairs BFS distances.
    pub fn distance_table(&self, exec: Execution) -> DistanceTable {
        let rows = par::map_indexed(exec, self.n, |s| self.bfs(&[s]));
        let mut data = Vec::with_capacity(self.n * self.n);
        for row in rows {
            data.extend_from_slice(&row);
        }
        DistanceTable { n: self.n, data }
    }
}

/// Dense all-pairs vertex distance table.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    data: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn edge_dist(&self, e: Edge, f: Edge) -> u32 {
        self.get(e.0, f.0)
            .min(self.get(e.0, f.1))
            .min(self.get(e.1, f.0))
            .min(self.get(e.1, f.1))
    }

    pub fn diameter(&self) -> Option<u32> {
        let max = self.data.iter().copied().max().unwrap_or(0);
        (max != UNREACHABLE).then_some(max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.m(), 4);
        assert_eq!(c4.regular_degree(), Some(2));
        let dup = Graph::new(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.m(), 1);
        assert_eq!(dup.degree(2), 0);
        assert!(!dup.is_connected());
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::OutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::petersen();
        for v in 0..g.n() {
            for &u in g.neighbors(v) {
                assert!(g.neighbors(u).contains(&v));
            }
        }
    }

    #[test]
    fn distances() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.dist(0, 2).unwrap(), Some(2));
        assert_eq!(c4.dist(3, 3).unwrap(), Some(0));
        assert_eq!(c4.edge_dist(Edge(0, 1), Edge(2, 3)).unwrap(), Some(1));
        assert_eq!(c4.edge_dist(Edge(0, 1), Edge(0, 1)).unwrap(), Some(0));
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(c8.edge_dist(Edge(0, 1), Edge(4, 5)).unwrap(), Some(3));
        assert_eq!(
            c8.edge_dist(Edge(0, 1), Edge(0, 2)),
            Err(Error::EdgeNotInGraph(Edge(0, 2)))
        );
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.dist(0, 3).unwrap(), None);
        assert_eq!(split.edge_dist(Edge(0, 1), Edge(2, 3)).unwrap(), None);
    }

    #[test]
    fn petersen_diameter_is_two() {
        let table = Graph::petersen().distance_table(Execution::Sequential);
        assert_eq!(table.diameter(), Some(2));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(Graph::cycle(4).unwrap().girth(), Some(4));
        assert_eq!(Graph::petersen().girth(), Some(5));
        assert_eq!(Graph::path(6).girth(), None);
        assert_eq!(Graph::complete(5).girth(), Some(3));
        assert_eq!(Graph::hypercube(4).unwrap().girth(), Some(4));
        assert_eq!(Graph::cycle(17).unwrap().girth(), Some(17));
    }
}
