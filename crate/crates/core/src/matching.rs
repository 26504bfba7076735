//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;
const INF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Partner of each left vertex.
    pub left: Vec<Option<usize>>,
    /// Partner of each right vertex.
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.left.len() && self.size == self.right.len()
    }
}

/// Maximum matching of the bipartite graph with left vertices `0..adj.len()`,
/// right vertices `0..n_right`, and left-to-right lists `adj`. Neighbours
/// are tried in list order, so the result is deterministic.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut mate_l = vec![FREE; n_left];
    let mut mate_r = vec![FREE; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;

    loop {
        // Layer the free left vertices and everything reachable by
        // alternating paths.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; n_left];
        for u in 0..n_left {
            if mate_l[u] == FREE && augment(u, adj, &mut mate_l, &mut mate_r, &mut dist, &mut cursor) {
                size += 1;
            }
        }
    }

    let wrap = |m: Vec<usize>| m.into_iter().map(|x| (x != FREE).then_some(x)).collect();
    Matching { left: wrap(mate_l), right: wrap(mate_r), size }
}

/// Iterative DFS along the layered graph from free left vertex `root`.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [u32],
    cursor: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if cursor[u] == adj[u].len() {
            dist[u] = INF;
            stack.pop();
            continue;
        }
        let v = adj[u][cursor[u]];
        cursor[u] += 1;
        let w = mate_r[v];
        if w == FREE {
            // Flip the path: every stacked vertex takes the right vertex it
            // last advanced through.
            let mut right = v;
            while let Some(x) = stack.pop() {
                let previous = mate_l[x];
                mate_l[x] = right;
                mate_r[right] = x;
                right = previous;
            }
            return true;
        }
        if dist[w] == dist[u] + 1 {
            stack.push(w);
        }
    }
    false
}
