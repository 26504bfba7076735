use std::collections::BTreeMap;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Default cap on DFS expansions for exact cycle enumeration.
pub const DEFAULT_CYCLE_BUDGET: u64 = 200_000_000;

/// Number of distinct cycles of each length `3..=max_length`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub max_length: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl CycleCensus {
    pub fn count(&self, length: usize) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest length with a positive count.
    pub fn shortest(&self) -> Option<usize> {
        self.counts.iter().find(|(_, &c)| c > 0).map(|(&l, _)| l)
    }
}

struct Search<'a, F> {
    graph: &'a Graph,
    max_len: usize,
    budget: u64,
    expansions: u64,
    path: Vec<usize>,
    on_path: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    // Each cycle is reported once: from its smallest vertex, in the direction
    // whose second vertex is smaller than its last.
    fn extend(&mut self, start: usize) -> Result<()> {
        let x = *self.path.last().expect("path is never empty");
        for i in 0..self.graph.adj[x].len() {
            let y = self.graph.adj[x][i];
            if y == start {
                if self.path.len() >= 3 && self.path[1] < x {
                    (self.visit)(&self.path);
                }
            } else if y > start && !self.on_path[y] && self.path.len() < self.max_len {
                self.expansions += 1;
                if self.expansions > self.budget {
                    return Err(Error::BudgetExceeded { budget: self.budget });
                }
                self.path.push(y);
                self.on_path[y] = true;
                self.extend(start)?;
                self.on_path[y] = false;
                self.path.pop();
            }
        }
        Ok(())
    }
}

impl Graph {
    /// Calls `visit` once per simple cycle of length at most `max_len`, with
    /// the cycle's vertices in traversal order.
    pub fn visit_cycles_upto<F: FnMut(&[usize])>(
        &self,
        max_len: usize,
        budget: u64,
        visit: F,
    ) -> Result<()> {
        if max_len < 3 {
            return Err(Error::InvalidArgument(format!("cycle length bound {max_len} < 3")));
        }
        let mut search = Search {
            graph: self,
            max_len,
            budget,
            expansions: 0,
            path: Vec::with_capacity(max_len),
            on_path: vec![false; self.n],
            visit,
        };
        for start in 0..self.n {
            search.path.clear();
            search.path.push(start);
            search.on_path[start] = true;
            search.extend(start)?;
            search.on_path[start] = false;
        }
        Ok(())
    }

    pub fn cycles_upto(&self, max_len: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.visit_cycles_upto(max_len, budget, |c| out.push(c.to_vec()))?;
        Ok(out)
    }

    pub fn count_cycles_upto(&self, max_len: usize) -> Result<CycleCensus> {
        self.count_cycles_upto_with_budget(max_len, DEFAULT_CYCLE_BUDGET)
    }

    pub fn count_cycles_upto_with_budget(&self, max_len: usize, budget: u64) -> Result<CycleCensus> {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        self.visit_cycles_upto(max_len, budget, |c| *counts.entry(c.len()).or_default() += 1)?;
        Ok(CycleCensus { max_length: max_len, counts })
    }
}
