use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Skeletons of the five Platonic solids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatonicSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicSolid {
    pub const ALL: [PlatonicSolid; 5] = [
        PlatonicSolid::Tetrahedron,
        PlatonicSolid::Cube,
        PlatonicSolid::Octahedron,
        PlatonicSolid::Dodecahedron,
        PlatonicSolid::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlatonicSolid::Tetrahedron => "tetrahedron",
            PlatonicSolid::Cube => "cube",
            PlatonicSolid::Octahedron => "octahedron",
            PlatonicSolid::Dodecahedron => "dodecahedron",
            PlatonicSolid::Icosahedron => "icosahedron",
        }
    }
}

impl fmt::Display for PlatonicSolid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlatonicSolid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlatonicSolid::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("generator produced an invalid edge list")
}

impl Graph {
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Ok(build(n, &edges))
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        build(n, &edges)
    }

    /// Parts are `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        build(a + b, &edges)
    }

    /// Vertices are the `k`-bit binary labels; adjacent labels differ in one bit.
    pub fn hypercube(k: u32) -> Result<Graph> {
        if !(1..=20).contains(&k) {
            return Err(Error::InvalidArgument(format!("hypercube dimension {k} not in 1..=20")));
        }
        let n = 1usize << k;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..k {
                let u = v ^ (1 << b);
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        Ok(build(n, &edges))
    }

    /// Outer 5-cycle on 0..5, spokes `i - i+5`, inner pentagram on 5..10.
    pub fn petersen() -> Graph {
        Graph::generalized_petersen(5, 2)
    }

    /// GP(n, s): outer cycle, spokes, inner star polygon with step `s`.
    pub fn generalized_petersen(n: usize, s: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            edges.push((i, n + i));
            edges.push((n + i, n + (i + s) % n));
        }
        build(2 * n, &edges)
    }

    pub fn platonic(solid: PlatonicSolid) -> Graph {
        match solid {
            PlatonicSolid::Tetrahedron => Graph::complete(4),
            PlatonicSolid::Cube => Graph::hypercube(3).expect("valid dimension"),
            PlatonicSolid::Octahedron => {
                // K_{2,2,2}: every pair except the antipodes (2i, 2i+1).
                let mut edges = Vec::new();
                for u in 0..6 {
                    for v in u + 1..6 {
                        if u / 2 != v / 2 {
                            edges.push((u, v));
                        }
                    }
                }
                build(6, &edges)
            }
            PlatonicSolid::Dodecahedron => Graph::generalized_petersen(10, 2),
            PlatonicSolid::Icosahedron => {
                // Apex 0, upper ring 1..6, lower ring 6..11, apex 11.
                let mut edges = Vec::new();
                for i in 0..5 {
                    let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
                    let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
                    edges.extend([(0, u), (u, u_next), (l, l_next), (l, 11), (u, l), (u, l_next)]);
                }
                build(12, &edges)
            }
        }
    }

    pub fn platonic_by_name(name: &str) -> Result<Graph> {
        Ok(Graph::platonic(name.parse()?))
    }
}
