//! Finite connected multigraphs and regularity certificates.
//!
//! Adjacency follows the loop convention `a_ii = 2 × (number of loops at v_i)`,
//! so row sums are vertex degrees.

mod io;
mod named;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Real;

pub use io::{load_graph, parse_edge_list, parse_json, save_graph, to_edge_list, to_json, GraphFormat};
pub use named::{named_graph, NamedGraph};

/// Finite connected undirected multigraph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
    edge_count: u64,
    neighbors: Vec<Vec<(usize, u32)>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    /// Labels are cosmetic and do not take part in equality.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Builds a graph from `(i, j, multiplicity)` triples. A triple with `i == j`
/// adds `multiplicity` loops.
pub fn build_graph(n: usize, edges: &[(usize, usize, u32)]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut adj = vec![0u32; n * n];
    for &(i, j, mult) in edges {
        for index in [i, j] {
            if index >= n {
                return Err(Error::VertexOutOfRange { index, n });
            }
        }
        if i == j {
            adj[i * n + i] += 2 * mult;
        } else {
            adj[i * n + j] += mult;
            adj[j * n + i] += mult;
        }
    }
    Graph::from_adjacency(n, adj)
}

impl Graph {
    /// Validates a row-major adjacency matrix: symmetric, even diagonal,
    /// connected.
    pub fn from_adjacency(n: usize, adj: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        assert_eq!(adj.len(), n * n, "adjacency must be n×n");
        for i in 0..n {
            if !adj[i * n + i].is_multiple_of(2) {
                return Err(Error::OddDiagonal(i));
            }
            for j in i + 1..n {
                if adj[i * n + j] != adj[j * n + i] {
                    return Err(Error::AsymmetricAdjacency(i, j));
                }
            }
        }
        let neighbors: Vec<Vec<(usize, u32)>> =
            (0..n).map(|i| (0..n).filter(|&j| adj[i * n + j] > 0).map(|j| (j, adj[i * n + j])).collect()).collect();
        let mut edge_count = 0u64;
        for i in 0..n {
            edge_count += u64::from(adj[i * n + i] / 2);
            for j in i + 1..n {
                edge_count += u64::from(adj[i * n + j]);
            }
        }
        let g = Self { n, adj, edge_count, neighbors, labels: None };
        let reached = g.reachable_from(0);
        if reached != n {
            return Err(Error::DisconnectedGraph { reached, n });
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Entry `a_ij` of the adjacency matrix.
    pub fn adj(&self, i: usize, j: usize) -> u32 {
        self.adj[i * self.n + j]
    }

    /// Neighbours of `v` with the corresponding adjacency entry; a loop shows
    /// up as `(v, 2 × loops)`.
    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.neighbors[v].iter().map(|&(_, m)| u64::from(m)).sum()
    }

    /// First Betti number `r = m − n + 1`.
    pub fn betti_number(&self) -> i64 {
        self.edge_count as i64 - self.n as i64 + 1
    }

    pub fn adjacency<T: Real>(&self) -> Mat<T> {
        Mat::from_fn(self.n, self.n, |i, j| T::from_u32(self.adj(i, j)).expect("small integer"))
    }

    pub fn adjacency_i64(&self) -> Mat<i64> {
        Mat::from_fn(self.n, self.n, |i, j| i64::from(self.adj(i, j)))
    }

    /// Undirected edges as `(i, j, multiplicity)` with `i ≤ j`; loops report
    /// the number of loops.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let loops = self.adj(i, i) / 2;
            if loops > 0 {
                out.push((i, i, loops));
            }
            for j in i + 1..self.n {
                let m = self.adj(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    fn reachable_from(&self, start: usize) -> usize {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.neighbors[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count
    }

    /// Proper 2-colouring by BFS, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        color[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.neighbors[v] {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }
}

/// Degree data for a connected `(q+1)`-regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub degree: u64,
    pub q: u64,
    pub bipartite: bool,
    /// The two colour classes, the one containing vertex 0 first.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

impl RegularityCertificate {
    /// `±1` per vertex according to the bipartition (`+1` on the side of
    /// vertex 0); `None` for non-bipartite graphs.
    pub fn signs(&self, n: usize) -> Option<Vec<i8>> {
        let (_, right) = self.bipartition.as_ref()?;
        let mut s = vec![1i8; n];
        for &v in right {
            s[v] = -1;
        }
        Some(s)
    }
}

pub fn certify_regular(g: &Graph) -> Result<RegularityCertificate> {
    let degree = g.degree(0);
    for v in 1..g.n() {
        let d = g.degree(v);
        if d != degree {
            return Err(Error::NotRegular(degree.min(d), degree.max(d)));
        }
    }
    if degree < 2 {
        return Err(Error::InvalidArgument(format!(
            "regular degree {degree} is below 2; q = degree − 1 must be positive"
        )));
    }
    let bipartition = g.two_coloring().map(|color| {
        let left = (0..g.n()).filter(|&v| color[v] == 0).collect();
        let right = (0..g.n()).filter(|&v| color[v] == 1).collect();
        (left, right)
    });
    Ok(RegularityCertificate { degree, q: degree - 1, bipartite: bipartition.is_some(), bipartition })
}
