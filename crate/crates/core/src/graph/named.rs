use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{build_graph, Graph};

/// The built-in test corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    K4,
    K33,
    Petersen,
    Cube,
    Cycle(usize),
}

impl NamedGraph {
    pub fn build(self) -> Graph {
        match self {
            NamedGraph::K4 => complete(4),
            NamedGraph::K33 => {
                let edges: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j, 1))).collect();
                build_graph(6, &edges).expect("K3,3 is connected")
            }
            NamedGraph::Petersen => {
                let mut edges = Vec::with_capacity(15);
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5, 1));
                    edges.push((i, i + 5, 1));
                    edges.push((i + 5, (i + 2) % 5 + 5, 1));
                }
                build_graph(10, &edges).expect("Petersen graph is connected")
            }
            NamedGraph::Cube => {
                let mut edges = Vec::with_capacity(12);
                for v in 0..8usize {
                    for bit in 0..3 {
                        let u = v ^ (1 << bit);
                        if v < u {
                            edges.push((v, u, 1));
                        }
                    }
                }
                build_graph(8, &edges).expect("cube is connected")
            }
            NamedGraph::Cycle(n) => {
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
                build_graph(n, &edges).expect("cycle is connected")
            }
        }
    }
}

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1))).collect();
    build_graph(n, &edges).expect("complete graph is connected")
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `k4`, `k33`, `petersen`, `cube`, `k3`, and `cycle(n)` /
    /// `cycle:n` / `cn`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let named = match lower.as_str() {
            "k4" => Some(NamedGraph::K4),
            "k33" | "k3,3" => Some(NamedGraph::K33),
            "petersen" => Some(NamedGraph::Petersen),
            "cube" | "q3" => Some(NamedGraph::Cube),
            "k3" => Some(NamedGraph::Cycle(3)),
            _ => None,
        };
        if let Some(g) = named {
            return Ok(g);
        }
        let len = lower
            .strip_prefix("cycle(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("cycle:"))
            .or_else(|| lower.strip_prefix('c'))
            .and_then(|r| r.parse::<usize>().ok());
        match len {
            Some(n) if n >= 3 => Ok(NamedGraph::Cycle(n)),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::K4 => write!(f, "K4"),
            NamedGraph::K33 => write!(f, "K33"),
            NamedGraph::Petersen => write!(f, "PETERSEN"),
            NamedGraph::Cube => write!(f, "CUBE"),
            NamedGraph::Cycle(n) => write!(f, "CYCLE({n})"),
        }
    }
}

pub fn named_graph(name: &str) -> Result<Graph> {
    name.parse::<NamedGraph>().map(NamedGraph::build)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::certify_regular;

    #[test]
    fn corpus_shapes() {
        let p = named_graph("PETERSEN").unwrap();
        let c = certify_regular(&p).unwrap();
        assert_eq!((p.n(), c.q, c.bipartite), (10, 2, false));

        let k33 = named_graph("K33").unwrap();
        let c = certify_regular(&k33).unwrap();
        assert_eq!((k33.n(), c.q, c.bipartite), (6, 2, true));
        assert_eq!(c.bipartition, Some((vec![0, 1, 2], vec![3, 4, 5])));

        let k4 = named_graph("k4").unwrap();
        let c = certify_regular(&k4).unwrap();
        assert_eq!((k4.n(), c.q, c.bipartite), (4, 2, false));

        let cube = named_graph("cube").unwrap();
        let c = certify_regular(&cube).unwrap();
        assert_eq!((cube.n(), c.q, c.bipartite), (8, 2, true));

        let c5 = named_graph("cycle(5)").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(named_graph("CYCLE:6").unwrap().n(), 6);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(named_graph("dodecahedron"), Err(Error::UnknownName(_))));
        assert!(matches!(named_graph("cycle(2)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn petersen_has_girth_five() {
        let p = named_graph("petersen").unwrap();
        // no triangles: no common neighbours between adjacent vertices
        for (i, j, _) in p.edges() {
            let common = (0..10).filter(|&k| p.adj(i, k) > 0 && p.adj(j, k) > 0).count();
            assert_eq!(common, 0);
        }
    }
}
