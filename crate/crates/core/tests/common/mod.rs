#![allow(dead_code)]

use ihara_core::Graph;

/// Cartesian product `G □ H`.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    let (n, k) = (g.n(), h.n());
    let size = n * k;
    let mut adj = vec![0u32; size * size];
    for a in 0..n {
        for b in 0..k {
            let row = a * k + b;
            for c in 0..n {
                adj[row * size + c * k + b] += g.adj(a, c);
            }
            for d in 0..k {
                adj[row * size + a * k + d] += h.adj(b, d);
            }
        }
    }
    Graph::from_adjacency(size, adj).expect("product of connected graphs is connected")
}

/// Edges `{v, σ(v)}` for each permutation, plus the cycle `v → v+1`, so the
/// result is connected and `2(perms + 1)`-regular. Fixed points become loops,
/// 2-cycles become double edges.
pub fn permutation_graph(n: usize, perms: &[Vec<usize>]) -> Graph {
    let mut adj = vec![0u32; n * n];
    let cycle: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
    for sigma in perms.iter().chain(std::iter::once(&cycle)) {
        for v in 0..n {
            let w = sigma[v];
            if v == w {
                adj[v * n + v] += 2;
            } else {
                adj[v * n + w] += 1;
                adj[w * n + v] += 1;
            }
        }
    }
    Graph::from_adjacency(n, adj).expect("cycle keeps it connected")
}
