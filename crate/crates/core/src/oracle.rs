//! Brute-force enumeration of non-backtracking arc sequences, used as ground
//! truth for the recurrences on small graphs.

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_DEPTH: usize = 14;
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub max_depth: usize,
    /// Cap on the estimated number of enumeration steps.
    pub budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { max_depth: DEFAULT_MAX_DEPTH, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
    pub id: usize,
}

/// Arcs of the symmetric digraph of a graph. Each parallel edge contributes
/// its own pair of mutually inverse arcs; each loop contributes two arcs
/// that are inverse to each other.
#[derive(Clone, Debug)]
pub struct ArcList {
    arcs: Vec<Arc>,
    inverse: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl ArcList {
    pub fn new(g: &Graph) -> Self {
        let mut arcs = Vec::new();
        let mut inverse = Vec::new();
        let mut out = vec![Vec::new(); g.n()];
        for (i, j, mult) in g.edges() {
            for _ in 0..mult {
                let a = arcs.len();
                arcs.push(Arc { origin: i, terminus: j, id: a });
                arcs.push(Arc { origin: j, terminus: i, id: a + 1 });
                inverse.push(a + 1);
                inverse.push(a);
                out[i].push(a);
                out[j].push(a + 1);
            }
        }
        Self { arcs, inverse, out }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Upper bound on enumeration steps for sequences of length `m` starting
    /// from `starts` arcs.
    fn cost_estimate(&self, starts: usize, m: usize) -> f64 {
        let branch = self.out.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1).max(1) as f64;
        starts as f64 * branch.powi(m.saturating_sub(1) as i32) * m.max(1) as f64
    }

    fn guard(&self, starts: usize, m: usize, opts: &OracleOptions) -> Result<()> {
        let estimate = self.cost_estimate(starts, m);
        if m > opts.max_depth || estimate > opts.budget as f64 {
            return Err(Error::DepthExceeded { m, estimate, budget: opts.budget });
        }
        Ok(())
    }

    /// Calls `visit(first, last, terminus)` for every non-backtracking arc
    /// sequence of length `m ≥ 1` starting at `v`.
    fn walk(&self, v: usize, m: usize, visit: &mut impl FnMut(usize, usize, usize)) {
        fn rec(
            arcs: &ArcList,
            first: usize,
            last: usize,
            remaining: usize,
            visit: &mut impl FnMut(usize, usize, usize),
        ) {
            let at = arcs.arcs[last].terminus;
            if remaining == 0 {
                visit(first, last, at);
                return;
            }
            let back = arcs.inverse[last];
            for &a in &arcs.out[at] {
                if a != back {
                    rec(arcs, first, a, remaining - 1, visit);
                }
            }
        }
        for &a in &self.out[v] {
            rec(self, a, a, m - 1, visit);
        }
    }
}

/// Reduced cycles of length `m`: closed, non-backtracking and tailless, with
/// start point and orientation distinguished (`N_m`).
pub fn count_reduced_cycles_bf(g: &Graph, m: usize, opts: &OracleOptions) -> Result<u64> {
    let arcs = ArcList::new(g);
    if m == 0 {
        return Err(Error::InvalidArgument("cycle length must be ≥ 1".into()));
    }
    arcs.guard(arcs.len(), m, opts)?;
    let mut count = 0;
    for v in 0..g.n() {
        arcs.walk(v, m, &mut |first, last, at| {
            if at == v && first != arcs.inverse(last) {
                count += 1;
            }
        });
    }
    Ok(count)
}

/// Non-backtracking paths of length `m` from `i` to every vertex.
pub fn count_reduced_paths_from_bf(g: &Graph, i: usize, m: usize, opts: &OracleOptions) -> Result<Vec<u64>> {
    if i >= g.n() {
        return Err(Error::VertexOutOfRange { index: i, n: g.n() });
    }
    let mut counts = vec![0; g.n()];
    if m == 0 {
        counts[i] = 1;
        return Ok(counts);
    }
    let arcs = ArcList::new(g);
    arcs.guard(arcs.out_arcs(i).len(), m, opts)?;
    arcs.walk(i, m, &mut |_, _, at| counts[at] += 1);
    Ok(counts)
}

pub fn count_reduced_paths_bf(g: &Graph, i: usize, j: usize, m: usize, opts: &OracleOptions) -> Result<u64> {
    if j >= g.n() {
        return Err(Error::VertexOutOfRange { index: j, n: g.n() });
    }
    Ok(count_reduced_paths_from_bf(g, i, m, opts)?[j])
}

fn closed_at(g: &Graph, v: usize, m: usize, opts: &OracleOptions, tailed: Option<bool>) -> Result<u64> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { index: v, n: g.n() });
    }
    if m == 0 {
        return Ok(u64::from(tailed != Some(true)));
    }
    let arcs = ArcList::new(g);
    arcs.guard(arcs.out_arcs(v).len(), m, opts)?;
    let mut count = 0;
    arcs.walk(v, m, &mut |first, last, at| {
        if at == v && tailed.is_none_or(|t| (first == arcs.inverse(last)) == t) {
            count += 1;
        }
    });
    Ok(count)
}

/// Closed non-backtracking walks at `v` of length `m`, tails allowed.
pub fn count_nbt_closed_bf(g: &Graph, v: usize, m: usize, opts: &OracleOptions) -> Result<u64> {
    closed_at(g, v, m, opts, None)
}

/// Closed non-backtracking walks at `v` whose last arc is inverse to the
/// first.
pub fn count_nbt_tailed_bf(g: &Graph, v: usize, m: usize, opts: &OracleOptions) -> Result<u64> {
    closed_at(g, v, m, opts, Some(true))
}

/// Tailless closed non-backtracking walks at `v` (`(M_m)_{vv}`).
pub fn count_reduced_cycles_at_bf(g: &Graph, v: usize, m: usize, opts: &OracleOptions) -> Result<u64> {
    closed_at(g, v, m, opts, Some(false))
}

/// `#{x ∈ Z⁴ : x₁² + 4q²(x₂² + x₃² + x₄²) = target}`.
pub fn lattice_count(qprime: u64, target: u128) -> u64 {
    let four_q2 = 4 * u128::from(qprime) * u128::from(qprime);
    let bound = (target / four_q2).sqrt() as i64;
    let mut count = 0;
    for x2 in -bound..=bound {
        for x3 in -bound..=bound {
            for x4 in -bound..=bound {
                let s = (x2 * x2 + x3 * x3 + x4 * x4) as u128 * four_q2;
                if s > target {
                    continue;
                }
                let r = target - s;
                let root = r.sqrt();
                if root * root == r {
                    count += if r == 0 { 1 } else { 2 };
                }
            }
        }
    }
    count
}
