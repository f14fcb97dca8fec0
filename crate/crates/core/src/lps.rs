//! Lubotzky–Phillips–Sarnak Ramanujan graphs `X^{p,q}`: `(p+1)`-regular Cayley
//! graphs on `PGL₂(F_q)` (when `(p/q) = −1`) or `PSL₂(F_q)` (when `(p/q) = +1`)
//! generated by the images of the `p + 1` integral quaternions of norm `p`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `q` built without an explicit override (`|PGL₂(F₂₉)| = 24360`).
pub const DEFAULT_MAX_Q: u64 = 29;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn reduce(a: i64, q: u64) -> u64 {
    a.rem_euclid(q as i64) as u64
}

/// Legendre symbol `(a/q)` for an odd prime `q` by Euler's criterion.
pub fn legendre_symbol(a: i64, q: u64) -> i8 {
    debug_assert!(q > 2 && is_prime(q), "q must be an odd prime");
    let a = reduce(a, q);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo the odd prime `q` by Tonelli–Shanks; returns the
/// smaller of the two roots.
pub fn sqrt_mod(a: i64, q: u64) -> Result<u64> {
    let a_red = reduce(a, q);
    if a_red == 0 {
        return Ok(0);
    }
    if legendre_symbol(a, q) != 1 {
        return Err(Error::NoSquareRoot { a, q });
    }
    // q − 1 = s · 2^e with s odd
    let mut s = q - 1;
    let mut e = 0u32;
    while s.is_multiple_of(2) {
        s /= 2;
        e += 1;
    }
    let mut z = 2u64;
    while legendre_symbol(z as i64, q) != -1 {
        z += 1;
    }
    let mut m = e;
    let mut c = pow_mod(z, s, q);
    let mut t = pow_mod(a_red, s, q);
    let mut r = pow_mod(a_red, s.div_ceil(2), q);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, q);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), q);
        m = i;
        c = mul_mod(b, b, q);
        t = mul_mod(t, c, q);
        r = mul_mod(r, b, q);
    }
    Ok(r.min(q - r))
}

/// Integral quaternion `a0 + a1 i + a2 j + a3 k` of norm `p` with `a0` odd and
/// positive and `a1, a2, a3` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuaternionGenerator {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl QuaternionGenerator {
    pub fn norm(&self) -> i64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Image `[[a0 + a1 i, a2 + a3 i], [−a2 + a3 i, a0 − a1 i]]` over `F_q`,
    /// with `i² = −1`.
    pub fn to_matrix(&self, q: u64, i_mod_q: u64) -> [u64; 4] {
        let r = |x: i64| reduce(x, q);
        let im = |x: i64| mul_mod(r(x), i_mod_q, q);
        [
            (r(self.a0) + im(self.a1)) % q,
            (r(self.a2) + im(self.a3)) % q,
            (r(-self.a2) + im(self.a3)) % q,
            (r(self.a0) + im(-self.a1)) % q,
        ]
    }
}

fn check_lps_prime(p: u64, what: &str) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(format!("{what} = {p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::InvalidPrime(format!("{what} = {p} is not ≡ 1 (mod 4)")));
    }
    Ok(())
}

/// All `p + 1` generators, in lexicographic order of `(a0, a1, a2, a3)`.
pub fn quaternion_generators(p: u64) -> Result<Vec<QuaternionGenerator>> {
    check_lps_prime(p, "p")?;
    let p = p as i64;
    let bound = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a0 in (1..=bound).step_by(2) {
        for a1 in (-bound..=bound).filter(|x| x % 2 == 0) {
            for a2 in (-bound..=bound).filter(|x| x % 2 == 0) {
                for a3 in (-bound..=bound).filter(|x| x % 2 == 0) {
                    let g = QuaternionGenerator { a0, a1, a2, a3 };
                    if g.norm() == p {
                        out.push(g);
                    }
                }
            }
        }
    }
    debug_assert_eq!(out.len() as i64, p + 1);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    #[serde(rename = "PGL2")]
    Pgl2,
    #[serde(rename = "PSL2")]
    Psl2,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Pgl2 => "PGL2",
            GroupKind::Psl2 => "PSL2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpsParams {
    pub p: u64,
    pub q: u64,
    pub legendre_pq: i8,
    pub group_kind: GroupKind,
    pub expected_n: usize,
    pub i_mod_q: u64,
}

impl LpsParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        check_lps_prime(p, "p")?;
        check_lps_prime(q, "q")?;
        if p == q {
            return Err(Error::InvalidPrime(format!("p and q must differ (both {p})")));
        }
        let legendre_pq = legendre_symbol(p as i64, q);
        let group_kind = if legendre_pq == -1 { GroupKind::Pgl2 } else { GroupKind::Psl2 };
        let pgl = (q * (q * q - 1)) as usize;
        let expected_n = match group_kind {
            GroupKind::Pgl2 => pgl,
            GroupKind::Psl2 => pgl / 2,
        };
        let i_mod_q = sqrt_mod(-1, q)?;
        Ok(Self { p, q, legendre_pq, group_kind, expected_n, i_mod_q })
    }

    pub fn bipartite_expected(&self) -> bool {
        self.legendre_pq == -1
    }
}

/// Element of `PGL₂(F_q)` in canonical form: scaled so that the first nonzero
/// entry in row-major order is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveMatrix(pub [u64; 4]);

impl ProjectiveMatrix {
    pub fn canonical(m: [u64; 4], q: u64) -> Self {
        let lead = m.iter().copied().find(|&x| x != 0).expect("nonzero matrix");
        let inv = pow_mod(lead, q - 2, q);
        Self(m.map(|x| mul_mod(x, inv, q)))
    }

    pub fn identity() -> Self {
        Self([1, 0, 0, 1])
    }

    pub fn mul(&self, rhs: &Self, q: u64) -> Self {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        let m = [
            (mul_mod(a, e, q) + mul_mod(b, g, q)) % q,
            (mul_mod(a, f, q) + mul_mod(b, h, q)) % q,
            (mul_mod(c, e, q) + mul_mod(d, g, q)) % q,
            (mul_mod(c, f, q) + mul_mod(d, h, q)) % q,
        ];
        Self::canonical(m, q)
    }

    pub fn det(&self, q: u64) -> u64 {
        let [a, b, c, d] = self.0;
        (mul_mod(a, d, q) + q - mul_mod(b, c, q)) % q
    }

    /// Membership in `PSL₂(F_q)`: the determinant is a square. Rescaling
    /// multiplies the determinant by a square, so the test is well defined.
    pub fn in_psl(&self, q: u64) -> bool {
        legendre_symbol(self.det(q) as i64, q) == 1
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LpsOptions {
    /// Build even when `q` exceeds [`DEFAULT_MAX_Q`].
    pub allow_large: bool,
}

/// An LPS graph together with the group data it was built from.
#[derive(Clone, Debug)]
pub struct LpsGraph {
    pub graph: Graph,
    pub params: LpsParams,
    pub generators: Vec<QuaternionGenerator>,
    /// Group element sitting at each vertex.
    pub elements: Vec<ProjectiveMatrix>,
}

impl LpsGraph {
    /// Permutation of vertices induced by left multiplication with the group
    /// element at vertex `h`.
    pub fn left_translation(&self, h: usize) -> Vec<usize> {
        let q = self.params.q;
        let index: HashMap<ProjectiveMatrix, usize> = self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let hm = self.elements[h];
        self.elements.iter().map(|g| index[&hm.mul(g, q)]).collect()
    }
}

pub fn build_lps(p: u64, q: u64) -> Result<LpsGraph> {
    build_lps_with(p, q, LpsOptions::default())
}

/// Cayley graph `g ~ g·s` over the generator images `s`, grown by BFS from the
/// identity; the vertex count must equal the group order.
pub fn build_lps_with(p: u64, q: u64, opts: LpsOptions) -> Result<LpsGraph> {
    let params = LpsParams::new(p, q)?;
    if q > DEFAULT_MAX_Q && !opts.allow_large {
        return Err(Error::TooLarge { q, limit: DEFAULT_MAX_Q });
    }
    let generators = quaternion_generators(p)?;
    if generators.len() as u64 != p + 1 {
        return Err(Error::GroupSizeMismatch { expected: (p + 1) as usize, found: generators.len() });
    }
    let connection: Vec<ProjectiveMatrix> = generators
        .iter()
        .map(|g| {
            let m = g.to_matrix(q, params.i_mod_q);
            let pm = ProjectiveMatrix::canonical(m, q);
            assert_ne!(pm.det(q), 0, "generator image is singular");
            pm
        })
        .collect();

    let mut index = HashMap::with_capacity(params.expected_n);
    let mut elements = Vec::with_capacity(params.expected_n);
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(params.expected_n);
    index.insert(ProjectiveMatrix::identity(), 0usize);
    elements.push(ProjectiveMatrix::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let g = elements[v];
        let mut row = Vec::with_capacity(connection.len());
        for s in &connection {
            let h = g.mul(s, q);
            let u = *index.entry(h).or_insert_with(|| {
                elements.push(h);
                queue.push_back(elements.len() - 1);
                elements.len() - 1
            });
            row.push(u);
        }
        debug_assert_eq!(rows.len(), v);
        rows.push(row);
        if elements.len() > params.expected_n {
            return Err(Error::GroupSizeMismatch { expected: params.expected_n, found: elements.len() });
        }
    }
    let n = elements.len();
    if n != params.expected_n {
        return Err(Error::GroupSizeMismatch { expected: params.expected_n, found: n });
    }
    if params.group_kind == GroupKind::Psl2 && !elements.iter().all(|e| e.in_psl(q)) {
        return Err(Error::GroupSizeMismatch { expected: params.expected_n, found: n });
    }
    let mut adj = vec![0u32; n * n];
    for (v, row) in rows.iter().enumerate() {
        for &u in row {
            // g = g·s would be a loop; a loop adds 2 via s and s̄ together
            adj[v * n + u] += 1;
        }
    }
    let graph = Graph::from_adjacency(n, adj)?;
    Ok(LpsGraph { graph, params, generators, elements })
}
