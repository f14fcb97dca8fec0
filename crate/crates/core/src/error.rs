use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected: {reached} of {n} vertices reachable from vertex 0")]
    DisconnectedGraph { reached: usize, n: usize },
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    AsymmetricAdjacency(usize, usize),
    #[error("diagonal entry {0} is odd; loops contribute 2 each")]
    OddDiagonal(usize),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("graph is not regular: found degrees {0} and {1}")]
    NotRegular(u64, u64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid prime parameter: {0}")]
    InvalidPrime(String),
    #[error("{a} has no square root modulo {q}")]
    NoSquareRoot { a: i64, q: u64 },
    #[error("group size mismatch: expected {expected}, generated {found}")]
    GroupSizeMismatch { expected: usize, found: usize },
    #[error("q = {q} exceeds the desk-scale limit {limit}; pass the override to build anyway")]
    TooLarge { q: u64, limit: u64 },
    #[error("eigensolver failed to converge after {0} iterations")]
    EigensolverFailure(usize),
    #[error("eigenvalue gap {gap:e} lies within [tol, 10 tol) for tol = {tol:e}")]
    ClusterAmbiguity { gap: f64, tol: f64 },
    #[error("eigenvalue {lambda} exceeds the admissible bound {bound}")]
    OutOfRange { lambda: f64, bound: f64 },
    #[error("graph is not Ramanujan: eigenvalue {0} has |λ| ≥ 2√q outside ±(q+1), ±2√q")]
    NotRamanujan(f64),
    #[error("enumeration at length {m} needs ~{estimate} steps, above the budget {budget}")]
    DepthExceeded { m: usize, estimate: f64, budget: u64 },
    #[error("angle condition fails for k = {k}: θ = {theta}")]
    AngleConditionViolated { k: u32, theta: f64 },
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    QuadratureFailure { tol: f64, err: f64 },
    #[error("series operation needs constant term {0}")]
    SeriesConstantTerm(&'static str),
    #[error("spectral data was computed without eigenvectors")]
    MissingEigenvectors,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
