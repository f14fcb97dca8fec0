//! Reduced-cycle counting, Ihara zeta functions and Chebyshev-type moment
//! limits for regular graphs, with exact brute-force oracles and LPS
//! Ramanujan graphs as test material.
//!
//! Exact quantities (path and cycle counts, zeta coefficients, theta
//! coefficients) use arbitrary-precision integers and rationals. Spectral
//! quantities are generic over [`scalar::Real`]; the aliases below fix the
//! usual choices.

pub mod chebyshev;
pub mod error;
pub mod graph;
pub mod limits;
pub mod linalg;
pub mod lps;
pub mod nbt;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod series;
pub mod spectral;
pub mod suite;
pub mod surd;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{certify_regular, named_graph, Graph, RegularityCertificate};
pub use lps::{build_lps, LpsGraph, LpsParams};
pub use series::TruncatedSeries;
pub use spectral::SpectralData;

/// Double-precision spectral data.
pub type Spectrum = spectral::SpectralData<f64>;
/// Single-precision spectral data.
pub type Spectrum32 = spectral::SpectralData<f32>;
pub type RealMatrix = linalg::Mat<f64>;
pub type RationalSeries = series::TruncatedSeries<num_rational::BigRational>;
pub type FloatSeries = series::TruncatedSeries<f64>;
