//! Computable machinery for univalent planar harmonic mappings.
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: truncated complex power series.
//! - [`modular_q`]: exact coefficients of the modular function `Q`.
//! - [`harmonic`]: harmonic maps `f = h + conj(g)`, the harmonic Koebe map, shears.
//! - [`subordination`]: coefficient bounds obtained by subordination to `Q`.
//! - [`metrics`]: spherical area quadrature, hyperbolic densities, boundary distances.
//! - [`harness`]: reproducible verification suites and JSON reports.

pub mod harmonic;
pub mod harness;
pub mod metrics;
pub mod modular_q;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod subordination;

pub use num_complex::Complex64;
pub use report::VerificationReport;
pub use series::{SeriesError, TruncatedSeries};
