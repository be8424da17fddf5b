//! # siclab
//!
//! Numerical toolkit for general symmetric informationally complete POVMs
//! (general SICs): a POVM of `d²` positive elements with equal
//! Hilbert-Schmidt norms `√a` and equal pairwise overlaps `b`.
//!
//! - [`linalg`]: Hermitian operators, Schatten norms, Gell-Mann generators,
//!   Bloch vectors and random states.
//! - [`sic`]: validation, rank-one and depolarized constructions, dual bases
//!   and linear-inversion tomography.
//! - [`entropy`]: Tsallis, Rényi and related entropies of distributions.
//! - [`bounds`]: exact index of coincidence and closed-form entropic lower
//!   bounds for one POVM or a pair.
//! - [`suite`]: seeded batch runners that compare every bound to brute-force
//!   entropies, in parallel when the `parallel` feature is enabled.
//!
//! All logarithms are natural.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod distribution;
pub mod entropy;
pub mod error;
pub mod io;
pub mod linalg;
pub mod parallel;
pub mod report;
pub mod sic;
pub mod suite;
pub mod tol;

pub use distribution::ProbabilityDistribution;
pub use entropy::EntropyOrder;
pub use error::{Error, Result};
pub use linalg::{BlochVector, DensityMatrix, GeneratorBasis, HermitianOperator, SchattenOrder};
pub use parallel::ExecMode;
pub use report::{BoundKind, BoundReport, Summary};
pub use sic::{DualBasis, GeneralSicPovm, Povm};
