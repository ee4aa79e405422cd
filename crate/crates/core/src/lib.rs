//! Exact spectral and resistance invariants for star prism graphs.
//!
//! A star prism is the Cartesian product of a star with a single edge: two
//! star copies joined by one "rung" per vertex. This crate builds those
//! graphs and their rung-deleted relatives, computes Laplacian and normalized
//! Laplacian spectra through the mirror-symmetry block split, evaluates the
//! closed-form Kirchhoff / spanning-tree / Wiener / Gutman expressions for
//! the family, and checks everything against a brute-force oracle that works
//! entirely in exact rational arithmetic.
//!
//! Modules:
//! - [`graph`]: graph construction (stars, products, the rung-deleted family).
//! - [`matrix`]: exact rational matrices, Bareiss determinants, a Jacobi
//!   eigensolver for the floating cross-checks.
//! - [`spectral`]: Laplacians, the mirror split, numeric and closed-form spectra.
//! - [`invariants`]: the oracle (resistances, tree counts, distance indices)
//!   and the spectrum-based routes to the same numbers.
//! - [`closed_forms`]: the family formulas, including corrected variants where
//!   the published ones fail the oracle.
//! - [`report`], [`sweep`]: invariant reports, verification sweeps, tables.

pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod spectral;
pub mod sweep;

pub use closed_forms::Variant;
pub use error::{Error, Result};
pub use graph::{cartesian_product, complete, star, strong_product, FamilySpec, Graph, GraphJson};
pub use invariants::ResistanceMatrix;
pub use matrix::{FloatMatrix, RationalMatrix};
pub use rational::Scalar;
pub use report::{InvariantKind, InvariantReport};
pub use spectral::{
    laplacian, mirror_split, normalized_laplacian, numeric_spectrum, CubicFactor, MirrorPairing,
    NormalizedLaplacian, Spectrum,
};
pub use sweep::{RunMode, SubsetPolicy, SweepConfig, VerifySummary};
