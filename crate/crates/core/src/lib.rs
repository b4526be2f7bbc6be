//! Spectra of complex Jacobi matrices and the function theory used to bound
//! them.
//!
//! * [`linalg`]: dense complex eigenvalues, singular values, Schatten norms.
//! * [`disk`]: Joukowski map, harmonic measure of arcs, Blaschke factors and
//!   weighted zero sums on the unit disk.
//! * [`jacobi`]: finite-support perturbations of the free Jacobi matrix and
//!   certified extraction of their discrete spectrum.
//! * [`determinant`]: regularised determinants and perturbation determinants.
//! * [`lt`]: eigenvalue-sum inequalities and ensemble sweeps.

pub mod determinant;
pub mod disk;
pub mod error;
pub mod jacobi;
pub mod linalg;
pub mod lt;

pub use determinant::DetSample;
pub use disk::{BoundarySet, GrowthProfile, WeightSpec, ZeroSet};
pub use error::{Error, Result};
pub use jacobi::{CertifiedSpectrum, EnsembleParams, JacobiOperator};
pub use linalg::{DenseMatrix, EigenResult, SingularValues};
pub use lt::{LTReport, SweepSummary};
pub use num_complex::Complex64;
