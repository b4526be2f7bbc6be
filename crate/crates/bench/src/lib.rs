//! Shared fixtures for the benchmarks.

use spectool_core::jacobi::{ensemble_sample, EnsembleParams};
use spectool_core::JacobiOperator;

/// Draw `index` of the default ensemble.
pub fn sample_operator(index: u64) -> JacobiOperator {
    ensemble_sample(&EnsembleParams::default(), index).expect("default ensemble is valid")
}
