//! Complex Jacobi matrices that differ from the free matrix in finitely many
//! entries.

mod certify;
mod ensemble;
mod operator;

pub use certify::{
    certified_point_spectrum, CertifiedEigenvalue, CertifiedSpectrum, CertifyOptions, RejectReason,
    Rejected,
};
pub use ensemble::{ensemble_sample, rank_one_reference, EnsembleParams};
pub use operator::JacobiOperator;
