//! Dense complex linear algebra.

mod eig;
mod hermitian;
mod lu;
mod matrix;
mod oracle;
mod svd;
pub mod tridiag;

pub use eig::{eig, eig_general, reduce_to_hessenberg, EigOptions, EigenResult};
pub use hermitian::eig_hermitian;
pub use lu::{det, log_det, LogDet, Lu};
pub use matrix::DenseMatrix;
pub use oracle::{
    char_poly_roots_oracle, characteristic_polynomial, cubic_roots, quadratic_roots, quartic_roots,
};
pub use svd::{schatten_norm, singular_values, SchattenExponent, SingularValues};
pub use tridiag::{Tridiagonal, TridiagonalLu};
