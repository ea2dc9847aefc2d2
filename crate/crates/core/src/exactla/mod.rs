//! Exact dense linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;

pub use matrix::{EchelonBasis, Mat, Rref, Subspace};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("mixed field descriptors")]
    MixedField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime (need 2 <= p < 2^31)")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `Σ coeffs[k] * mats[k]`.
pub fn linear_combination(field: Field, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[Mat]) -> Mat {
    let mut out = Mat::zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        out = out.add(&m.scale(c));
    }
    out
}
