//! Exact linear algebra over the rationals, prime fields and the integers.
//!
//! Nothing here touches floating point. Reductions are deterministic so
//! that bases computed downstream (cohomology representatives, kernels) are
//! reproducible bit for bit.

mod field;
mod matrix;
mod snf;
mod sparse;

use thiserror::Error;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{axpy, dot, is_zero_vec, rank, rank_kernel_image, rref, scale, Echelon, Matrix, RankKernelImage};
pub use snf::{int_matrix, int_mul, smith_normal_form, SmithForm};
pub use sparse::{sparse_rank, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("unrecognised field '{0}' (expected q or f<p>)")]
    BadFieldName(String),
}

/// Runs `$body` with `$f` bound to the concrete field described by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::linalg::FieldSpec::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            $crate::linalg::FieldSpec::Prime(p) => {
                let $f = $crate::linalg::PrimeField::new(p).expect("field spec holds a prime");
                $body
            }
        }
    };
}
