//! Prime-field and polynomial arithmetic.
//!
//! All sharing and proof machinery works over a prime field `F_p` with a
//! named 56-bit default modulus; any prime (down to toy sizes like 17) is
//! accepted so protocol tests can run on hand-checkable numbers. Feldman
//! commitments live in a *separate* group: a prime-order subgroup of `Z_q^*`
//! with `p | q - 1`, so exponents are field elements and discrete-log hiding
//! is a property of the commitment group rather than of the data field.

mod field;
mod poly;

pub use field::{
    is_prime_u64, CommitGroup, Fe, Field, FieldParams, DEFAULT_COMMIT_GENERATOR,
    DEFAULT_COMMIT_MODULUS, DEFAULT_PRIME, TOY_PRIME,
};
pub use poly::{batch_invert, lagrange_coeffs_at, lagrange_interpolate, poly_eval, poly_mul, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("duplicate abscissa in interpolation input")]
    DuplicateAbscissa,
    #[error("interpolation input is empty")]
    EmptyInput,
    #[error("commitment group is inconsistent with the data field")]
    BadCommitGroup,
}
