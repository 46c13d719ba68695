//! Exact arithmetic substrate: arbitrary-precision integers and rationals,
//! cyclotomic and finite fields presented as polynomial quotients, exact
//! rank/kernel computations over those fields, and integer Smith normal
//! form.
//!
//! Nothing here ever goes near floating point. Ranks computed over a field
//! are invariant under field extension, which is why the finite fields
//! `F_{p^s}` constructed by [`FieldSpec::splitting_field`] stand in for an
//! algebraic closure: every matrix we ever reduce is defined over the
//! subfield generated by the roots of unity it mentions, and enlarging the
//! field cannot change the rank of a matrix.

mod field;
mod matrix;

pub use field::{
    bigint_is_negative, cyclotomic_polynomial, euler_phi, factor_u64, is_prime,
    rational_to_bigint, FieldElement, FieldSpec, Scalar,
};
pub use matrix::{solve_in_column_span, FieldMatrix, IntegerMatrix, SnfResult};

use thiserror::Error;

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {p} divides the cover order {n}; the eigenspace decomposition requires a characteristic not dividing the order")]
    CharacteristicDividesOrder { p: u64, n: u64 },
    #[error("the field contains no element of exact multiplicative order {n}")]
    NoRootOfUnity { n: u64 },
    #[error("matrix entries use mixed field specifications")]
    MixedFieldSpecs,
    #[error("matrix storage has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
}
