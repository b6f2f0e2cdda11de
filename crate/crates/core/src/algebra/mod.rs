//! Coefficient arithmetic: `Z/p^e`, dense matrices over it, finite local rings
//! given by structure constants, and matrices over those rings.

mod linalg;
mod matrix;
mod ring;
mod rmatrix;
mod zpe;

use thiserror::Error;

pub use linalg::{
    canonical_basis, canonical_pivots, image_log_size, inverse, kernel, preimage, rank, same_span,
    smith_exponents, snf, solve, span_contains, span_le, zero_span, Kernel, SmithForm,
};
pub use matrix::ZpeMatrix;

pub(crate) use linalg::{field_kernel, field_rref};
pub(crate) use rmatrix::{check_budget, fiber_entry_lists, odometer_pick};
pub use ring::{ring_from_spec, FiniteLocalRing, RingSpec, MAX_RING_SIZE};
pub use rmatrix::{enumerate_small_group, odometer_len, GroupKind, RMatrix, DEFAULT_BUDGET};
pub use zpe::Zpe;


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("p = 2 is not supported; p must be an odd prime")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("exponent must be at least 1")]
    BadExponent,
    #[error("modulus p^e exceeds {}", Zpe::MAX_MODULUS)]
    ModulusTooLarge,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("span is not a free direct summand")]
    NotFreeSummand,
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("multiplication is not commutative on basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("the given unit element is not a multiplicative identity")]
    NoUnit,
    #[error("ring is not local: non-units do not form an ideal")]
    NotLocal,
    #[error("residue field has degree {0} over F_p; only prime residue fields are supported")]
    ResidueFieldNotPrime(usize),
    #[error("ring has more than {} elements", MAX_RING_SIZE)]
    RingTooLarge,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}
