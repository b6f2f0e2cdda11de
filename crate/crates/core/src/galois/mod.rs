//! Finite groups, modules with group action, inhomogeneous cochains, group
//! cohomology, restriction and cup products.

mod cochains;
mod cup;
mod group;
mod module;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;

pub use cochains::{cochain_complex, restriction, restriction_map, tuple_count, CochainIndex};
pub use cup::{cup_class, cup_cochains, Pairing};
pub use group::{FiniteGroup, GroupSpec, Subgroup};
pub use module::{adjoint_module, twisted_dual, AdjointFlavor, Character, GModule, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("the generators do not generate the group")]
    NotGenerating,
    #[error("relation {0} does not evaluate to the identity")]
    RelationFails(usize),
    #[error("word letter {0} does not name a generator")]
    BadWord(i32),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("not a homomorphism: images disagree on ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("representation is not upper triangular at element {0}")]
    NotBorelValued(usize),
    #[error("character is not multiplicative or not unit-valued at {0}")]
    NotACharacter(usize),
    #[error("pairing is not equivariant at generator {0}")]
    PairingNotEquivariant(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
