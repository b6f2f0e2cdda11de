//! Level-truncated simplicial modules and rings, the Dold-Kan
//! correspondence, homotopy groups and rings, and the totalization of the
//! cosimplicial module attached to a group acting on a module.

pub mod delta;
mod dold_kan;
mod module;
mod ring;
mod totalization;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;

pub use dold_kan::{dk, homotopy_groups, normalize, normalized, HomotopyGroup, Normalization};
pub use module::SimplicialModule;
pub use ring::{homotopy_ring, square_zero_extension, GradedHomotopyRing, SimplicialRing};
pub use totalization::{cofaces, cosimplicial_group_complex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("simplicial identity fails: {0}")]
    Identity(String),
    #[error("structure map is not a unital ring map: {0}")]
    NotRingMap(String),
    #[error("complex has a nonzero module in negative degree {0}")]
    NegativeDegree(i64),
    #[error("truncation level {level} is too low; need at least {need}")]
    LevelTooLow { need: usize, level: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
