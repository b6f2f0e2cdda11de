//! Nearly ordinary cohomology as a mapping cone, verification of its long
//! exact sequence, the strict variant cut out by inertia, and the
//! regularity conditions on diagonal characters.

mod local;
mod ordinary;
mod regularity;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;
use crate::galois::GaloisError;

pub use local::{local_condition, strict_local_condition, LocalCondition, LocalDatum};
pub use ordinary::{ordinary_complex, ordinary_mu_complex, verify_star, OrdinaryComplex, OrdinaryComplexReport, StarNode};
pub use regularity::{check_regularity, RegularityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelmerError {
    #[error("place {0}: the Borel embedding is not equivariant")]
    NotEquivariant(String),
    #[error("place {0}: the Borel embedding is not injective")]
    NotInjective(String),
    #[error("place {0}: no inertia subgroup or torus quotient supplied")]
    MissingInertia(String),
    #[error("place {0}: inertia is not contained in the decomposition group")]
    InertiaNotContained(String),
    #[error("place {0}: {1}")]
    Shape(String, String),
    #[error("cohomology up to degree {0} is too little for the long exact sequence")]
    TopTooLow(usize),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::algebra::{FiniteLocalRing, RMatrix};
    use crate::galois::{FiniteGroup, Representation};

    /// `S_3 -> GL_2(F_3)` with `(0 1) -> diag(1, -1)` and the 3-cycle
    /// unipotent; upper triangular on the whole group.
    pub fn s3_borel() -> (FiniteGroup, Representation) {
        let g = FiniteGroup::symmetric(3);
        let k = FiniteLocalRing::prime_field(3).unwrap();
        let s = RMatrix::from_entries(2, 2, &[1, 0, 0, 2]).unwrap();
        let t = RMatrix::from_entries(2, 2, &[1, 1, 0, 1]).unwrap();
        let rho = Representation::from_generators(&g, &k, &[s, t]).unwrap();
        (g, rho)
    }
}
