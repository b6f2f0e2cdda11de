//! Lifts of a residual representation to finite local rings, found by
//! exhaustive search: framed lifts, kernel-conjugacy classes, the ordinary
//! condition, tangent-space checks, obstruction cocycles and
//! quasi-homomorphisms.

mod lifts;
mod obstruction;
mod presentation;
mod quasi;
mod tangent;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteLocalRing, RMatrix};
use crate::galois::{adjoint_module, cochain_complex, AdjointFlavor, FiniteGroup, GaloisError, Representation};

pub use lifts::{deformation_classes, enumerate_lifts, ordinary_filter, DeformationClass, OrdinaryPlace};
pub use obstruction::{obstruction_class, ObstructionReport, RingSurjection};
pub use presentation::{verify_presentation, PresentationCheck};
pub use quasi::{
    block_diagonal_ambient, build_quasi_hom, quasi_hom_check, twisted_quasi_hom, InducedHom, QuasiCheck, QuasiHom,
};
pub use tangent::{check_conjugation_translation, lift_cocycle, tangent_check, IdealCoords, TangentReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("residue field F_{0} expected, got a ring of order {1}")]
    NotAField(u32, u64),
    #[error("{0} and the residual representation have different characteristic")]
    CharacteristicMismatch(String),
    #[error("relation {0} fails for the residual representation")]
    RelationFails(usize),
    #[error("the kernel of the surjection is not square-zero")]
    KernelNotSquareZero,
    #[error("the kernel of the surjection is not killed by the maximal ideal")]
    KernelNotAnnihilated,
    #[error("not a ring surjection: {0}")]
    NotASurjection(String),
    #[error("the maximal ideal of the coefficient ring is not square-zero")]
    NotSquareZero,
    #[error("phi({0}) does not commute with sigma({1})")]
    CentralizerViolation(usize, usize),
    #[error("the table does not send the identity to the identity matrix")]
    NotUnital,
    #[error("a conjugate of lift {0} is missing from the enumeration")]
    NotConjugationStable(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A representation `Gamma -> GL_n(F_p)` given on generators, together with
/// whether its commutant is scalar, i.e. `dim H^0(Gamma, gl_n) = 1`.
#[derive(Clone, Debug)]
pub struct ResidualRep {
    group: FiniteGroup,
    rho: Representation,
    scalar_commutant: bool,
}

impl ResidualRep {
    pub fn new(group: &FiniteGroup, k: &FiniteLocalRing, gens: &[RMatrix]) -> Result<Self, DeformationError> {
        if !k.is_field() {
            return Err(DeformationError::NotAField(k.p(), k.size()));
        }
        let n = gens.first().map_or(1, |m| m.rows());
        for g in gens {
            if g.rows() != n || g.cols() != n {
                return Err(DeformationError::Shape("generator images must be square of one size".into()));
            }
            if !g.is_invertible(k) {
                return Err(AlgebraError::NotInvertible.into());
            }
        }
        if gens.len() != group.generators().len() {
            return Err(DeformationError::Shape(format!(
                "{} generator images for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        if let Some(i) = first_failing_relation(group, k, gens) {
            return Err(DeformationError::RelationFails(i));
        }
        let rho = Representation::from_generators(group, k, gens)?;
        Self::from_representation(group, rho)
    }

    pub fn from_representation(group: &FiniteGroup, rho: Representation) -> Result<Self, DeformationError> {
        if !rho.ring().is_field() {
            return Err(DeformationError::NotAField(rho.ring().p(), rho.ring().size()));
        }
        let ad = adjoint_module(group, &rho, AdjointFlavor::Gl)?;
        let h0 = cochain_complex(group, &ad, 1, u64::MAX)?.cohomology(0);
        Ok(ResidualRep { group: group.clone(), scalar_commutant: h0.log_size() == 1, rho })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn field(&self) -> &FiniteLocalRing {
        self.rho.ring()
    }
    pub fn dim(&self) -> usize {
        self.rho.dim()
    }
    pub fn representation(&self) -> &Representation {
        &self.rho
    }
    pub fn generator_images(&self) -> Vec<RMatrix> {
        self.rho.generator_images(&self.group)
    }
    pub fn scalar_commutant(&self) -> bool {
        self.scalar_commutant
    }
}

/// Generator images over `A` whose reduction is the residual representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Lift {
    pub gens: Vec<RMatrix>,
}

impl Lift {
    pub fn representation(&self, group: &FiniteGroup, ring: &FiniteLocalRing) -> Result<Representation, DeformationError> {
        Ok(Representation::from_generators(group, ring, &self.gens)?)
    }

    pub fn conjugate(&self, ring: &FiniteLocalRing, g: &RMatrix, g_inv: &RMatrix) -> Lift {
        Lift { gens: self.gens.iter().map(|m| m.conjugate(ring, g, g_inv)).collect() }
    }
}

/// Evaluate a word with letters `+-k` standing for generator `k` or its
/// inverse.
pub(crate) fn eval_word(ring: &FiniteLocalRing, gens: &[RMatrix], inverses: &[Option<RMatrix>], w: &[i32]) -> RMatrix {
    let n = gens[0].rows();
    let mut x = RMatrix::identity(ring, n);
    for &l in w {
        let k = l.unsigned_abs() as usize - 1;
        let m = if l > 0 { &gens[k] } else { inverses[k].as_ref().expect("inverse precomputed for negative letters") };
        x = x.mul(ring, m);
    }
    x
}

/// Index of the first relation not satisfied by the generator images.
pub(crate) fn first_failing_relation(group: &FiniteGroup, ring: &FiniteLocalRing, gens: &[RMatrix]) -> Option<usize> {
    let mut needs_inv = vec![false; gens.len()];
    for r in group.relations() {
        for &l in r {
            if l < 0 {
                needs_inv[l.unsigned_abs() as usize - 1] = true;
            }
        }
    }
    let inverses: Vec<Option<RMatrix>> = gens
        .iter()
        .zip(&needs_inv)
        .map(|(g, &need)| if need { g.inverse(ring).ok() } else { None })
        .collect();
    if needs_inv.iter().zip(&inverses).any(|(&need, inv)| need && inv.is_none()) {
        return Some(0);
    }
    group.relations().iter().position(|r| !eval_word(ring, gens, &inverses, r).is_identity(ring))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The two-dimensional irreducible representation of `S_3` over `F_5`.
    pub fn s3_standard_f5() -> ResidualRep {
        let g = FiniteGroup::symmetric(3);
        let k = FiniteLocalRing::prime_field(5).unwrap();
        let s = RMatrix::from_entries(2, 2, &[0, 1, 1, 0]).unwrap();
        let t = RMatrix::from_entries(2, 2, &[0, 4, 1, 4]).unwrap();
        ResidualRep::new(&g, &k, &[s, t]).unwrap()
    }

    pub fn trivial(group: &FiniteGroup, p: u32, n: usize) -> ResidualRep {
        let k = FiniteLocalRing::prime_field(p).unwrap();
        let gens = vec![RMatrix::identity(&k, n); group.generators().len()];
        ResidualRep::new(group, &k, &gens).unwrap()
    }
}
