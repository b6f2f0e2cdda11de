//! Exact, desk-scale computations for simplicial Galois deformation theory
//! over finite local rings with odd residue characteristic.
//!
//! Modules, bottom up:
//! - [`algebra`]: `Z/p^e`, Smith normal form, finite local rings, matrices.
//! - [`complexes`]: chain/cochain complexes, homology, cones, internal hom.
//! - [`simplicial`]: Dold-Kan, homotopy rings, cosimplicial totalization.
//! - [`galois`]: finite groups, modules, group cochains, cup products.
//! - [`selmer`]: ordinary cohomology as a mapping cone and its long exact sequence.
//! - [`deformation`]: lifts, deformation classes, obstructions, quasi-homomorphisms.
//! - [`pseudochar`]: trace-of-word tables, axioms, reflection, reconstruction.
//! - [`scenario`]: JSON scenarios, task dispatch and reports.

pub mod algebra;
pub mod complexes;
pub mod deformation;
pub mod galois;
pub mod par;
pub mod pseudochar;
pub mod selmer;
pub mod scenario;
pub mod simplicial;
