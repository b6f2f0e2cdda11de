//! Simultaneous conjugacy of matrix tuples over the kernel of reduction, and
//! recovery of a representation from a table.

use serde::Serialize;

use crate::algebra::{
    check_budget, enumerate_small_group, fiber_entry_lists, odometer_len, odometer_pick, FiniteLocalRing, GroupKind, RMatrix,
};
use crate::deformation::{quasi_hom_check, ResidualRep};
use crate::par;

use super::{from_quasi_lift, word_traces_match, PseudoCharacterTable, PseudocharError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleClassWitness {
    pub tuple: Vec<RMatrix>,
    /// `u` in the kernel with `u t1 u^{-1} = t2` entrywise, if one exists.
    pub conjugator: Option<RMatrix>,
}

/// Search `ker(GL_n(A) -> GL_n(k))` for a simultaneous conjugator taking
/// `t1` to `t2`. Tuples with different residues or different single-entry
/// traces are rejected without a search.
pub fn conj_equivalent(
    ring: &FiniteLocalRing,
    t1: &[RMatrix],
    t2: &[RMatrix],
    budget: u64,
) -> Result<TupleClassWitness, PseudocharError> {
    if t1.len() != t2.len() {
        return Err(PseudocharError::Shape("tuples of different length".into()));
    }
    let absent = TupleClassWitness { tuple: t1.to_vec(), conjugator: None };
    let n = t1.first().map_or(0, |m| m.rows());
    let same_residue = t1.iter().zip(t2).all(|(a, b)| a.residue(ring) == b.residue(ring));
    let same_traces = t1.iter().zip(t2).all(|(a, b)| a.trace(ring) == b.trace(ring));
    if !same_residue || !same_traces {
        return Ok(absent);
    }
    let kernel = enumerate_small_group(GroupKind::KernelGLn, ring, n, budget)?;
    let hit = par::find_first(kernel.len(), |i| {
        let u = &kernel[i];
        t1.iter().zip(t2).all(|(a, b)| u.mul(ring, a) == b.mul(ring, u))
    });
    Ok(TupleClassWitness { tuple: t1.to_vec(), conjugator: hit.map(|i| kernel[i].clone()) })
}

/// A reconstructed table with the lifts chosen for the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub table: Vec<RMatrix>,
    pub generator_lifts: Vec<RMatrix>,
    /// The output passes the quasi-homomorphism check with witnesses in the
    /// kernel of reduction.
    pub is_quasi_lift: bool,
    /// The table of the output equals the input on all stored entries.
    pub round_trip: bool,
}

fn fiber_candidates(ring: &FiniteLocalRing, residual: &[RMatrix], budget: u64) -> Result<Vec<Vec<RMatrix>>, PseudocharError> {
    let k = FiniteLocalRing::prime_field(ring.p())?;
    let n = residual.first().map_or(0, |m| m.rows());
    let lists: Vec<Vec<u32>> = residual.iter().flat_map(|m| fiber_entry_lists(ring, &m.residue(&k))).collect();
    check_budget(odometer_len(&lists), budget)?;
    let total = odometer_len(&lists) as u64;
    Ok(par::filter_map_range(total, |idx| {
        let mut e = vec![0; lists.len()];
        odometer_pick(&lists, idx, &mut e);
        Some(e.chunks(n * n).map(|c| RMatrix::from_entries(n, n, c).unwrap()).collect())
    }))
}

/// Recover `rho: Gamma -> GL_n(A)` from its table. The generators play the
/// role of the `delta_i`: first the lexicographically smallest lift tuple
/// `h` of their residual images whose word traces match the table is fixed,
/// then each `rho(gamma)` is the unique lift `g` of the residual image with
/// the word traces of `(h, g)` matching the table at `(delta, gamma)`.
pub fn reconstruct(t: &PseudoCharacterTable, r: &ResidualRep, budget: u64) -> Result<Reconstruction, PseudocharError> {
    let group = r.group();
    let ring = t.ring();
    let n = r.dim();
    if !r.scalar_commutant() {
        return Err(PseudocharError::NotScalarCommutant);
    }
    if t.order() != group.order() || t.dim() != n {
        return Err(PseudocharError::Shape("table and residual representation disagree".into()));
    }
    let deltas = group.generators().to_vec();
    let d = deltas.len();
    if d == 0 {
        let table = vec![RMatrix::identity(ring, n); group.order()];
        return finish(t, r, table, vec![], budget);
    }
    if d + 1 > t.max_tuple() {
        return Err(PseudocharError::TupleBoundTooSmall(d, d + 1));
    }
    let max_word = t.max_word();
    let residual = r.generator_images();
    let h_candidates = fiber_candidates(ring, &residual, budget)?;
    let expected = t.row(&deltas);
    let h = par::find_first(h_candidates.len(), |i| word_traces_match(ring, &h_candidates[i], expected, max_word))
        .map(|i| h_candidates[i].clone())
        .ok_or(PseudocharError::NoMatch)?;
    let mut table = Vec::with_capacity(group.order());
    for gamma in 0..group.order() {
        let candidates = fiber_candidates(ring, std::slice::from_ref(r.representation().image(gamma)), budget)?;
        let mut key = deltas.clone();
        key.push(gamma);
        let expected = t.row(&key);
        let matches: Vec<usize> = par::map_range(candidates.len(), |i| {
            let mut tuple = h.clone();
            tuple.push(candidates[i][0].clone());
            word_traces_match(ring, &tuple, expected, max_word)
        })
        .into_iter()
        .enumerate()
        .filter_map(|(i, ok)| ok.then_some(i))
        .collect();
        match matches.len() {
            0 => return Err(PseudocharError::NoMatchAt(gamma)),
            1 => table.push(candidates[matches[0]][0].clone()),
            count => return Err(PseudocharError::Ambiguous { element: gamma, count }),
        }
    }
    finish(t, r, table, h, budget)
}

fn finish(
    t: &PseudoCharacterTable,
    r: &ResidualRep,
    table: Vec<RMatrix>,
    generator_lifts: Vec<RMatrix>,
    budget: u64,
) -> Result<Reconstruction, PseudocharError> {
    let ring = t.ring();
    let kernel = enumerate_small_group(GroupKind::KernelGLn, ring, r.dim(), budget)?;
    let is_quasi_lift = quasi_hom_check(r.group(), ring, &table, &kernel)?.is_quasi();
    let again = from_quasi_lift(r.group(), ring, &table, t.max_tuple(), t.max_word(), budget)?;
    Ok(Reconstruction { table, generator_lifts, is_quasi_lift, round_trip: again == *t })
}
