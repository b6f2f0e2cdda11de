use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{
    check_budget, enumerate_small_group, fiber_entry_lists, odometer_len, odometer_pick, FiniteLocalRing, GroupKind, RMatrix,
};
use crate::galois::{FiniteGroup, Representation, Subgroup};
use crate::par;

use super::{eval_word, DeformationError, Lift, ResidualRep};

fn check_ring(r: &ResidualRep, ring: &FiniteLocalRing) -> Result<(), DeformationError> {
    if ring.p() != r.field().p() {
        return Err(DeformationError::CharacteristicMismatch(format!("ring of order {}", ring.size())));
    }
    Ok(())
}

/// Every lift of `r` to `GL_n(A)`, in lexicographic order of the generator
/// images. Candidates run over all entrywise lifts of the residual
/// generator images; relations are checked by word evaluation and each
/// survivor is confirmed to extend to a homomorphism.
pub fn enumerate_lifts(r: &ResidualRep, ring: &FiniteLocalRing, budget: u64) -> Result<Vec<Lift>, DeformationError> {
    check_ring(r, ring)?;
    let group = r.group();
    let n = r.dim();
    let residual = r.generator_images();
    let k = r.field();
    let lists: Vec<Vec<u32>> = residual.iter().flat_map(|m| fiber_entry_lists(ring, &m.residue(k))).collect();
    check_budget(odometer_len(&lists), budget)?;
    let total = odometer_len(&lists) as u64;
    let ngens = residual.len();
    let mut negative = vec![false; ngens];
    for w in group.relations() {
        for &l in w {
            if l < 0 {
                negative[l.unsigned_abs() as usize - 1] = true;
            }
        }
    }
    let lifts = par::filter_map_range(total, |idx| {
        let mut e = vec![0; n * n * ngens];
        odometer_pick(&lists, idx, &mut e);
        let gens: Vec<RMatrix> = e.chunks(n * n).map(|c| RMatrix::from_entries(n, n, c).unwrap()).collect();
        let inverses: Vec<Option<RMatrix>> = gens
            .iter()
            .zip(&negative)
            .map(|(g, &neg)| neg.then(|| g.inverse(ring).expect("lifts of invertible matrices are invertible")))
            .collect();
        if group.relations().iter().any(|w| !eval_word(ring, &gens, &inverses, w).is_identity(ring)) {
            return None;
        }
        Representation::from_generators(group, ring, &gens).ok()?;
        Some(Lift { gens })
    });
    Ok(lifts)
}

/// An orbit of lifts under conjugation by `ker(GL_n(A) -> GL_n(k))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationClass {
    pub representative: Lift,
    /// Indices into the lift list, ascending.
    pub members: Vec<usize>,
}

/// Partition `lifts` into kernel-conjugacy orbits. Fails if a conjugate of
/// some lift is missing from the list. Classes come in order of their
/// representatives.
pub fn deformation_classes(
    lifts: &[Lift],
    ring: &FiniteLocalRing,
    n: usize,
    budget: u64,
) -> Result<Vec<DeformationClass>, DeformationError> {
    let kernel = enumerate_small_group(GroupKind::KernelGLn, ring, n, budget)?;
    let inverses: Vec<RMatrix> = kernel.iter().map(|u| u.inverse(ring).expect("kernel elements are units")).collect();
    let index: HashMap<&Lift, usize> = lifts.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; lifts.len()];
    let mut classes = Vec::new();
    for i in 0..lifts.len() {
        if class_of[i].is_some() {
            continue;
        }
        let orbit = par::map_range(kernel.len(), |j| {
            let c = lifts[i].conjugate(ring, &kernel[j], &inverses[j]);
            index.get(&c).copied()
        });
        let mut members = Vec::new();
        for m in orbit {
            let m = m.ok_or(DeformationError::NotConjugationStable(i))?;
            members.push(m);
        }
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = Some(classes.len());
        }
        let rep = members.iter().map(|&m| &lifts[m]).min().expect("orbit contains the lift itself").clone();
        classes.push(DeformationClass { representative: rep, members });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// A place for the ordinary condition: the decomposition group and the
/// residual matrix conjugating it into the upper triangular Borel.
#[derive(Clone, Debug)]
pub struct OrdinaryPlace {
    pub decomposition: Subgroup,
    pub gbar: RMatrix,
}

/// Indices of the classes having a representative that, at every place,
/// becomes upper triangular on the decomposition group after conjugation by
/// some lift of `gbar`.
///
/// Changing the representative by a kernel element `u` only replaces the
/// lifts `g` of `gbar` by `g u^{-1}`, which are again lifts of `gbar`, so
/// testing the stored representative place by place is enough.
pub fn ordinary_filter(
    group: &FiniteGroup,
    classes: &[DeformationClass],
    places: &[OrdinaryPlace],
    ring: &FiniteLocalRing,
    budget: u64,
) -> Result<Vec<usize>, DeformationError> {
    let k = FiniteLocalRing::prime_field(ring.p())?;
    let mut candidates = Vec::with_capacity(places.len());
    for v in places {
        let lists = fiber_entry_lists(ring, &v.gbar.residue(&k));
        check_budget(odometer_len(&lists), budget)?;
        let n = v.gbar.rows();
        let total = odometer_len(&lists) as u64;
        let gs: Vec<(RMatrix, RMatrix)> = par::filter_map_range(total, |idx| {
            let mut e = vec![0; n * n];
            odometer_pick(&lists, idx, &mut e);
            let g = RMatrix::from_entries(n, n, &e).unwrap();
            let inv = g.inverse(ring).ok()?;
            Some((g, inv))
        });
        candidates.push(gs);
    }
    let mut kept = Vec::new();
    for (ci, c) in classes.iter().enumerate() {
        let rho = c.representative.representation(group, ring)?;
        let ok = places.iter().zip(&candidates).all(|(v, gs)| {
            let images: Vec<&RMatrix> = v.decomposition.group.generators().iter().map(|&h| rho.image(v.decomposition.elements[h])).collect();
            par::find_first(gs.len(), |j| {
                let (g, inv) = &gs[j];
                images.iter().all(|m| m.conjugate(ring, g, inv).is_upper_triangular())
            })
            .is_some()
        });
        if ok {
            kept.push(ci);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::galois::{adjoint_module, cochain_complex, AdjointFlavor};
    use crate::selmer::fixtures::s3_borel;
    use crate::selmer::{ordinary_complex, LocalDatum};

    #[test]
    fn cyclic_three_over_dual_numbers() {
        let r = trivial(&FiniteGroup::cyclic(3), 3, 1);
        let a = FiniteLocalRing::dual_numbers(3).unwrap();
        let lifts = enumerate_lifts(&r, &a, DEFAULT_BUDGET).unwrap();
        assert_eq!(lifts.len(), 3);
        let classes = deformation_classes(&lifts, &a, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(classes.len(), 3);
    }

    #[test]
    fn residue_field_has_one_lift() {
        let r = s3_standard_f5();
        let lifts = enumerate_lifts(&r, r.field(), DEFAULT_BUDGET).unwrap();
        assert_eq!(lifts, vec![Lift { gens: r.generator_images() }]);
    }

    #[test]
    fn lifts_are_sorted_and_conjugation_stable() {
        let r = s3_standard_f5();
        let a = FiniteLocalRing::dual_numbers(5).unwrap();
        let lifts = enumerate_lifts(&r, &a, DEFAULT_BUDGET).unwrap();
        assert!(lifts.windows(2).all(|w| w[0] < w[1]));
        let classes = deformation_classes(&lifts, &a, 2, DEFAULT_BUDGET).unwrap();
        // H^1(S_3, gl_2) vanishes in characteristic 5, so everything is conjugate
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), lifts.len());
        assert_eq!(classes[0].representative, lifts[0]);
    }

    #[test]
    fn budget_fails_loudly() {
        let r = s3_standard_f5();
        let a = FiniteLocalRing::dual_numbers(5).unwrap();
        assert!(matches!(enumerate_lifts(&r, &a, 1000), Err(DeformationError::Algebra(_))));
    }

    #[test]
    fn one_dimensional_filter_is_identity() {
        let g = FiniteGroup::cyclic(3);
        let r = trivial(&g, 3, 1);
        let a = FiniteLocalRing::dual_numbers(3).unwrap();
        let lifts = enumerate_lifts(&r, &a, DEFAULT_BUDGET).unwrap();
        let classes = deformation_classes(&lifts, &a, 1, DEFAULT_BUDGET).unwrap();
        let k = FiniteLocalRing::prime_field(3).unwrap();
        let places = vec![OrdinaryPlace { decomposition: g.whole(), gbar: RMatrix::identity(&k, 1) }];
        assert_eq!(ordinary_filter(&g, &classes, &places, &a, DEFAULT_BUDGET).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn ordinary_count_matches_ordinary_cohomology() {
        let (g, rho) = s3_borel();
        let k = rho.ring().clone();
        let r = ResidualRep::from_representation(&g, rho.clone()).unwrap();
        let a = FiniteLocalRing::dual_numbers(3).unwrap();
        let lifts = enumerate_lifts(&r, &a, DEFAULT_BUDGET).unwrap();
        let classes = deformation_classes(&lifts, &a, 2, DEFAULT_BUDGET).unwrap();
        let ad = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        let h1 = cochain_complex(&g, &ad, 2, DEFAULT_BUDGET).unwrap().cohomology(1);
        assert_eq!(classes.len() as u64, 3u64.pow(h1.log_size()));
        for gens in [vec![3], vec![2], vec![2, 3]] {
            let v = g.subgroup(&gens).unwrap();
            let datum = LocalDatum::from_representation(
                "v",
                &g,
                &rho,
                AdjointFlavor::Gl,
                AdjointFlavor::Borel,
                v.clone(),
                None,
            )
            .unwrap();
            let ord = ordinary_complex(&g, &[datum], &ad, 3, DEFAULT_BUDGET).unwrap();
            let dim = ord.cohomology(1).unwrap().log_size();
            let places = vec![OrdinaryPlace { decomposition: v, gbar: RMatrix::identity(&k, 2) }];
            let kept = ordinary_filter(&g, &classes, &places, &a, DEFAULT_BUDGET).unwrap();
            assert_eq!(kept.len() as u64, 3u64.pow(dim), "decomposition group generated by {gens:?}");
        }
    }
}
