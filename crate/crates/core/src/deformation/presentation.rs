//! Sufficiency of a presentation, tested by counting homomorphisms.

use serde::Serialize;

use crate::algebra::{check_budget, enumerate_small_group, odometer_len, odometer_pick, FiniteLocalRing, GroupKind, RMatrix};
use crate::galois::{FiniteGroup, Representation};
use crate::par;

use super::{first_failing_relation, DeformationError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCheck {
    /// Generator tuples in `GL_n(A)` satisfying every relation.
    pub via_relations: u64,
    /// Generator tuples extending to a multiplicative table.
    pub via_table: u64,
    pub sufficient: bool,
}

/// Count `Hom(Gamma, GL_n(A))` twice: through the relations and through
/// the Cayley table. The presentation is sufficient when the counts agree.
pub fn verify_presentation(group: &FiniteGroup, ring: &FiniteLocalRing, n: usize, budget: u64) -> Result<PresentationCheck, DeformationError> {
    let gl = enumerate_small_group(GroupKind::GLn, ring, n, budget)?;
    let k = group.generators().len();
    let lists: Vec<Vec<usize>> = vec![(0..gl.len()).collect(); k];
    check_budget(odometer_len(&lists), budget)?;
    let total = odometer_len(&lists) as u64;
    let flags = par::filter_map_range(total, |idx| {
        let mut pick = vec![0usize; k];
        odometer_pick(&lists, idx, &mut pick);
        let gens: Vec<RMatrix> = pick.iter().map(|&i| gl[i].clone()).collect();
        let by_relations = first_failing_relation(group, ring, &gens).is_none();
        let by_table = Representation::from_generators(group, ring, &gens).is_ok();
        (by_relations || by_table).then_some((by_relations, by_table))
    });
    let via_relations = flags.iter().filter(|f| f.0).count() as u64;
    let via_table = flags.iter().filter(|f| f.1).count() as u64;
    Ok(PresentationCheck { via_relations, via_table, sufficient: via_relations == via_table })
}
