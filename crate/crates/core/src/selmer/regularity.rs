//! The conditions `alpha o chi_v != 1` and `alpha o chi_v != omega` for
//! positive roots `alpha`.

use serde::Serialize;

use crate::galois::{Character, GaloisError, Representation, Subgroup};

use super::SelmerError;

/// Roots are pairs `(i, j)` with `1 <= i < j <= n`, standing for
/// `chi_i / chi_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub reg: bool,
    pub reg_star: bool,
    pub reg_witnesses: Vec<(usize, usize)>,
    pub reg_star_witnesses: Vec<(usize, usize)>,
}

/// Both conditions for `rho` reduced to the residue field and restricted
/// to `Gamma_v`; `omega` is compared after reduction as well.
pub fn check_regularity(decomposition: &Subgroup, rho: &Representation, omega: &Character) -> Result<RegularityReport, SelmerError> {
    let rv = rho.residue().restrict(decomposition);
    if let Some(g) = rv.first_non_borel() {
        return Err(GaloisError::NotBorelValued(decomposition.elements[g]).into());
    }
    let k = rv.ring();
    let n = rv.dim();
    let chis: Vec<Vec<u32>> = (0..n).map(|i| rv.diagonal_entry(i)).collect();
    let om: Vec<u32> = decomposition.elements.iter().map(|&g| k.from_base(omega.ring().residue(omega.value(g)))).collect();
    let mut report = RegularityReport { reg: true, reg_star: true, reg_witnesses: vec![], reg_star_witnesses: vec![] };
    for i in 0..n {
        for j in i + 1..n {
            let ratio: Vec<u32> = chis[i]
                .iter()
                .zip(&chis[j])
                .map(|(&a, &b)| k.mul(a, k.inv(b).expect("diagonal entries of an invertible triangular matrix are units")))
                .collect();
            if ratio.iter().all(|&x| x == k.one()) {
                report.reg = false;
                report.reg_witnesses.push((i + 1, j + 1));
            }
            if ratio == om {
                report.reg_star = false;
                report.reg_star_witnesses.push((i + 1, j + 1));
            }
        }
    }
    Ok(report)
}
