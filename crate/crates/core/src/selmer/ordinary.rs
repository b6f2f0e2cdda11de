//! The nearly ordinary complex and its long exact sequence.
//!
//! With `C = C^*(Gamma, g)` and the local complex
//! `D: 0 -> (+)_v C^1(Gamma_v, g)/L~_v -> (+)_v C^2(Gamma_v, g) -> ...`,
//! the ordinary complex is `C_ord^i = C^i (+) D^{i-1}` with
//! `d(c, x) = (dc, res(c) - dx)`, so that
//! `... -> H^{i-1}(D) -> H^i_ord -> H^i(Gamma, g) -> H^i(D) -> ...`
//! is exact. All complexes run over degrees `0..=top` and their cohomology
//! is exact in degrees below `top`.

use serde::Serialize;

use crate::algebra::{canonical_pivots, ZpeMatrix};
use crate::complexes::{exact_at, induced_by_matrix, CochainComplex, Homology, HomologyMap};
use crate::galois::{cochain_complex, restriction_map, FiniteGroup, GModule};
use crate::par;

use super::local::{local_condition, strict_local_condition, LocalCondition, LocalDatum};
use super::SelmerError;

/// The ordinary complex together with the pieces of its cone.
#[derive(Clone, Debug)]
pub struct OrdinaryComplex {
    pub complex: CochainComplex,
    pub global: CochainComplex,
    pub local: CochainComplex,
    /// `res^i: C^i -> D^i` for `i in 0..=top`.
    pub restriction: Vec<ZpeMatrix>,
    pub conditions: Vec<LocalCondition>,
    pub top: usize,
}

impl OrdinaryComplex {
    /// `H^i_ord`, or `None` where the truncation makes it unreliable.
    pub fn cohomology(&self, i: usize) -> Option<Homology> {
        (i < self.top).then(|| self.complex.cohomology(i as i64))
    }
}

/// Coordinates on `C^1(Gamma_v, g)/L~_v`: the complement of the pivots of
/// the canonical basis of `L~_v`. Returns the kept coordinates and the
/// projection matrix.
fn quotient(tilde: &ZpeMatrix) -> (Vec<usize>, ZpeMatrix) {
    let ring = tilde.ring();
    let n = tilde.rows();
    let piv = canonical_pivots(tilde);
    let keep: Vec<usize> = (0..n).filter(|i| !piv.contains(i)).collect();
    let proj = ZpeMatrix::from_fn(ring, keep.len(), n, |r, c| {
        let diag = u32::from(keep[r] == c);
        match piv.iter().position(|&p| p == c) {
            Some(k) => ring.sub(diag, tilde.get(keep[r], k)),
            None => diag,
        }
    });
    (keep, proj)
}

fn stack_rows(ring: crate::algebra::Zpe, cols: usize, blocks: &[ZpeMatrix]) -> ZpeMatrix {
    blocks.iter().fold(ZpeMatrix::zeros(ring, 0, cols), |acc, b| acc.vstack(b))
}

fn block_diagonal(ring: crate::algebra::Zpe, blocks: &[ZpeMatrix]) -> ZpeMatrix {
    blocks.iter().fold(ZpeMatrix::zeros(ring, 0, 0), |acc, b| acc.block_diag(b))
}

fn build(
    group: &FiniteGroup,
    data: &[LocalDatum],
    g: &GModule,
    top: usize,
    budget: u64,
    conditions: Vec<LocalCondition>,
) -> Result<OrdinaryComplex, SelmerError> {
    let ring = g.ring();
    let global = cochain_complex(group, g, top, budget)?;
    let maps = par::map(data, |d| restriction_map(group, &d.decomposition, g, top, budget));
    let maps = maps.into_iter().collect::<Result<Vec<_>, _>>()?;
    let quotients: Vec<(Vec<usize>, ZpeMatrix)> = conditions.iter().map(|c| quotient(&c.tilde)).collect();

    // the local complex D
    let mut d_ranks = vec![0usize; top + 1];
    let mut d_diffs = Vec::with_capacity(top);
    let mut res = vec![ZpeMatrix::zeros(ring, 0, global.rank(0))];
    for i in 1..=top {
        let blocks: Vec<ZpeMatrix> = maps
            .iter()
            .zip(&quotients)
            .map(|(m, (_, proj))| if i == 1 { proj.mul(&m.at(1)) } else { m.at(i as i64) })
            .collect();
        let r = stack_rows(ring, global.rank(i as i64), &blocks);
        d_ranks[i] = r.rows();
        res.push(r);
    }
    for i in 0..top {
        let d = if i == 0 {
            ZpeMatrix::zeros(ring, d_ranks[1], 0)
        } else {
            let blocks: Vec<ZpeMatrix> = maps
                .iter()
                .zip(&quotients)
                .map(|(m, (keep, _))| {
                    let di = m.target().differential(i as i64);
                    if i == 1 {
                        di.select_columns(keep)
                    } else {
                        di
                    }
                })
                .collect();
            block_diagonal(ring, &blocks)
        };
        d_diffs.push(d);
    }
    let local = CochainComplex::new(ring, 0, d_ranks.clone(), d_diffs)?;

    // the cone, shifted so that C^i sits in degree i
    let o_ranks: Vec<usize> = (0..=top).map(|i| global.rank(i as i64) + if i == 0 { 0 } else { d_ranks[i - 1] }).collect();
    let o_diffs = (0..top)
        .map(|i| {
            let (ci, ci1) = (global.rank(i as i64), global.rank(i as i64 + 1));
            let di_1 = if i == 0 { 0 } else { d_ranks[i - 1] };
            let mut m = ZpeMatrix::zeros(ring, o_ranks[i + 1], o_ranks[i]);
            m.set_block(0, 0, &global.differential(i as i64));
            m.set_block(ci1, 0, &res[i]);
            if i > 0 {
                m.set_block(ci1, ci, &local.differential(i as i64 - 1).neg());
            }
            debug_assert_eq!(o_ranks[i], ci + di_1);
            m
        })
        .collect();
    let complex = CochainComplex::new(ring, 0, o_ranks, o_diffs)?;
    Ok(OrdinaryComplex { complex, global, local, restriction: res, conditions, top })
}

/// `C^*_ord(Gamma, g)` in degrees `0..=top`.
pub fn ordinary_complex(group: &FiniteGroup, data: &[LocalDatum], g: &GModule, top: usize, budget: u64) -> Result<OrdinaryComplex, SelmerError> {
    let conditions = par::map(data, |d| local_condition(d, g, budget)).into_iter().collect::<Result<Vec<_>, _>>()?;
    build(group, data, g, top, budget, conditions)
}

/// The strict variant, with `L~'_v` cut out by `I_v` and `b/n`.
pub fn ordinary_mu_complex(group: &FiniteGroup, data: &[LocalDatum], g: &GModule, top: usize, budget: u64) -> Result<OrdinaryComplex, SelmerError> {
    let conditions = par::map(data, |d| strict_local_condition(d, g, budget)).into_iter().collect::<Result<Vec<_>, _>>()?;
    build(group, data, g, top, budget, conditions)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarNode {
    pub label: String,
    pub exact: bool,
}

/// Sizes are `log_p` of group orders, which are dimensions over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryComplexReport {
    pub top: usize,
    /// `H^i_ord` for `i = 0..=3`; `None` above the reliable range.
    pub h_ord: Vec<Option<u32>>,
    pub h_global: Vec<Option<u32>>,
    /// `H^i` of the local complex: `(+)_v H^1(Gamma_v, g)/L_v` in degree 1.
    pub h_local: Vec<Option<u32>>,
    pub l_dims: Vec<u32>,
    /// `H^2(Gamma_v, b)`, computed rather than assumed to vanish.
    pub local_h2_borel: Vec<Option<u32>>,
    pub nodes: Vec<StarNode>,
    pub h0_isomorphism: bool,
    /// `H^1_ord` maps isomorphically onto the kernel of
    /// `H^1(Gamma, g) -> (+)_v H^1(Gamma_v, g)/L_v`.
    pub selmer_agrees: Option<bool>,
    /// Alternating sum of sizes along the checked part of the sequence,
    /// corrected by the image of its last map.
    pub alternating_sum_zero: bool,
}

impl OrdinaryComplexReport {
    pub fn all_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact) && self.h0_isomorphism && self.selmer_agrees != Some(false) && self.alternating_sum_zero
    }
}

fn size(h: &Homology) -> u32 {
    h.log_size()
}

/// Build every map of the long exact sequence through `H^3_ord` (as far as
/// `top` allows) and check exactness at each node.
pub fn verify_star(group: &FiniteGroup, data: &[LocalDatum], g: &GModule, top: usize, budget: u64) -> Result<OrdinaryComplexReport, SelmerError> {
    if top < 2 {
        return Err(SelmerError::TopTooLow(top));
    }
    let ord = ordinary_complex(group, data, g, top, budget)?;
    let ring = g.ring();
    let reliable = top.min(4);
    let h_ord: Vec<Homology> = (0..reliable).map(|i| ord.complex.cohomology(i as i64)).collect();
    let h_glob: Vec<Homology> = (0..reliable).map(|i| ord.global.cohomology(i as i64)).collect();
    let h_loc: Vec<Homology> = (0..reliable).map(|i| ord.local.cohomology(i as i64)).collect();

    // objects X_{3i} = H^i_ord, X_{3i+1} = H^i, X_{3i+2} = H^i(D), and
    // maps X_j -> X_{j+1}
    let map = |j: usize| -> Option<HomologyMap> {
        let i = j / 3;
        match j % 3 {
            0 if i < reliable => {
                let ci = ord.global.rank(i as i64);
                let proj = ZpeMatrix::from_fn(ring, ci, ord.complex.rank(i as i64), |r, c| u32::from(r == c));
                Some(induced_by_matrix(&h_ord[i], &h_glob[i], &proj))
            }
            1 if i < reliable => Some(induced_by_matrix(&h_glob[i], &h_loc[i], &ord.restriction[i])),
            2 if i + 1 < reliable => {
                let ci1 = ord.global.rank(i as i64 + 1);
                let di = ord.local.rank(i as i64);
                let incl = ZpeMatrix::from_fn(ring, ci1 + di, di, |r, c| u32::from(r == ci1 + c));
                Some(induced_by_matrix(&h_loc[i], &h_ord[i + 1], &incl))
            }
            _ => None,
        }
    };
    let labels = ["H^{i}_ord", "H^{i}(Gamma)", "H^{i}(local)"];
    let mut maps: Vec<HomologyMap> = Vec::new();
    let mut j = 0;
    while j <= 9 {
        match map(j) {
            Some(m) => maps.push(m),
            None => break,
        }
        j += 1;
    }
    let entry = HomologyMap { source_orders: vec![], target_orders: h_ord[0].orders().to_vec(), matrix: ZpeMatrix::zeros(ring, h_ord[0].orders().len(), 0) };
    let mut nodes = Vec::new();
    let mut prev = &entry;
    for (j, m) in maps.iter().enumerate() {
        let label = labels[j % 3].replace("{i}", &(j / 3).to_string());
        nodes.push(StarNode { label, exact: exact_at(prev, m) });
        prev = m;
    }
    let object_size = |j: usize| -> u32 {
        let i = j / 3;
        match j % 3 {
            0 => size(&h_ord[i]),
            1 => size(&h_glob[i]),
            _ => size(&h_loc[i]),
        }
    };
    let alternating: i64 = (0..maps.len()).map(|j| if j % 2 == 0 { object_size(j) as i64 } else { -(object_size(j) as i64) }).sum();
    let last_image = maps.last().map_or(0, |m| m.image_log_size() as i64);
    let sign = if maps.len() % 2 == 1 { 1 } else { -1 };
    let alternating_sum_zero = alternating - sign * last_image == 0;

    let h0_isomorphism = maps.first().is_some_and(|m| m.is_isomorphism());
    let selmer_agrees = (maps.len() > 4).then(|| maps[3].kernel_log_size() == 0 && maps[3].image_log_size() == maps[4].kernel_log_size());

    let h2_borel: Vec<Option<u32>> = par::map(data, |d| {
        (top >= 3)
            .then(|| cochain_complex(&d.decomposition.group, &d.borel, 3, budget).map(|c| c.cohomology(2).log_size()).ok())
            .flatten()
    });
    let dims = |hs: &[Homology]| (0..4).map(|i| hs.get(i).map(size)).collect::<Vec<_>>();
    Ok(OrdinaryComplexReport {
        top,
        h_ord: dims(&h_ord),
        h_global: dims(&h_glob),
        h_local: dims(&h_loc),
        l_dims: ord.conditions.iter().map(|c| c.l_log).collect(),
        local_h2_borel: h2_borel,
        nodes,
        h0_isomorphism,
        selmer_agrees,
        alternating_sum_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Zpe, DEFAULT_BUDGET};
    use crate::galois::{adjoint_module, AdjointFlavor};
    use crate::selmer::fixtures::s3_borel;

    fn dims(c: &CochainComplex, top: usize) -> Vec<u32> {
        (0..top).map(|i| c.cohomology(i as i64).log_size()).collect()
    }

    #[test]
    fn no_places_gives_group_cohomology() {
        let (g, rho) = s3_borel();
        let gm = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        let ord = ordinary_complex(&g, &[], &gm, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(dims(&ord.complex, 3), dims(&ord.global, 3));
        let rep = verify_star(&g, &[], &gm, 3, DEFAULT_BUDGET).unwrap();
        assert!(rep.all_exact(), "{rep:?}");
    }

    /// Sets of places, each place given by generators of its decomposition
    /// group.
    fn places() -> Vec<Vec<Vec<usize>>> {
        vec![vec![vec![3]], vec![vec![1]], vec![vec![3], vec![2]], vec![vec![1, 3]]]
    }

    #[test]
    fn star_is_exact() {
        let (g, rho) = s3_borel();
        let gm = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        for flavor in [AdjointFlavor::Borel, AdjointFlavor::Nilpotent, AdjointFlavor::Gl] {
            for sites in places() {
                let data: Vec<LocalDatum> = sites
                    .iter()
                    .enumerate()
                    .map(|(k, gens)| {
                        LocalDatum::from_representation(format!("v{k}"), &g, &rho, AdjointFlavor::Gl, flavor, g.subgroup(gens).unwrap(), None)
                            .unwrap()
                    })
                    .collect();
                let rep = verify_star(&g, &data, &gm, 3, DEFAULT_BUDGET).unwrap();
                assert!(rep.all_exact(), "{flavor:?} {sites:?}: {rep:?}");
                assert_eq!(rep.nodes.len(), 8);
                if flavor == AdjointFlavor::Gl {
                    assert_eq!(rep.h_ord[1], rep.h_global[1]);
                }
            }
        }
    }

    #[test]
    fn enlarging_the_condition_never_shrinks_h1() {
        let (g, rho) = s3_borel();
        let gm = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        let sub = g.subgroup(&[3]).unwrap();
        let h1 = |flavor| {
            let d = LocalDatum::from_representation("v", &g, &rho, AdjointFlavor::Gl, flavor, sub.clone(), None).unwrap();
            ordinary_complex(&g, &[d], &gm, 2, DEFAULT_BUDGET).unwrap().cohomology(1).unwrap().log_size()
        };
        let (n, b, full) = (h1(AdjointFlavor::Nilpotent), h1(AdjointFlavor::Borel), h1(AdjointFlavor::Gl));
        assert!(n <= b && b <= full, "{n} {b} {full}");
    }

    #[test]
    fn coprime_order_kills_higher_cohomology() {
        let g = FiniteGroup::cyclic(2);
        let f = Zpe::field(3).unwrap();
        let k = crate::algebra::FiniteLocalRing::prime_field(3).unwrap();
        let s = crate::algebra::RMatrix::from_entries(2, 2, &[1, 0, 0, 2]).unwrap();
        let rho = crate::galois::Representation::from_generators(&g, &k, &[s]).unwrap();
        let gm = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        assert_eq!(gm.ring(), f);
        let d = LocalDatum::from_representation("v", &g, &rho, AdjointFlavor::Gl, AdjointFlavor::Borel, g.whole(), None).unwrap();
        let ord = ordinary_complex(&g, &[d], &gm, 4, DEFAULT_BUDGET).unwrap();
        assert!((1..4).all(|i| ord.cohomology(i).unwrap().is_zero()));
    }

    #[test]
    fn strict_variant() {
        let (g, rho) = s3_borel();
        let gm = adjoint_module(&g, &rho, AdjointFlavor::Gl).unwrap();
        let sub = g.subgroup(&[1, 3]).unwrap();
        for inertia in [vec![], vec![3], vec![1, 3]] {
            let d = LocalDatum::from_representation("v", &g, &rho, AdjointFlavor::Gl, AdjointFlavor::Borel, sub.clone(), Some(g.subgroup(&inertia).unwrap()))
                .unwrap();
            let ord = ordinary_complex(&g, std::slice::from_ref(&d), &gm, 2, DEFAULT_BUDGET).unwrap();
            let str_ = ordinary_mu_complex(&g, std::slice::from_ref(&d), &gm, 2, DEFAULT_BUDGET).unwrap();
            let (a, b) = (ord.cohomology(1).unwrap().log_size(), str_.cohomology(1).unwrap().log_size());
            assert!(b <= a, "inertia {inertia:?}: {b} > {a}");
            if inertia.is_empty() {
                assert_eq!(a, b);
            }
        }
    }
}
