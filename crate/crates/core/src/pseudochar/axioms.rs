//! Relabeling and product-substitution axioms, and equivariance under
//! reversal of tuples.

use serde::Serialize;

use crate::galois::FiniteGroup;
use crate::par;

use super::PseudoCharacterTable;

/// Reported violations are capped at this many.
const MAX_WITNESSES: usize = 16;

/// Letters are 1-based in witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// `theta_m(w^zeta)(gamma) != theta_n(w)(gamma o zeta)`.
    Relabel { zeta: Vec<usize>, word: Vec<usize>, tuple: Vec<usize> },
    /// Substituting the last letter `n` by `n, n+1` does not match
    /// multiplying the last two entries of the tuple.
    Product { word: Vec<usize>, tuple: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub relabel_checks: u64,
    pub product_checks: u64,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn one_based(w: &[usize]) -> Vec<usize> {
    w.iter().map(|l| l + 1).collect()
}

/// Every map `{0..n} -> {0..m}` in lexicographic order.
fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|z: Vec<usize>| (0..m).map(move |j| [z.clone(), vec![j]].concat())).collect();
    }
    out
}

/// Both axioms on every stored word and tuple.
pub fn verify_axioms(group: &FiniteGroup, t: &PseudoCharacterTable) -> AxiomReport {
    let mut report = AxiomReport { relabel_checks: 0, product_checks: 0, violations: vec![] };
    let big_m = t.max_tuple();
    for m in 1..=big_m {
        let wm = t.words(m);
        // (n, zeta, word index over n letters, word index over m letters)
        let mut relabels: Vec<(usize, Vec<usize>, Vec<(usize, usize)>)> = Vec::new();
        for n in 1..=big_m {
            let wn = t.words(n).all();
            for zeta in all_maps(n, m) {
                let pairs = wn.iter().enumerate().map(|(i, w)| {
                    let wz: Vec<usize> = w.iter().map(|&l| zeta[l]).collect();
                    (i, wm.index(&wz))
                });
                relabels.push((n, zeta.clone(), pairs.collect()));
            }
        }
        let per_tuple = relabels.iter().map(|r| r.2.len() as u64).sum::<u64>();
        report.relabel_checks += per_tuple * t.tuple_count(m) as u64;
        let found = par::map_range(t.tuple_count(m), |ti| {
            let gamma = t.decode_tuple(ti, m);
            let row = t.row(&gamma);
            let mut bad = Vec::new();
            for (n, zeta, pairs) in &relabels {
                let sub: Vec<usize> = zeta.iter().map(|&j| gamma[j]).collect();
                let sub_row = t.row(&sub);
                for &(wi, wzi) in pairs {
                    if row[wzi] != sub_row[wi] {
                        bad.push(AxiomViolation::Relabel {
                            zeta: one_based(zeta),
                            word: one_based(&t.words(*n).word(wi)),
                            tuple: gamma.clone(),
                        });
                        if bad.len() >= MAX_WITNESSES {
                            return bad;
                        }
                    }
                }
            }
            bad
        });
        push_capped(&mut report.violations, found);
    }
    for n in 1..big_m {
        let wn = t.words(n);
        let wn1 = t.words(n + 1);
        let pairs: Vec<(usize, usize)> = wn
            .all()
            .iter()
            .enumerate()
            .filter_map(|(i, w)| {
                let hat: Vec<usize> = w.iter().flat_map(|&l| if l == n - 1 { vec![n - 1, n] } else { vec![l] }).collect();
                (hat.len() <= t.max_word()).then(|| (i, wn1.index(&hat)))
            })
            .collect();
        report.product_checks += pairs.len() as u64 * t.tuple_count(n + 1) as u64;
        let found = par::map_range(t.tuple_count(n + 1), |ti| {
            let gamma = t.decode_tuple(ti, n + 1);
            let mut merged = gamma[..n - 1].to_vec();
            merged.push(group.mul(gamma[n - 1], gamma[n]));
            let row = t.row(&gamma);
            let merged_row = t.row(&merged);
            let mut bad = Vec::new();
            for &(fi, hi) in &pairs {
                if row[hi] != merged_row[fi] {
                    bad.push(AxiomViolation::Product { word: one_based(&wn.word(fi)), tuple: gamma.clone() });
                    if bad.len() >= MAX_WITNESSES {
                        return bad;
                    }
                }
            }
            bad
        });
        push_capped(&mut report.violations, found);
    }
    report
}

fn push_capped<T>(out: &mut Vec<T>, found: Vec<Vec<T>>) {
    for v in found.into_iter().flatten() {
        if out.len() >= MAX_WITNESSES {
            return;
        }
        out.push(v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionReport {
    /// No violation among the stored entries.
    pub equivariant: bool,
    pub max_tuple: usize,
    pub max_word: usize,
    /// First violation: `(word, tuple)` with 1-based letters.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// `theta(w; gamma_1 .. gamma_m) = theta(w'; gamma_m .. gamma_1)` where `w'`
/// replaces letter `i` by `m + 1 - i`.
pub fn reflection_check(t: &PseudoCharacterTable) -> ReflectionReport {
    let mut witness = None;
    for m in 1..=t.max_tuple() {
        let words = t.words(m);
        let mirrored: Vec<usize> = words.all().iter().map(|w| words.index(&w.iter().map(|&l| m - 1 - l).collect::<Vec<_>>())).collect();
        let first = par::find_first(t.tuple_count(m), |ti| {
            let gamma = t.decode_tuple(ti, m);
            let rev: Vec<usize> = gamma.iter().rev().copied().collect();
            let (row, rev_row) = (t.row(&gamma), t.row(&rev));
            (0..words.len()).any(|wi| row[wi] != rev_row[mirrored[wi]])
        });
        if let Some(ti) = first {
            let gamma = t.decode_tuple(ti, m);
            let rev: Vec<usize> = gamma.iter().rev().copied().collect();
            let (row, rev_row) = (t.row(&gamma), t.row(&rev));
            let wi = (0..words.len()).find(|&wi| row[wi] != rev_row[mirrored[wi]]).expect("violation found above");
            witness = Some((one_based(&words.word(wi)), gamma));
            break;
        }
    }
    ReflectionReport { equivariant: witness.is_none(), max_tuple: t.max_tuple(), max_word: t.max_word(), witness }
}

#[cfg(test)]
mod tests {
    use super::super::tests::s3_lift_f5_eps;
    use super::super::{from_quasi_lift, DEFAULT_MAX_TUPLE, DEFAULT_MAX_WORD};
    use super::*;
    use crate::algebra::{enumerate_small_group, FiniteLocalRing, GroupKind, RMatrix, DEFAULT_BUDGET};
    use crate::deformation::{twisted_quasi_hom, ResidualRep};
    use crate::galois::Representation;

    #[test]
    fn homomorphism_tables_pass() {
        let (g, a, rho) = s3_lift_f5_eps();
        let t = from_quasi_lift(&g, &a, rho.images(), DEFAULT_MAX_TUPLE, DEFAULT_MAX_WORD, DEFAULT_BUDGET).unwrap();
        let r = verify_axioms(&g, &t);
        assert!(r.passes(), "{:?}", r.violations);
        assert!(r.relabel_checks > 1_000_000);
        assert!(r.product_checks > 0);
        assert!(reflection_check(&t).equivariant);
    }

    #[test]
    fn one_dimensional_character_passes() {
        let g = FiniteGroup::cyclic(4);
        let k = FiniteLocalRing::prime_field(5).unwrap();
        let rho = Representation::from_generators(&g, &k, &[RMatrix::from_entries(1, 1, &[2]).unwrap()]).unwrap();
        let t = from_quasi_lift(&g, &k, rho.images(), 3, 4, DEFAULT_BUDGET).unwrap();
        assert!(verify_axioms(&g, &t).passes());
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let (g, a, rho) = s3_lift_f5_eps();
        let mut t = from_quasi_lift(&g, &a, rho.images(), 2, 3, DEFAULT_BUDGET).unwrap();
        let v = t.value(&[0, 1], &[2, 3]);
        t.set(&[0, 1], &[2, 3], a.add(v, a.one()));
        let r = verify_axioms(&g, &t);
        assert!(!r.passes());
        assert!(r.violations.iter().any(|v| matches!(v, AxiomViolation::Relabel { tuple, .. } if tuple == &vec![2, 3])));
        assert!(!reflection_check(&t).equivariant);
    }

    #[test]
    fn singletons_are_symmetric() {
        let g = FiniteGroup::cyclic(3);
        let k = FiniteLocalRing::prime_field(3).unwrap();
        let gl2 = enumerate_small_group(GroupKind::GLn, &k, 2, DEFAULT_BUDGET).unwrap();
        // an arbitrary table: only m = 1 is stored
        let table = vec![RMatrix::identity(&k, 2), gl2[5].clone(), gl2[17].clone()];
        let t = from_quasi_lift(&g, &k, &table, 1, 6, DEFAULT_BUDGET).unwrap();
        assert!(reflection_check(&t).equivariant);
    }

    #[test]
    fn kernel_conjugates_give_identical_tables() {
        let (g, a, rho) = s3_lift_f5_eps();
        let t = from_quasi_lift(&g, &a, rho.images(), 2, 4, DEFAULT_BUDGET).unwrap();
        let kernel = enumerate_small_group(GroupKind::KernelGLn, &a, 2, DEFAULT_BUDGET).unwrap();
        for u in kernel.iter().step_by(61) {
            let u_inv = u.inverse(&a).unwrap();
            let conj: Vec<RMatrix> = rho.images().iter().map(|m| m.conjugate(&a, u, &u_inv)).collect();
            assert_eq!(from_quasi_lift(&g, &a, &conj, 2, 4, DEFAULT_BUDGET).unwrap(), t);
        }
    }

    #[test]
    fn twisted_quasi_lift_is_not_reflection_equivariant() {
        let s3 = FiniteGroup::symmetric(3);
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(5), &s3);
        let a = FiniteLocalRing::dual_numbers(5).unwrap();
        let k = FiniteLocalRing::prime_field(5).unwrap();
        let std = ResidualRep::new(
            &s3,
            &k,
            &[RMatrix::from_entries(2, 2, &[0, 1, 1, 0]).unwrap(), RMatrix::from_entries(2, 2, &[0, 4, 1, 4]).unwrap()],
        )
        .unwrap();
        let lift = |m: &RMatrix| m.map_entries(|x| a.from_base(x));
        let one = RMatrix::identity(&a, 2);
        let mut sigma_gens = vec![one.clone()];
        sigma_gens.extend(std.generator_images().iter().map(lift));
        let y = RMatrix::from_entries(2, 2, &[0, a.encode(&[0, 1]), 0, 0]).unwrap();
        let phi_gens = vec![one.add(&a, &y), one.clone(), one.clone()];
        let sigma = Representation::from_generators(&g, &a, &sigma_gens).unwrap();
        let phi = Representation::from_generators(&g, &a, &phi_gens).unwrap();
        let q = twisted_quasi_hom(&g, &sigma, &phi).unwrap();
        assert!(!q.is_homomorphism);
        let t = from_quasi_lift(&g, &a, &q.table, 2, DEFAULT_MAX_WORD, DEFAULT_BUDGET).unwrap();
        let r = reflection_check(&t);
        assert!(!r.equivariant, "{r:?}");
        // theta_2(x_1 x_2)(gamma, gamma) = Tr rho(gamma^2) differs from
        // theta_1(x_1 x_1)(gamma) = Tr rho(gamma)^2 off homomorphisms
        assert!(!verify_axioms(&g, &t).passes());
    }

    #[test]
    fn enumerated_lifts_pass() {
        let r = super::super::tests::s3_standard_f5();
        let a = FiniteLocalRing::dual_numbers(5).unwrap();
        let lifts = crate::deformation::enumerate_lifts(&r, &a, DEFAULT_BUDGET).unwrap();
        for l in lifts.iter().step_by(31) {
            let rho = l.representation(r.group(), &a).unwrap();
            let t = from_quasi_lift(r.group(), &a, rho.images(), DEFAULT_MAX_TUPLE, 4, DEFAULT_BUDGET).unwrap();
            assert!(verify_axioms(r.group(), &t).passes());
        }
    }
}
