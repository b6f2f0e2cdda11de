mod common;

use common::{characters, fixed_points_log, random_matrix, random_module, rng};
use derivlab::algebra::{rank, Zpe, ZpeMatrix, DEFAULT_BUDGET};
use derivlab::galois::{cochain_complex, restriction, FiniteGroup, GModule};
use proptest::prelude::*;
use rand::Rng;

fn groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    FiniteGroup::small_groups().into_iter().filter(|(_, g)| g.order() <= max_order).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h0_is_fixed_points_and_rank_nullity(idx in 0usize..32, p in prop_oneof![Just(3u32), Just(5)], seed in any::<u64>()) {
        let gs = groups(8);
        let (name, g) = &gs[idx % gs.len()];
        let ring = Zpe::field(p).unwrap();
        let m = random_module(g, ring, &mut rng(seed));
        let c = cochain_complex(g, &m, 2, DEFAULT_BUDGET).unwrap();
        let (h0, h1) = (c.cohomology(0).dim(), c.cohomology(1).dim());
        prop_assert_eq!(h0 as u32, fixed_points_log(g, &m), "{}", name);
        // Z^1 = ker d^1, of dimension dim H^1 + dim B^1 = dim H^1 + rank M - dim H^0
        let z1 = c.rank(1) - rank(&c.differential(1));
        prop_assert_eq!(z1, h1 + m.rank() - h0, "{}", name);
    }

    #[test]
    fn coprime_order_has_no_higher_cohomology(idx in 0usize..32, p in prop_oneof![Just(3u32), Just(5)], seed in any::<u64>()) {
        let gs: Vec<_> = groups(12).into_iter().filter(|(_, g)| g.order() % p as usize != 0).collect();
        let (name, g) = &gs[idx % gs.len()];
        let m = random_module(g, Zpe::field(p).unwrap(), &mut rng(seed));
        let c = cochain_complex(g, &m, 3, DEFAULT_BUDGET).unwrap();
        for i in 1..3 {
            prop_assert!(c.cohomology(i).is_zero(), "{} H^{}", name, i);
        }
    }

    #[test]
    fn restriction_is_transitive(idx in 0usize..32, p in prop_oneof![Just(3u32), Just(5)], i in 0usize..=2, seed in any::<u64>()) {
        let gs = groups(8);
        let (_, g) = &gs[idx % gs.len()];
        let mut r = rng(seed);
        let ring = Zpe::field(p).unwrap();
        let m = random_module(g, ring, &mut r);
        // K = <x> inside H = <x, y> inside G
        let x = r.gen_range(0..g.order());
        let y = r.gen_range(0..g.order());
        let h = g.subgroup(&[x, y]).unwrap();
        let k = g.subgroup(&[x]).unwrap();
        let k_in_h = h.group.subgroup(&[h.position(x).unwrap()]).unwrap();
        let direct = restriction(g, &k, &m, i, DEFAULT_BUDGET).unwrap();
        let first = restriction(g, &h, &m, i, DEFAULT_BUDGET).unwrap();
        let second = restriction(&h.group, &k_in_h, &m.restrict(&h), i, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(first.then(&second).matrix, direct.matrix);
    }

    #[test]
    fn actions_must_respect_relations(n in 2usize..=6, p in prop_oneof![Just(3u32), Just(5)], seed in any::<u64>()) {
        let g = FiniteGroup::cyclic(n);
        let ring = Zpe::field(p).unwrap();
        let mut r = rng(seed);
        let a = if r.gen_bool(0.5) {
            random_matrix(ring, 2, 2, &mut r)
        } else {
            // a permutation matrix, which often satisfies the relation
            ZpeMatrix::from_rows(ring, &[vec![0, 1], vec![1, 0]]).unwrap()
        };
        let mut pow = ZpeMatrix::identity(ring, 2);
        for _ in 0..n {
            pow = pow.mul(&a);
        }
        let ok = pow == ZpeMatrix::identity(ring, 2);
        prop_assert_eq!(GModule::from_generators(&g, ring, 2, &[a]).is_ok(), ok);
    }
}

#[test]
fn characters_are_multiplicative_units() {
    for (_, g) in groups(12) {
        for ring in [Zpe::field(3).unwrap(), Zpe::field(5).unwrap(), Zpe::new(3, 2).unwrap()] {
            for chi in characters(&g, ring) {
                for x in 0..g.order() {
                    assert!(ring.is_unit(chi.value(x)));
                    for y in 0..g.order() {
                        assert_eq!(chi.value(g.mul(x, y)), ring.mul(chi.value(x), chi.value(y)));
                    }
                }
            }
        }
    }
}

#[test]
fn cyclic_groups_have_one_dimensional_cohomology() {
    for p in [3u32, 5] {
        let g = FiniteGroup::cyclic(p as usize);
        let c = cochain_complex(&g, &GModule::trivial(&g, Zpe::field(p).unwrap(), 1), 4, DEFAULT_BUDGET).unwrap();
        assert!((0..4).all(|i| c.cohomology(i).dim() == 1));
    }
}
