//! The cosimplicial object `Z^n = prod over arrow strings i_0 -> ... -> i_n`
//! of `N`, for `Gamma` viewed as a one-object category, and its
//! totalization.
//!
//! Coface `d^k` covers `i_k`: for `0 < k <= n` it composes the two arrows
//! meeting there, `d^0` drops the first arrow, and `d^{n+1}` drops the last
//! arrow `h` and applies `h` to the value. The string `(h_1, ..., h_n)` is
//! stored at the position of the reversed tuple `(h_n, ..., h_1)` in the
//! inhomogeneous cochain layout, and the totalization uses
//! `sum_k (-1)^{n+1-k} d^k`; with these two choices the totalization is
//! literally the inhomogeneous cochain complex.

use crate::algebra::{AlgebraError, ZpeMatrix};
use crate::complexes::CochainComplex;
use crate::galois::{tuple_count, CochainIndex, FiniteGroup, GModule};

use super::SimplicialError;

/// Matrices of the cofaces `d^0, ..., d^{n+1}: Z^n -> Z^{n+1}`.
pub fn cofaces(group: &FiniteGroup, m: &GModule, n: usize) -> Vec<ZpeMatrix> {
    let ring = m.ring();
    let r = m.rank();
    let g = group.order();
    let idx = CochainIndex { order: g };
    let pos = |string: &[usize]| {
        let rev: Vec<usize> = string.iter().rev().copied().collect();
        idx.encode(&rev)
    };
    let rows = g.pow(n as u32 + 1);
    let cols = g.pow(n as u32);
    (0..=n + 1)
        .map(|k| {
            let mut out = ZpeMatrix::zeros(ring, rows * r, cols * r);
            for row in 0..rows {
                // strings are the reversed tuples
                let mut h = idx.decode(row, n + 1);
                h.reverse();
                let (face, act): (Vec<usize>, Option<usize>) = if k == 0 {
                    (h[1..].to_vec(), None)
                } else if k <= n {
                    let mut f = h[..k - 1].to_vec();
                    f.push(group.mul(h[k], h[k - 1]));
                    f.extend_from_slice(&h[k + 1..]);
                    (f, None)
                } else {
                    (h[..n].to_vec(), Some(h[n]))
                };
                let col = pos(&face);
                match act {
                    None => {
                        for c in 0..r {
                            out.set(row * r + c, col * r + c, 1);
                        }
                    }
                    Some(x) => out.set_block(row * r, col * r, m.action(x)),
                }
            }
            out
        })
        .collect()
}

/// The totalization of the cosimplicial module above, degrees `0..=top`.
pub fn cosimplicial_group_complex(group: &FiniteGroup, m: &GModule, top: usize, budget: u64) -> Result<CochainComplex, SimplicialError> {
    let needed = tuple_count(group.order(), top).saturating_mul(m.rank().max(1) as u128);
    if needed > budget as u128 {
        return Err(AlgebraError::BudgetExceeded { needed, budget }.into());
    }
    let ring = m.ring();
    let ranks: Vec<usize> = (0..=top).map(|n| group.order().pow(n as u32) * m.rank()).collect();
    let diffs = (0..top)
        .map(|n| {
            cofaces(group, m, n).into_iter().enumerate().fold(
                ZpeMatrix::zeros(ring, ranks[n + 1], ranks[n]),
                |acc, (k, d)| {
                    let s = ring.sign(n + 1 - k);
                    acc.add(&d.scale(s))
                },
            )
        })
        .collect();
    Ok(CochainComplex::new(ring, 0, ranks, diffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Zpe, DEFAULT_BUDGET};
    use crate::galois::cochain_complex;

    #[test]
    fn cosimplicial_identities() {
        let g = FiniteGroup::symmetric(3);
        let f = Zpe::field(5).unwrap();
        let m = GModule::from_generators(&g, f, 1, &[ZpeMatrix::from_rows(f, &[vec![4]]).unwrap(), ZpeMatrix::identity(f, 1)]).unwrap();
        for n in 0..2 {
            let d0 = cofaces(&g, &m, n);
            let d1 = cofaces(&g, &m, n + 1);
            for j in 0..=n + 2 {
                for i in 0..j {
                    assert_eq!(d1[j].mul(&d0[i]), d1[i].mul(&d0[j - 1]), "d^{j} d^{i} on level {n}");
                }
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1);
        let m = GModule::trivial(&g, Zpe::field(3).unwrap(), 2);
        let c = cosimplicial_group_complex(&g, &m, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.cohomology(0).dim(), 2);
        assert!((1..4).all(|i| c.cohomology(i).is_zero()));
    }

    #[test]
    fn matches_inhomogeneous_cochains() {
        for (name, g) in FiniteGroup::small_groups().into_iter().filter(|(_, g)| g.order() <= 6) {
            let m = GModule::trivial(&g, Zpe::field(3).unwrap(), 2);
            let a = cosimplicial_group_complex(&g, &m, 3, DEFAULT_BUDGET).unwrap();
            let b = cochain_complex(&g, &m, 3, DEFAULT_BUDGET).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }
}
