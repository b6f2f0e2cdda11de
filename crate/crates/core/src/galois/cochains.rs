//! Inhomogeneous cochains `C^n(Gamma, M) = Maps(Gamma^n, M)`.
//!
//! Coordinates: the cochain value at `(g_1, ..., g_n)` in component `c`
//! sits at `t * rank + c`, where `t = sum g_k |Gamma|^{n-k}` (so `g_1` is
//! the most significant digit). The differential is
//!
//! `(d f)(g_1..g_{n+1}) = g_1 f(g_2..g_{n+1})
//!     + sum_{i=1}^{n} (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n)`.

use crate::algebra::{AlgebraError, ZpeMatrix};
use crate::complexes::{CochainComplex, CochainMap, HomologyMap};
use crate::par;

use super::{FiniteGroup, GModule, GaloisError, Subgroup};

/// `|Gamma|^n`, saturating.
pub fn tuple_count(order: usize, n: usize) -> u128 {
    (order as u128).saturating_pow(n as u32)
}

/// Encoding of tuples of group elements.
#[derive(Clone, Copy, Debug)]
pub struct CochainIndex {
    pub order: usize,
}

impl CochainIndex {
    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    pub fn decode(&self, mut t: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = t % self.order;
            t /= self.order;
        }
        out
    }
}

fn check_size(group: &FiniteGroup, rank: usize, top: usize, budget: u64) -> Result<(), AlgebraError> {
    let needed = tuple_count(group.order(), top).saturating_mul(rank.max(1) as u128);
    if needed > budget as u128 {
        return Err(AlgebraError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// The matrix of `d: C^n -> C^{n+1}`.
pub(crate) fn differential(group: &FiniteGroup, m: &GModule, n: usize) -> ZpeMatrix {
    let ring = m.ring();
    let r = m.rank();
    let g = group.order();
    let idx = CochainIndex { order: g };
    let rows = g.pow(n as u32 + 1) * r;
    let cols = g.pow(n as u32) * r;
    let mut out = ZpeMatrix::zeros(ring, rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    par::for_each_chunk_mut_indexed(out.data_mut(), r * cols, |t, block| {
        let tuple = idx.decode(t, n + 1);
        let mut add = |col_tuple: usize, comp_row: usize, comp_col: usize, v: u32| {
            let slot = &mut block[comp_row * cols + col_tuple * r + comp_col];
            *slot = ring.add(*slot, v);
        };
        // g_1 f(g_2 .. g_{n+1})
        let a = m.action(tuple[0]);
        let rest = idx.encode(&tuple[1..]);
        for i in 0..r {
            for j in 0..r {
                let v = a.get(i, j);
                if v != 0 {
                    add(rest, i, j, v);
                }
            }
        }
        let mut merged = Vec::with_capacity(n);
        for i in 1..=n {
            merged.clear();
            merged.extend_from_slice(&tuple[..i - 1]);
            merged.push(group.mul(tuple[i - 1], tuple[i]));
            merged.extend_from_slice(&tuple[i + 1..]);
            let col = idx.encode(&merged);
            let s = ring.sign(i);
            for c in 0..r {
                add(col, c, c, s);
            }
        }
        let last = idx.encode(&tuple[..n]);
        let s = ring.sign(n + 1);
        for c in 0..r {
            add(last, c, c, s);
        }
    });
    out
}

/// `C^0 -> ... -> C^top` for `Gamma` acting on `M`. Cohomology is correct
/// in degrees below `top`.
pub fn cochain_complex(group: &FiniteGroup, m: &GModule, top: usize, budget: u64) -> Result<CochainComplex, GaloisError> {
    check_size(group, m.rank(), top, budget)?;
    let ranks: Vec<usize> = (0..=top).map(|n| group.order().pow(n as u32) * m.rank()).collect();
    let diffs = (0..top).map(|n| differential(group, m, n)).collect();
    Ok(CochainComplex::new(m.ring(), 0, ranks, diffs)?)
}

/// Restriction of cochains from `Gamma` to a subgroup, degrees `0..=top`.
pub fn restriction_map(
    group: &FiniteGroup,
    sub: &Subgroup,
    m: &GModule,
    top: usize,
    budget: u64,
) -> Result<CochainMap, GaloisError> {
    let source = cochain_complex(group, m, top, budget)?;
    let target = cochain_complex(&sub.group, &m.restrict(sub), top, budget)?;
    let r = m.rank();
    let big = CochainIndex { order: group.order() };
    let small = CochainIndex { order: sub.order() };
    let maps = (0..=top)
        .map(|n| {
            let mut mat = ZpeMatrix::zeros(m.ring(), target.rank(n as i64), source.rank(n as i64));
            for t in 0..sub.order().pow(n as u32) {
                let tuple: Vec<usize> = small.decode(t, n).into_iter().map(|h| sub.elements[h]).collect();
                let col = big.encode(&tuple);
                for c in 0..r {
                    mat.set(t * r + c, col * r + c, 1);
                }
            }
            mat
        })
        .collect();
    Ok(CochainMap::new(source, target, maps)?)
}

/// `res: H^i(Gamma, M) -> H^i(Gamma_v, M)`.
pub fn restriction(group: &FiniteGroup, sub: &Subgroup, m: &GModule, i: usize, budget: u64) -> Result<HomologyMap, GaloisError> {
    Ok(restriction_map(group, sub, m, i + 1, budget)?.induced(i as i64))
}
