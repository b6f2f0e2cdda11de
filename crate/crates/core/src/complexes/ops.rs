//! Mapping cones, internal hom and truncations.

use serde::{Deserialize, Serialize};

use crate::algebra::{canonical_basis, canonical_pivots, kernel, ZpeMatrix};

use super::{exact_at, homology, induced_by_matrix, ChainComplex, ChainMap, ComplexError};

/// Mapping cone of `f: C -> D`: `cone_n = D_n + C_{n-1}` with
/// `d(x, c) = (dx + f(c), -dc)`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (c, d) = (f.source(), f.target());
    let ring = c.ring();
    let lo = d.lo().min(c.lo() + 1);
    let hi = d.hi().max(c.hi() + 1);
    let ranks: Vec<usize> = (lo..=hi).map(|n| d.rank(n) + c.rank(n - 1)).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let (dn, dn1) = (d.rank(n), d.rank(n - 1));
            let (cn1, cn2) = (c.rank(n - 1), c.rank(n - 2));
            let mut m = ZpeMatrix::zeros(ring, dn1 + cn2, dn + cn1);
            m.set_block(0, 0, &d.boundary(n));
            m.set_block(0, dn, &f.at(n - 1));
            m.set_block(dn1, dn, &c.boundary(n - 1).neg());
            m
        })
        .collect();
    ChainComplex::new(ring, lo, ranks, diffs).expect("cone of a chain map is a complex")
}

/// One node of the long exact sequence of a cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesNode {
    pub label: String,
    pub exact: bool,
}

/// Check exactness of
/// `H_n(C) -> H_n(D) -> H_n(cone) -> H_{n-1}(C) -> H_{n-1}(D)` at every node.
pub fn cone_les_exact(f: &ChainMap) -> Vec<LesNode> {
    let (c, d) = (f.source(), f.target());
    let k = cone(f);
    let lo = k.lo().min(c.lo()).min(d.lo());
    let hi = k.hi().max(c.hi()).max(d.hi());
    let mut nodes = Vec::new();
    for n in lo..=hi + 1 {
        let (hc, hd, hk) = (homology(c, n), homology(d, n), homology(&k, n));
        let hc1 = homology(c, n - 1);
        let hd1 = homology(d, n - 1);
        let ring = c.ring();
        let (dn, cn1) = (d.rank(n), c.rank(n - 1));
        let mut incl = ZpeMatrix::zeros(ring, dn + cn1, dn);
        incl.set_block(0, 0, &ZpeMatrix::identity(ring, dn));
        let mut proj = ZpeMatrix::zeros(ring, cn1, dn + cn1);
        proj.set_block(0, dn, &ZpeMatrix::identity(ring, cn1));
        let fn_ = induced_by_matrix(&hc, &hd, &f.at(n));
        let i = induced_by_matrix(&hd, &hk, &incl);
        let pi = induced_by_matrix(&hk, &hc1, &proj);
        let fn1 = induced_by_matrix(&hc1, &hd1, &f.at(n - 1));
        nodes.push(LesNode { label: format!("H_{n}(D)"), exact: exact_at(&fn_, &i) });
        nodes.push(LesNode { label: format!("H_{n}(cone)"), exact: exact_at(&i, &pi) });
        nodes.push(LesNode { label: format!("H_{}(C)", n - 1), exact: exact_at(&pi, &fn1) });
    }
    nodes
}

/// The mapping complex `[C, D]_n = prod_m Hom(C_m, D_{m+n})` with
/// `(Df)_m = d_D f_m - (-1)^n f_{m-1} d_C`.
///
/// Basis of `[C, D]_n`: blocks by increasing `m`, each block the entries of
/// a `rank D_{m+n} x rank C_m` matrix in row-major order.
pub fn internal_hom(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex, ComplexError> {
    if c.ring() != d.ring() {
        return Err(ComplexError::RingMismatch);
    }
    let ring = c.ring();
    let lo = d.lo() - c.hi();
    let hi = d.hi() - c.lo();
    // offsets[m - c.lo] of the block Hom(C_m, D_{m+n})
    let offsets = |n: i64| -> (Vec<usize>, usize) {
        let mut off = Vec::new();
        let mut total = 0;
        for m in c.lo()..=c.hi() {
            off.push(total);
            total += c.rank(m) * d.rank(m + n);
        }
        (off, total)
    };
    let ranks: Vec<usize> = (lo..=hi).map(|n| offsets(n).1).collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let (src_off, src_total) = offsets(n);
        let (tgt_off, tgt_total) = offsets(n - 1);
        let mut mat = ZpeMatrix::zeros(ring, tgt_total, src_total);
        let sign = ring.neg(ring.sign(n.rem_euclid(2) as usize));
        for m in c.lo()..=c.hi() {
            let (cm, dmn) = (c.rank(m), d.rank(m + n));
            let bd = d.boundary(m + n);
            let bc = c.boundary(m + 1);
            let dmn1 = d.rank(m + n - 1);
            let cm1 = c.rank(m + 1);
            for i in 0..dmn {
                for j in 0..cm {
                    let col = src_off[(m - c.lo()) as usize] + i * cm + j;
                    // d_D o E_ij lands in Hom(C_m, D_{m+n-1})
                    let base = tgt_off[(m - c.lo()) as usize];
                    for k in 0..dmn1 {
                        let v = bd.get(k, i);
                        if v != 0 {
                            mat.add_at(base + k * cm + j, col, v);
                        }
                    }
                    // -(-1)^n E_ij o d_C lands in Hom(C_{m+1}, D_{m+n})
                    if m < c.hi() {
                        let base = tgt_off[(m + 1 - c.lo()) as usize];
                        for l in 0..cm1 {
                            let v = bc.get(j, l);
                            if v != 0 {
                                mat.add_at(base + i * cm1 + l, col, ring.mul(sign, v));
                            }
                        }
                    }
                }
            }
        }
        diffs.push(mat);
    }
    ChainComplex::new(ring, lo, ranks, diffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Keep degrees `>= 0`, replacing `C_0` by the cycles.
    TauGe0,
    /// Keep degrees `<= 0`, replacing `C_0` by `C_0 / im d_1`.
    TauLe0,
}

/// Good truncation at degree 0. Over `Z/p^e` the new degree-0 module must be
/// free.
pub fn truncate(c: &ChainComplex, mode: Truncation) -> Result<ChainComplex, ComplexError> {
    let ring = c.ring();
    match mode {
        Truncation::TauGe0 => {
            if c.lo() >= 0 {
                return Ok(c.clone());
            }
            if c.hi() < 0 {
                return Ok(ChainComplex::concentrated(ring, 0, 0));
            }
            let z = canonical_basis(&kernel(&c.boundary(0)).gens).map_err(|_| ComplexError::NonFreeTruncation(0))?;
            let piv = canonical_pivots(&z);
            let mut ranks = vec![z.cols()];
            let mut diffs = Vec::new();
            for n in 1..=c.hi() {
                ranks.push(c.rank(n));
                diffs.push(if n == 1 { c.boundary(1).select_rows(&piv) } else { c.boundary(n) });
            }
            ChainComplex::new(ring, 0, ranks, diffs)
        }
        Truncation::TauLe0 => {
            if c.hi() <= 0 {
                return Ok(c.clone());
            }
            if c.lo() > 0 {
                return Ok(ChainComplex::concentrated(ring, 0, 0));
            }
            let b = canonical_basis(&c.boundary(1)).map_err(|_| ComplexError::NonFreeTruncation(0))?;
            let piv = canonical_pivots(&b);
            let keep: Vec<usize> = (0..c.rank(0)).filter(|i| !piv.contains(i)).collect();
            let mut ranks = Vec::new();
            let mut diffs = Vec::new();
            for n in c.lo()..=0 {
                ranks.push(if n == 0 { keep.len() } else { c.rank(n) });
                if n > c.lo() {
                    diffs.push(if n == 0 { c.boundary(0).select_columns(&keep) } else { c.boundary(n) });
                }
            }
            ChainComplex::new(ring, c.lo(), ranks, diffs)
        }
    }
}
