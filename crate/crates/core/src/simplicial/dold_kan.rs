//! The normalized (Moore) complex, the Dold-Kan functor and homotopy groups.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{canonical_basis, canonical_pivots, kernel, ZpeMatrix};
use crate::complexes::{homology, ChainComplex, Homology};
use crate::par;

use super::delta::{codegeneracy, coface, compose, epi_mono, surjections, target};
use super::{SimplicialError, SimplicialModule};

/// `N(M)` together with the bases used for it: column `k` of `bases[n]` is
/// the `k`th basis vector of `N_n` inside `M_n`, and `pivots[n][k]` is the
/// coordinate where it is 1 and every other basis vector vanishes.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub complex: ChainComplex,
    pub bases: Vec<ZpeMatrix>,
    pub pivots: Vec<Vec<usize>>,
}

impl Normalization {
    /// Coordinates in `N_n` of a vector of `M_n` known to lie in `N_n`.
    pub fn coords(&self, n: usize, v: &[u32]) -> Vec<u32> {
        self.pivots[n].iter().map(|&i| v[i]).collect()
    }

    /// The vector of `M_n` with the given `N_n` coordinates.
    pub fn lift(&self, n: usize, coords: &[u32]) -> Vec<u32> {
        self.bases[n].mul_vec(coords)
    }
}

/// `N_n = intersection of ker d_i for i < n`, with differential
/// `(-1)^n d_n`. Each `N_n` is given its canonical basis.
pub fn normalize(m: &SimplicialModule) -> Result<Normalization, SimplicialError> {
    let ring = m.ring();
    let level = m.level();
    let mut bases = Vec::with_capacity(level + 1);
    let mut pivots = Vec::with_capacity(level + 1);
    for n in 0..=level {
        let basis = if n == 0 {
            ZpeMatrix::identity(ring, m.rank(0))
        } else {
            let mut stacked = m.face(n, 0).clone();
            for i in 1..n {
                stacked = stacked.vstack(m.face(n, i));
            }
            canonical_basis(&kernel(&stacked).gens)?
        };
        pivots.push(canonical_pivots(&basis));
        bases.push(basis);
    }
    let mut diffs = Vec::with_capacity(level);
    for n in 1..=level {
        let image = m.face(n, n).mul(&bases[n]);
        let s = ring.sign(n);
        let d = ZpeMatrix::from_fn(ring, bases[n - 1].cols(), bases[n].cols(), |k, j| {
            ring.mul(s, image.get(pivots[n - 1][k], j))
        });
        diffs.push(d);
    }
    let ranks = bases.iter().map(|b| b.cols()).collect();
    let complex = ChainComplex::new(ring, 0, ranks, diffs)?;
    Ok(Normalization { complex, bases, pivots })
}

/// The normalized chain complex in degrees `0..=L`.
pub fn normalized(m: &SimplicialModule) -> Result<ChainComplex, SimplicialError> {
    Ok(normalize(m)?.complex)
}

/// Component layout of `DK(C)_n`: one block `C_k` per surjection
/// `[n] ->> [k]`, in the order of [`surjections`].
pub(crate) struct DkLayout {
    pub comps: Vec<Vec<Vec<usize>>>,
    pub offsets: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl DkLayout {
    pub fn new(c: &ChainComplex, level: usize) -> Self {
        let mut comps = Vec::new();
        let mut offsets = Vec::new();
        let mut ranks = Vec::new();
        let mut lookup = Vec::new();
        for n in 0..=level {
            let s = surjections(n);
            let mut off = Vec::with_capacity(s.len());
            let mut total = 0;
            for sigma in &s {
                off.push(total);
                total += c.rank(target(sigma) as i64);
            }
            lookup.push(s.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect());
            comps.push(s);
            offsets.push(off);
            ranks.push(total);
        }
        DkLayout { comps, offsets, ranks, lookup }
    }

    /// Matrix of `theta^*: DK_n -> DK_m` for monotone `theta: [m] -> [n]`.
    /// On the block of `sigma`, factor `sigma o theta = d o t` and apply
    /// `C(d)` into the block of `t`, where `C(id) = id`,
    /// `C(delta^k) = (-1)^k d_k` for the coface missing the top `k`, and
    /// every other injection acts by zero.
    pub fn structure_map(&self, c: &ChainComplex, theta: &[usize], m: usize, n: usize) -> ZpeMatrix {
        let ring = c.ring();
        let mut out = ZpeMatrix::zeros(ring, self.ranks[m], self.ranks[n]);
        for (si, sigma) in self.comps[n].iter().enumerate() {
            let k = target(sigma);
            let rk = c.rank(k as i64);
            if rk == 0 {
                continue;
            }
            let (t, d) = epi_mono(&compose(sigma, theta));
            let s = target(&t);
            let row = self.offsets[m][self.lookup[m][&t]];
            let col = self.offsets[n][si];
            if s == k {
                out.set_block(row, col, &ZpeMatrix::identity(ring, rk));
            } else if s + 1 == k && d.iter().enumerate().all(|(a, &b)| a == b) {
                let mut bd = c.boundary(k as i64);
                if k % 2 == 1 {
                    bd = bd.neg();
                }
                out.set_block(row, col, &bd);
            }
        }
        out
    }
}

/// `DK(C)` truncated at level `L`; `C` must vanish in negative degrees.
pub fn dk(c: &ChainComplex, level: usize) -> Result<SimplicialModule, SimplicialError> {
    if let Some(n) = (c.lo()..0).find(|&n| c.rank(n) > 0) {
        return Err(SimplicialError::NegativeDegree(n));
    }
    let layout = DkLayout::new(c, level);
    let jobs: Vec<(usize, usize, bool)> = (0..=level)
        .flat_map(|n| {
            let faces = (0..=n).filter(move |_| n > 0).map(move |i| (n, i, true));
            let degens = (0..=n).filter(move |_| n < level).map(move |i| (n, i, false));
            faces.chain(degens)
        })
        .collect();
    let mats = par::map(&jobs, |&(n, i, is_face)| {
        if is_face {
            layout.structure_map(c, &coface(n, i), n - 1, n)
        } else {
            layout.structure_map(c, &codegeneracy(n, i), n + 1, n)
        }
    });
    let mut faces: Vec<Vec<ZpeMatrix>> = vec![Vec::new(); level + 1];
    let mut degens: Vec<Vec<ZpeMatrix>> = vec![Vec::new(); level];
    for (&(n, _, is_face), m) in jobs.iter().zip(mats) {
        if is_face {
            faces[n].push(m);
        } else {
            degens[n].push(m);
        }
    }
    SimplicialModule::new(c.ring(), layout.ranks, faces, degens)
}

/// `pi_n` of a simplicial module, computed as `H_n` of the normalized
/// complex.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyGroup {
    pub degree: usize,
    /// `p`-exponents of the cyclic summands.
    pub orders: Vec<u32>,
    /// False in the top level, where the truncation hides `N_{L+1}`.
    pub reliable: bool,
    #[serde(skip)]
    pub homology: Homology,
}

pub fn homotopy_groups(m: &SimplicialModule) -> Result<Vec<HomotopyGroup>, SimplicialError> {
    let norm = normalize(m)?;
    Ok(groups_of(&norm, m.level()))
}

pub(crate) fn groups_of(norm: &Normalization, level: usize) -> Vec<HomotopyGroup> {
    (0..=level)
        .map(|n| {
            let h = homology(&norm.complex, n as i64);
            HomotopyGroup { degree: n, orders: h.orders().to_vec(), reliable: n < level, homology: h }
        })
        .collect()
}
