//! Level-truncated simplicial rings and their graded homotopy rings.

use serde::{Deserialize, Serialize};

use crate::algebra::{canonical_basis, canonical_pivots, FiniteLocalRing, ZpeMatrix};
use crate::complexes::ChainComplex;

use super::delta::shuffles;
use super::dold_kan::{dk, groups_of, normalize, HomotopyGroup, Normalization};
use super::{SimplicialError, SimplicialModule};

/// A finite local ring at each level, with faces and degeneracies given as
/// `Z/p^e`-matrices on coordinates that are unital ring maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct SimplicialRing {
    levels: Vec<FiniteLocalRing>,
    additive: SimplicialModule,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RingRepr {
    levels: Vec<FiniteLocalRing>,
    faces: Vec<Vec<ZpeMatrix>>,
    degeneracies: Vec<Vec<ZpeMatrix>>,
}

impl TryFrom<RingRepr> for SimplicialRing {
    type Error = SimplicialError;
    fn try_from(r: RingRepr) -> Result<Self, Self::Error> {
        SimplicialRing::new(r.levels, r.faces, r.degeneracies)
    }
}

impl From<SimplicialRing> for RingRepr {
    fn from(r: SimplicialRing) -> Self {
        let m = &r.additive;
        let level = m.level();
        RingRepr {
            faces: (0..=level).map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| m.face(n, i).clone()).collect()).collect(),
            degeneracies: (0..level).map(|n| (0..=n).map(|i| m.degeneracy(n, i).clone()).collect()).collect(),
            levels: r.levels,
        }
    }
}

impl SimplicialRing {
    pub fn new(levels: Vec<FiniteLocalRing>, faces: Vec<Vec<ZpeMatrix>>, degens: Vec<Vec<ZpeMatrix>>) -> Result<Self, SimplicialError> {
        let base = levels.first().ok_or_else(|| SimplicialError::Shape("no levels".into()))?.base();
        if levels.iter().any(|r| r.base() != base) {
            return Err(SimplicialError::Shape("all levels must share the coefficient ring".into()));
        }
        let ranks = levels.iter().map(|r| r.rank()).collect();
        let additive = SimplicialModule::new(base, ranks, faces, degens)?;
        let out = SimplicialRing { levels, additive };
        out.check_ring_maps()?;
        Ok(out)
    }

    /// The constant simplicial ring on `A`.
    pub fn constant(a: &FiniteLocalRing, level: usize) -> Self {
        SimplicialRing { levels: vec![a.clone(); level + 1], additive: SimplicialModule::constant(a.base(), a.rank(), level) }
    }

    pub fn level(&self) -> usize {
        self.additive.level()
    }
    pub fn ring_at(&self, n: usize) -> &FiniteLocalRing {
        &self.levels[n]
    }
    /// The underlying simplicial module.
    pub fn additive(&self) -> &SimplicialModule {
        &self.additive
    }

    fn check_ring_maps(&self) -> Result<(), SimplicialError> {
        let level = self.level();
        let check = |f: &ZpeMatrix, src: &FiniteLocalRing, dst: &FiniteLocalRing, what: String| {
            let one_src = src.coords(src.one());
            if f.mul_vec(&one_src) != dst.coords(dst.one()) {
                return Err(SimplicialError::NotRingMap(format!("{what} is not unital")));
            }
            let d = src.rank();
            let images: Vec<Vec<u32>> = (0..d).map(|i| f.column(i)).collect();
            for i in 0..d {
                for j in i..d {
                    let prod = src.mul_coords(&src.basis_vector(i), &src.basis_vector(j));
                    if f.mul_vec(&prod) != dst.mul_coords(&images[i], &images[j]) {
                        return Err(SimplicialError::NotRingMap(format!("{what} is not multiplicative on ({i}, {j})")));
                    }
                }
            }
            Ok(())
        };
        for n in 1..=level {
            for i in 0..=n {
                check(self.additive.face(n, i), &self.levels[n], &self.levels[n - 1], format!("d_{i} on level {n}"))?;
            }
        }
        for n in 0..level {
            for i in 0..=n {
                check(self.additive.degeneracy(n, i), &self.levels[n], &self.levels[n + 1], format!("s_{i} on level {n}"))?;
            }
        }
        Ok(())
    }

    /// Shuffle product of `x in A_p` and `y in A_q`:
    /// `sum over (p,q)-shuffles (mu, nu) of sign(mu, nu) (s_nu x)(s_mu y)`,
    /// where `s_nu = s_{nu_q} ... s_{nu_1}` and likewise for `mu`.
    pub fn shuffle_product(&self, p: usize, x: &[u32], q: usize, y: &[u32]) -> Vec<u32> {
        let n = p + q;
        assert!(n <= self.level(), "product lands above the truncation");
        let ring = &self.levels[n];
        let base = ring.base();
        let mut out = vec![0; ring.rank()];
        for (mu, nu, negative) in shuffles(p, q) {
            let xs = self.degenerate(p, x, &nu);
            let ys = self.degenerate(q, y, &mu);
            let prod = ring.mul_coords(&xs, &ys);
            for (o, v) in out.iter_mut().zip(prod) {
                *o = if negative { base.sub(*o, v) } else { base.add(*o, v) };
            }
        }
        out
    }

    /// Apply `s_{idx[0]}` first, then `s_{idx[1]}`, and so on.
    fn degenerate(&self, mut level: usize, v: &[u32], idx: &[usize]) -> Vec<u32> {
        let mut cur = v.to_vec();
        for &i in idx {
            cur = self.additive.degeneracy(level, i).mul_vec(&cur);
            level += 1;
        }
        cur
    }
}

/// `T + DK(M[j])` levelwise, with `(t, m)(t', m') = (tt', tm' + t'm)`.
/// `action[i]` is the matrix of the `i`th basis element of `T` on `M`.
pub fn square_zero_extension(
    t: &FiniteLocalRing,
    action: &[ZpeMatrix],
    j: usize,
    level: usize,
) -> Result<SimplicialRing, SimplicialError> {
    if j >= level {
        return Err(SimplicialError::LevelTooLow { need: j + 1, level });
    }
    let base = t.base();
    let r = action.first().map_or(0, |a| a.rows());
    let m = dk(&ChainComplex::concentrated(base, j as i64, r), level)?;
    let dt = t.rank();
    let mut levels = Vec::with_capacity(level + 1);
    for n in 0..=level {
        let copies = if r == 0 { 0 } else { m.rank(n) / r };
        let act: Vec<ZpeMatrix> = action
            .iter()
            .map(|a| (0..copies).fold(ZpeMatrix::zeros(base, 0, 0), |acc, _| acc.block_diag(a)))
            .collect();
        levels.push(FiniteLocalRing::trivial_extension(t, &act)?);
    }
    let extend = |f: &ZpeMatrix| ZpeMatrix::identity(base, dt).block_diag(f);
    let faces = (0..=level)
        .map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| extend(m.face(n, i))).collect())
        .collect();
    let degens = (0..level).map(|n| (0..=n).map(|i| extend(m.degeneracy(n, i))).collect()).collect();
    SimplicialRing::new(levels, faces, degens)
}

/// `pi_*` of a simplicial ring with products induced by the shuffle
/// product on normalized representatives.
#[derive(Clone, Debug)]
pub struct GradedHomotopyRing {
    /// `pi_0 = A_0 / d_1(N_1)` as a ring.
    pub pi0: FiniteLocalRing,
    pub groups: Vec<HomotopyGroup>,
    ring: SimplicialRing,
    norm: Normalization,
    /// Presentation of `pi0`: pivots of the relation basis and the kept
    /// coordinates of `A_0`.
    quotient: Option<(ZpeMatrix, Vec<usize>, Vec<usize>)>,
}

pub fn homotopy_ring(a: &SimplicialRing) -> Result<GradedHomotopyRing, SimplicialError> {
    if a.level() < 2 {
        return Err(SimplicialError::LevelTooLow { need: 2, level: a.level() });
    }
    let norm = normalize(a.additive())?;
    let groups = groups_of(&norm, a.level());
    let a0 = a.ring_at(0);
    let base = a0.base();
    let rel = norm.complex.boundary(1);
    let (pi0, quotient) = if rel.is_zero() {
        (a0.clone(), None)
    } else {
        let b = canonical_basis(&rel)?;
        let piv = canonical_pivots(&b);
        let keep: Vec<usize> = (0..a0.rank()).filter(|i| !piv.contains(i)).collect();
        let reduce = |v: &[u32]| -> Vec<u32> {
            let mut v = v.to_vec();
            for (k, &pk) in piv.iter().enumerate() {
                let c = v[pk];
                if c != 0 {
                    for (x, &bx) in v.iter_mut().zip(b.column(k).iter()) {
                        *x = base.sub(*x, base.mul(c, bx));
                    }
                }
            }
            keep.iter().map(|&i| v[i]).collect()
        };
        let d = keep.len();
        let mut consts = vec![0; d * d * d];
        for (u, &ku) in keep.iter().enumerate() {
            for (v, &kv) in keep.iter().enumerate() {
                let prod = reduce(&a0.mul_coords(&a0.basis_vector(ku), &a0.basis_vector(kv)));
                consts[(u * d + v) * d..(u * d + v + 1) * d].copy_from_slice(&prod);
            }
        }
        let one = reduce(&a0.coords(a0.one()));
        let ring = FiniteLocalRing::from_parts(base, d, consts, one)?;
        (ring, Some((b, piv, keep)))
    };
    Ok(GradedHomotopyRing { pi0, groups, ring: a.clone(), norm, quotient })
}

impl GradedHomotopyRing {
    pub fn level(&self) -> usize {
        self.ring.level()
    }

    /// Whether `pi_n` is determined by the truncation.
    pub fn is_reliable(&self, n: usize) -> bool {
        n < self.level()
    }

    /// Product of classes given by homology coordinates; `None` when
    /// `i + j` is above the truncation.
    pub fn product(&self, i: usize, x: &[u32], j: usize, y: &[u32]) -> Option<Vec<u32>> {
        if i + j > self.level() {
            return None;
        }
        let xr = self.norm.lift(i, &self.groups[i].homology.generators().mul_vec(x));
        let yr = self.norm.lift(j, &self.groups[j].homology.generators().mul_vec(y));
        let z = self.ring.shuffle_product(i, &xr, j, &yr);
        debug_assert!((0..i + j).all(|k| self.ring.additive().face(i + j, k).mul_vec(&z).iter().all(|&c| c == 0)));
        let zn = self.norm.coords(i + j, &z);
        Some(self.groups[i + j].homology.coords(&zn))
    }

    /// `table[a][b]` = product of generator `a` of `pi_i` and generator `b`
    /// of `pi_j`.
    pub fn product_table(&self, i: usize, j: usize) -> Option<Vec<Vec<Vec<u32>>>> {
        let (di, dj) = (self.groups[i].orders.len(), self.groups[j].orders.len());
        let unit = |n: usize, k: usize| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        };
        (0..di).map(|a| (0..dj).map(|b| self.product(i, &unit(di, a), j, &unit(dj, b))).collect()).collect()
    }

    /// Homology coordinates in `pi_0` of an element of `A_0`.
    pub fn pi0_class(&self, coords: &[u32]) -> Vec<u32> {
        self.groups[0].homology.coords(coords)
    }

    /// Coordinates in the ring `pi0` of an element of `A_0`.
    pub fn pi0_element(&self, coords: &[u32]) -> Vec<u32> {
        match &self.quotient {
            None => coords.to_vec(),
            Some((b, piv, keep)) => {
                let base = self.pi0.base();
                let mut v = coords.to_vec();
                for (k, &pk) in piv.iter().enumerate() {
                    let c = v[pk];
                    for (x, &bx) in v.iter_mut().zip(b.column(k).iter()) {
                        *x = base.sub(*x, base.mul(c, bx));
                    }
                }
                keep.iter().map(|&i| v[i]).collect()
            }
        }
    }

    /// Matrix of multiplication by `t in A_0` on `pi_j`, in the generator
    /// coordinates of `pi_j`.
    pub fn pi0_action(&self, t: &[u32], j: usize) -> ZpeMatrix {
        let tc = self.pi0_class(t);
        let dj = self.groups[j].orders.len();
        let cols: Vec<Vec<u32>> = (0..dj)
            .map(|b| {
                let mut e = vec![0; dj];
                e[b] = 1;
                self.product(0, &tc, j, &e).expect("degree j is inside the truncation")
            })
            .collect();
        ZpeMatrix::from_columns(self.pi0.base(), dj, &cols)
    }

    /// `a b = (-1)^{ij} b a` for all generator pairs of `pi_i` and `pi_j`.
    pub fn is_graded_commutative(&self, i: usize, j: usize) -> bool {
        let (Some(ab), Some(ba)) = (self.product_table(i, j), self.product_table(j, i)) else {
            return true;
        };
        let base = self.pi0.base();
        let orders = &self.groups[i + j].orders;
        let negate = (i * j) % 2 == 1;
        ab.iter().enumerate().all(|(a, row)| {
            row.iter().enumerate().all(|(b, x)| {
                let y = &ba[b][a];
                x.iter().zip(y).zip(orders).all(|((&u, &v), &o)| {
                    let m = base.p_pow(o.min(base.e()));
                    let m = if m == 0 { base.q() } else { m };
                    let v = if negate { base.neg(v) } else { v };
                    u % m == v % m
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Zpe;

    fn f3() -> FiniteLocalRing {
        FiniteLocalRing::prime_field(3).unwrap()
    }

    #[test]
    fn constant_ring() {
        let a = FiniteLocalRing::dual_numbers(3).unwrap();
        let s = SimplicialRing::constant(&a, 3);
        let h = homotopy_ring(&s).unwrap();
        assert_eq!(h.pi0, a);
        assert!(h.groups[1..].iter().all(|g| g.orders.is_empty()));
    }

    #[test]
    fn square_zero_degree_zero_is_constant() {
        let t = f3();
        let act = vec![ZpeMatrix::identity(t.base(), 1)];
        let s = square_zero_extension(&t, &act, 0, 2).unwrap();
        let d = FiniteLocalRing::dual_numbers(3).unwrap();
        assert_eq!(s, SimplicialRing::constant(&d, 2));
    }

    #[test]
    fn square_zero_homotopy() {
        let t = FiniteLocalRing::dual_numbers(3).unwrap();
        let f = Zpe::field(3).unwrap();
        // M = T as a module over itself
        let act = vec![ZpeMatrix::identity(f, 2), ZpeMatrix::from_rows(f, &[vec![0, 0], vec![1, 0]]).unwrap()];
        for j in 1..=2 {
            let s = square_zero_extension(&t, &act, j, j + 2).unwrap();
            let h = homotopy_ring(&s).unwrap();
            assert_eq!(h.pi0, t);
            for n in 1..=j + 1 {
                let expect: Vec<u32> = if n == j { vec![1, 1] } else { vec![] };
                assert_eq!(h.groups[n].orders, expect, "pi_{n}, j = {j}");
            }
            for (i, a) in act.iter().enumerate() {
                let basis = t.basis_vector(i);
                assert_eq!(&h.pi0_action(&basis, j), a);
            }
            assert!(h.is_graded_commutative(0, j));
            if 2 * j <= s.level() {
                assert!(h.product_table(j, j).unwrap().iter().flatten().all(|v| v.iter().all(|&x| x == 0)));
            }
        }
    }

    #[test]
    fn level_checks() {
        let t = f3();
        let act = vec![ZpeMatrix::identity(t.base(), 1)];
        assert_eq!(
            square_zero_extension(&t, &act, 2, 2).unwrap_err(),
            SimplicialError::LevelTooLow { need: 3, level: 2 }
        );
    }
}
