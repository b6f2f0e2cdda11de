//! Cup products of inhomogeneous cochains through an equivariant pairing.

use crate::algebra::{Zpe, ZpeMatrix};

use super::{cochain_complex, CochainIndex, FiniteGroup, GModule, GaloisError};

/// A bilinear map `M x N -> P`; `tensor[(a * rank N + b) * rank P + c]` is
/// the `c`th coordinate of the pairing of basis vectors `a` and `b`.
#[derive(Clone, Debug)]
pub struct Pairing {
    left: GModule,
    right: GModule,
    target: GModule,
    tensor: Vec<u32>,
}

impl Pairing {
    /// Checks `<g x, g y> = g <x, y>` on basis vectors for every element.
    pub fn new(group: &FiniteGroup, left: GModule, right: GModule, target: GModule, tensor: Vec<u32>) -> Result<Self, GaloisError> {
        let (rm, rn, rp) = (left.rank(), right.rank(), target.rank());
        if tensor.len() != rm * rn * rp || left.ring() != right.ring() || left.ring() != target.ring() {
            return Err(GaloisError::Shape("pairing tensor does not match the modules".into()));
        }
        let pairing = Pairing { left, right, target, tensor };
        for g in 0..group.order() {
            for a in 0..rm {
                for b in 0..rn {
                    let ga = pairing.left.action(g).column(a);
                    let gb = pairing.right.action(g).column(b);
                    let lhs = pairing.apply(&ga, &gb);
                    let mut e = vec![0; rp];
                    for (c, slot) in e.iter_mut().enumerate() {
                        *slot = pairing.tensor[(a * rn + b) * rp + c];
                    }
                    let rhs = pairing.target.action(g).mul_vec(&e);
                    if lhs != rhs {
                        return Err(GaloisError::PairingNotEquivariant(g));
                    }
                }
            }
        }
        Ok(pairing)
    }

    /// `Z/p^e x N -> N`, scalar multiplication.
    pub fn scalar(group: &FiniteGroup, n: &GModule) -> Self {
        let r = n.rank();
        let mut tensor = vec![0; r * r];
        for b in 0..r {
            tensor[b * r + b] = 1;
        }
        Pairing::new(group, GModule::trivial(group, n.ring(), 1), n.clone(), n.clone(), tensor).expect("scalar pairing")
    }

    pub fn ring(&self) -> Zpe {
        self.target.ring()
    }
    pub fn left(&self) -> &GModule {
        &self.left
    }
    pub fn right(&self) -> &GModule {
        &self.right
    }
    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn apply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let ring = self.ring();
        let (rn, rp) = (self.right.rank(), self.target.rank());
        let mut out = vec![0; rp];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let s = ring.mul(xa, yb);
                for (c, o) in out.iter_mut().enumerate() {
                    let t = self.tensor[(a * rn + b) * rp + c];
                    if t != 0 {
                        *o = ring.add(*o, ring.mul(s, t));
                    }
                }
            }
        }
        out
    }

    /// The pairing with the factors swapped, `N x M -> P`.
    pub fn swapped(&self) -> Pairing {
        let (rm, rn, rp) = (self.left.rank(), self.right.rank(), self.target.rank());
        let mut tensor = vec![0; rm * rn * rp];
        for a in 0..rm {
            for b in 0..rn {
                for c in 0..rp {
                    tensor[(b * rm + a) * rp + c] = self.tensor[(a * rn + b) * rp + c];
                }
            }
        }
        Pairing { left: self.right.clone(), right: self.left.clone(), target: self.target.clone(), tensor }
    }
}

/// `(a u b)(g_1..g_{i+j}) = <a(g_1..g_i), (g_1...g_i) b(g_{i+1}..g_{i+j})>`.
pub fn cup_cochains(group: &FiniteGroup, pairing: &Pairing, i: usize, alpha: &[u32], j: usize, beta: &[u32]) -> Vec<u32> {
    let idx = CochainIndex { order: group.order() };
    let (rm, rn, rp) = (pairing.left.rank(), pairing.right.rank(), pairing.target.rank());
    let total = group.order().pow((i + j) as u32);
    let mut out = vec![0; total * rp];
    for t in 0..total {
        let tuple = idx.decode(t, i + j);
        let a = idx.encode(&tuple[..i]);
        let b = idx.encode(&tuple[i..]);
        let h = tuple[..i].iter().fold(group.identity(), |acc, &g| group.mul(acc, g));
        let x = &alpha[a * rm..(a + 1) * rm];
        let y = pairing.right.action(h).mul_vec(&beta[b * rn..(b + 1) * rn]);
        out[t * rp..(t + 1) * rp].copy_from_slice(&pairing.apply(x, &y));
    }
    out
}

/// Cup product of cohomology classes given by their coordinates in the
/// presentations of `H^i(Gamma, M)` and `H^j(Gamma, N)`; returns coordinates
/// in `H^{i+j}(Gamma, P)`.
pub fn cup_class(
    group: &FiniteGroup,
    pairing: &Pairing,
    i: usize,
    alpha: &[u32],
    j: usize,
    beta: &[u32],
    budget: u64,
) -> Result<Vec<u32>, GaloisError> {
    let cm = cochain_complex(group, &pairing.left, i + 1, budget)?;
    let cn = cochain_complex(group, &pairing.right, j + 1, budget)?;
    let cp = cochain_complex(group, &pairing.target, i + j + 1, budget)?;
    let hm = cm.cohomology(i as i64);
    let hn = cn.cohomology(j as i64);
    let a = representative(hm.generators(), alpha);
    let b = representative(hn.generators(), beta);
    let c = cup_cochains(group, pairing, i, &a, j, &b);
    Ok(cp.cohomology((i + j) as i64).coords(&c))
}

fn representative(gens: &ZpeMatrix, coords: &[u32]) -> Vec<u32> {
    assert_eq!(gens.cols(), coords.len(), "class coordinates do not match the presentation");
    gens.mul_vec(coords)
}
