//! Lifts to square-zero extensions of the residue field against cocycles.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::algebra::{image_log_size, FiniteLocalRing, RMatrix, DEFAULT_BUDGET};
use crate::galois::{adjoint_module, cochain_complex, AdjointFlavor, FiniteGroup, Representation};
use crate::par;

use super::{deformation_classes, enumerate_lifts, DeformationError, Lift, ResidualRep};

/// `F_p`-coordinates on an additive subgroup of a ring killed by `p`.
#[derive(Clone, Debug)]
pub struct IdealCoords {
    basis: Vec<u32>,
    coords: HashMap<u32, Vec<u32>>,
}

impl IdealCoords {
    /// Coordinates on the subgroup generated by `elements`, with basis
    /// chosen greedily in the given order.
    pub fn new(ring: &FiniteLocalRing, elements: &[u32]) -> Result<Self, DeformationError> {
        let p = ring.p();
        let mut basis: Vec<u32> = Vec::new();
        let mut span: Vec<(u32, Vec<u32>)> = vec![(0, vec![])];
        for &x in elements {
            if ring.mul(ring.from_base(p), x) != 0 {
                return Err(DeformationError::Shape(format!("element {x} is not killed by p")));
            }
            if span.iter().any(|(y, _)| *y == x) {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * p as usize);
            for c in 0..p {
                let cx = ring.mul(ring.from_base(c), x);
                for (y, v) in &span {
                    let mut w = v.clone();
                    w.push(c);
                    next.push((ring.add(*y, cx), w));
                }
            }
            span = next;
            basis.push(x);
        }
        let d = basis.len();
        let coords = span
            .into_iter()
            .map(|(y, mut v)| {
                v.resize(d, 0);
                (y, v)
            })
            .collect();
        Ok(IdealCoords { basis, coords })
    }

    /// The maximal ideal of a ring with `m^2 = 0`.
    pub fn maximal_ideal(ring: &FiniteLocalRing) -> Result<Self, DeformationError> {
        let m = ring.maximal_ideal_elements();
        if m.iter().any(|&a| m.iter().any(|&b| ring.mul(a, b) != 0)) {
            return Err(DeformationError::NotSquareZero);
        }
        Self::new(ring, &m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }
    pub fn coords(&self, x: u32) -> Option<&[u32]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }
    pub fn element(&self, ring: &FiniteLocalRing, v: &[u32]) -> u32 {
        self.basis.iter().zip(v).fold(0, |acc, (&b, &c)| ring.add(acc, ring.mul(ring.from_base(c), b)))
    }

    /// Coordinates of a matrix with entries in the subgroup, entry `(i,j)`
    /// at `(i n + j) * dim + c`.
    pub fn matrix_coords(&self, m: &RMatrix) -> Option<Vec<u32>> {
        let mut out = Vec::with_capacity(m.entries().len() * self.dim());
        for &x in m.entries() {
            out.extend_from_slice(self.coords(x)?);
        }
        Some(out)
    }
}

/// The 1-cochain `g -> rho(g) rho_0(g)^{-1} - 1` in coordinates of
/// `C^1(Gamma, gl_n (x) m_A)`.
pub fn lift_cocycle(base: &Representation, lift: &Representation, ideal: &IdealCoords) -> Result<Vec<u32>, DeformationError> {
    let ring = lift.ring();
    let one = RMatrix::identity(ring, lift.dim());
    let mut out = Vec::new();
    for (a, b) in lift.images().iter().zip(base.images()) {
        let x = a.mul(ring, &b.inverse(ring)?).sub(ring, &one);
        let c = ideal.matrix_coords(&x).ok_or_else(|| DeformationError::Shape("lifts do not agree modulo the ideal".into()))?;
        out.extend(c);
    }
    Ok(out)
}

/// Checks that conjugating each lift by `u = 1 + Y` in the kernel moves its
/// cocycle by `-d^0 Y`. Uses at most `samples` kernel elements, taken in
/// order. Returns the first failing `(lift, kernel element)`.
pub fn check_conjugation_translation(
    group: &FiniteGroup,
    r: &ResidualRep,
    ring: &FiniteLocalRing,
    lifts: &[Lift],
    samples: usize,
    budget: u64,
) -> Result<Option<(usize, usize)>, DeformationError> {
    let ideal = IdealCoords::maximal_ideal(ring)?;
    let module = adjoint_module(group, r.representation(), AdjointFlavor::Gl)?.tensor_trivial(ideal.dim());
    let d0 = cochain_complex(group, &module, 1, budget)?.differential(0);
    let kernel = crate::algebra::enumerate_small_group(crate::algebra::GroupKind::KernelGLn, ring, r.dim(), budget)?;
    let one = RMatrix::identity(ring, r.dim());
    let base = lifts.first().map(|l| l.representation(group, ring)).transpose()?;
    let Some(base) = base else { return Ok(None) };
    let fp = d0.ring();
    for (i, l) in lifts.iter().enumerate() {
        let rho = l.representation(group, ring)?;
        let z = lift_cocycle(&base, &rho, &ideal)?;
        for (j, u) in kernel.iter().take(samples).enumerate() {
            let u_inv = u.inverse(ring)?;
            let conj = l.conjugate(ring, u, &u_inv).representation(group, ring)?;
            let z2 = lift_cocycle(&base, &conj, &ideal)?;
            let y = ideal.matrix_coords(&u.sub(ring, &one)).expect("kernel elements are 1 + M_n(m)");
            let dy = d0.mul_vec(&y);
            let ok = z2.iter().zip(&z).zip(&dy).all(|((&a, &b), &c)| fp.add(a, c) == b);
            if !ok {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub p: u32,
    pub n: usize,
    pub framed_lifts: u64,
    pub z1_log: u32,
    pub classes: u64,
    pub h1_log: u32,
    pub scalar_commutant: bool,
    pub framed_matches: bool,
    pub classes_match: bool,
    /// Lifts map injectively into `Z^1` and hit every cocycle.
    pub cocycle_bijection: bool,
    /// Kernel conjugation acts on cocycles by coboundary translation.
    pub conjugation_is_translation: bool,
}

impl TangentReport {
    /// Framed count and bijection always; the class count only when the
    /// commutant is scalar.
    pub fn passes(&self) -> bool {
        self.framed_matches
            && self.cocycle_bijection
            && self.conjugation_is_translation
            && (!self.scalar_commutant || self.classes_match)
    }
}

/// Lifts and classes over `k[eps]` against `Z^1` and `H^1` of the adjoint
/// representation.
pub fn tangent_check(r: &ResidualRep, budget: u64) -> Result<TangentReport, DeformationError> {
    let group = r.group();
    let p = r.field().p();
    let n = r.dim();
    let ring = FiniteLocalRing::dual_numbers(p)?;
    let lifts = enumerate_lifts(r, &ring, budget)?;
    let classes = deformation_classes(&lifts, &ring, n, budget)?;
    let ad = adjoint_module(group, r.representation(), AdjointFlavor::Gl)?;
    let complex = cochain_complex(group, &ad, 2, budget)?;
    let z1_log = (complex.rank(1) as u32) - image_log_size(&complex.differential(1));
    let h1_log = complex.cohomology(1).log_size();
    let ideal = IdealCoords::maximal_ideal(&ring)?;
    let d1 = complex.differential(1);
    let cocycles: Vec<Result<Vec<u32>, DeformationError>> = {
        let base = lifts[0].representation(group, &ring)?;
        par::map(&lifts, |l| lift_cocycle(&base, &l.representation(group, &ring)?, &ideal))
    };
    let mut seen = HashSet::new();
    let mut all_cocycles = true;
    for z in cocycles {
        let z = z?;
        all_cocycles &= d1.mul_vec(&z).iter().all(|&x| x == 0);
        seen.insert(z);
    }
    let framed = lifts.len() as u64;
    let z1 = (p as u64).pow(z1_log);
    let bijection = all_cocycles && seen.len() == lifts.len() && framed == z1;
    let translation = check_conjugation_translation(group, r, &ring, &lifts, 32, DEFAULT_BUDGET.max(budget))?.is_none();
    Ok(TangentReport {
        p,
        n,
        framed_lifts: framed,
        z1_log,
        classes: classes.len() as u64,
        h1_log,
        scalar_commutant: r.scalar_commutant(),
        framed_matches: framed == z1,
        classes_match: classes.len() as u64 == (p as u64).pow(h1_log),
        cocycle_bijection: bijection,
        conjugation_is_translation: translation,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::{FiniteLocalRing, DEFAULT_BUDGET};

    #[test]
    fn cyclic_three_trivial() {
        let r = trivial(&FiniteGroup::cyclic(3), 3, 1);
        let t = tangent_check(&r, DEFAULT_BUDGET).unwrap();
        assert_eq!((t.framed_lifts, t.z1_log, t.classes, t.h1_log), (3, 1, 3, 1));
        assert!(t.passes());
    }

    #[test]
    fn coprime_order_has_one_class() {
        let r = trivial(&FiniteGroup::cyclic(2), 3, 2);
        let t = tangent_check(&r, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.classes, 1);
        assert_eq!(t.h1_log, 0);
        assert!(t.passes());
    }

    #[test]
    fn s3_standard_frozen() {
        let r = s3_standard_f5();
        let t = tangent_check(&r, DEFAULT_BUDGET).unwrap();
        assert!(t.passes());
        assert_eq!(t.h1_log, 0);
        assert_eq!(t.classes, 1);
        assert_eq!(t.framed_lifts, 125);
    }

    /// Independent count: every pair of entrywise lifts of the generator
    /// images, kept when it extends to a multiplicative table.
    #[test]
    fn s3_standard_oracle() {
        let r = s3_standard_f5();
        let a = FiniteLocalRing::dual_numbers(5).unwrap();
        let k = r.field().clone();
        let fibers = |m: &RMatrix| -> Vec<RMatrix> {
            let mut out = vec![vec![]];
            for &x in m.entries() {
                let choices: Vec<u32> = a.elements().filter(|&y| a.residue(y) == k.residue(x)).collect();
                out = out.iter().flat_map(|pre: &Vec<u32>| choices.iter().map(move |&c| [pre.clone(), vec![c]].concat())).collect();
            }
            out.into_iter().map(|e| RMatrix::from_entries(2, 2, &e).unwrap()).collect()
        };
        let gens = r.generator_images();
        let (s, t) = (fibers(&gens[0]), fibers(&gens[1]));
        let count = s
            .iter()
            .map(|x| t.iter().filter(|y| Representation::from_generators(r.group(), &a, &[(*x).clone(), (*y).clone()]).is_ok()).count())
            .sum::<usize>();
        assert_eq!(count, 125);
    }

    #[test]
    fn ideal_coordinates_round_trip() {
        let a = FiniteLocalRing::truncated_polynomials(3, 1, 2).unwrap();
        let ideal = IdealCoords::maximal_ideal(&a).unwrap();
        assert_eq!(ideal.dim(), 1);
        for x in a.maximal_ideal_elements() {
            assert_eq!(ideal.element(&a, ideal.coords(x).unwrap()), x);
        }
        let cubic = FiniteLocalRing::truncated_polynomials(3, 1, 3).unwrap();
        assert_eq!(IdealCoords::maximal_ideal(&cubic).unwrap_err(), DeformationError::NotSquareZero);
    }
}
