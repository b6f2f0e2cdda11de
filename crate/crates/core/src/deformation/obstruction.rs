//! Obstruction classes for lifting along a small surjection `A_1 -> A_0`.

use serde::Serialize;

use crate::algebra::{check_budget, solve, FiniteLocalRing, RMatrix};
use crate::galois::{adjoint_module, cochain_complex, AdjointFlavor, FiniteGroup, Representation};

use super::{DeformationError, IdealCoords, Lift};

/// A surjective ring map given on the `Z/p^e`-basis of the source.
#[derive(Clone, Debug)]
pub struct RingSurjection {
    source: FiniteLocalRing,
    target: FiniteLocalRing,
    table: Vec<u32>,
}

impl RingSurjection {
    /// `images[i]` is the image of the `i`th basis vector of `source`.
    pub fn new(source: &FiniteLocalRing, target: &FiniteLocalRing, images: &[u32]) -> Result<Self, DeformationError> {
        let err = |s: &str| DeformationError::NotASurjection(s.into());
        if source.p() != target.p() || target.base().e() > source.base().e() {
            return Err(err("coefficient rings are incompatible"));
        }
        if images.len() != source.rank() {
            return Err(err("one image per basis vector"));
        }
        check_budget(source.size() as u128, 1 << 24)?;
        let q0 = target.base().q();
        let map = |x: u32| -> u32 {
            source
                .coords(x)
                .iter()
                .zip(images)
                .fold(0, |acc, (&c, &b)| target.add(acc, target.mul(target.from_base(c % q0), b)))
        };
        let table: Vec<u32> = source.elements().map(map).collect();
        if table[source.one() as usize] != target.one() {
            return Err(err("the identity is not preserved"));
        }
        let basis: Vec<u32> = (0..source.rank()).map(|i| source.encode(&source.basis_vector(i))).collect();
        for &a in &basis {
            for &b in &basis {
                if table[source.mul(a, b) as usize] != target.mul(table[a as usize], table[b as usize]) {
                    return Err(err("not multiplicative"));
                }
            }
        }
        let mut hit = vec![false; target.size() as usize];
        for &y in &table {
            hit[y as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(err("not onto"));
        }
        Ok(RingSurjection { source: source.clone(), target: target.clone(), table })
    }

    /// Basis vector `i` of the source to basis vector `i` of the target, or
    /// to zero past the target's rank; e.g. `Z/p^2 -> F_p` or
    /// `F_p[x]/(x^3) -> F_p[x]/(x^2)`.
    pub fn truncation(source: &FiniteLocalRing, target: &FiniteLocalRing) -> Result<Self, DeformationError> {
        let images: Vec<u32> = (0..source.rank())
            .map(|i| if i < target.rank() { target.encode(&target.basis_vector(i)) } else { 0 })
            .collect();
        Self::new(source, target, &images)
    }

    pub fn source(&self) -> &FiniteLocalRing {
        &self.source
    }
    pub fn target(&self) -> &FiniteLocalRing {
        &self.target
    }
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }
    pub fn kernel(&self) -> Vec<u32> {
        self.source.elements().filter(|&x| self.table[x as usize] == 0).collect()
    }

    /// Smallest and largest preimage of every target element.
    fn sections(&self) -> (Vec<u32>, Vec<u32>) {
        let t = self.target.size() as usize;
        let mut lo = vec![u32::MAX; t];
        let mut hi = vec![0; t];
        for x in self.source.elements() {
            let y = self.table[x as usize] as usize;
            lo[y] = lo[y].min(x);
            hi[y] = hi[y].max(x);
        }
        (lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// `F_p`-dimension of the kernel `I`.
    pub kernel_dim: usize,
    pub is_cocycle: bool,
    /// Coordinates of the class in `H^2(Gamma, gl_n (x) I)`.
    pub class: Vec<u32>,
    pub class_orders: Vec<u32>,
    pub is_zero: bool,
    /// Both sections give the same class.
    pub section_independent: bool,
    /// A lift over the source, when the class vanishes.
    pub lift: Option<Lift>,
}

/// The 2-cocycle `c(a, b) = s(rho_0)(a) s(rho_0)(b) s(rho_0)(ab)^{-1} - 1`
/// for a set-theoretic section `s`, in coordinates of
/// `C^2(Gamma, gl_n (x) I)`.
fn obstruction_cocycle(
    group: &FiniteGroup,
    ring: &FiniteLocalRing,
    lifted: &[RMatrix],
    ideal: &IdealCoords,
) -> Result<Vec<u32>, DeformationError> {
    let n = lifted[0].rows();
    let one = RMatrix::identity(ring, n);
    let inverses = lifted.iter().map(|m| m.inverse(ring)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::with_capacity(group.order() * group.order() * n * n * ideal.dim());
    for a in 0..group.order() {
        for b in 0..group.order() {
            let c = lifted[a].mul(ring, &lifted[b]).mul(ring, &inverses[group.mul(a, b)]).sub(ring, &one);
            out.extend(ideal.matrix_coords(&c).expect("the section reduces to a homomorphism"));
        }
    }
    Ok(out)
}

/// The obstruction to lifting `rho_0` along `surj`, whose kernel must
/// satisfy `I^2 = 0` and `m I = 0`. The class is computed for the smallest
/// and the largest section and compared; when it vanishes, a lift is built
/// by correcting the section with a solution of `d b = -c`.
pub fn obstruction_class(
    group: &FiniteGroup,
    rho0: &Representation,
    surj: &RingSurjection,
    budget: u64,
) -> Result<ObstructionReport, DeformationError> {
    let a1 = surj.source();
    if rho0.ring() != surj.target() {
        return Err(DeformationError::Shape("the representation is not over the target of the surjection".into()));
    }
    let kernel = surj.kernel();
    if kernel.iter().any(|&x| kernel.iter().any(|&y| a1.mul(x, y) != 0)) {
        return Err(DeformationError::KernelNotSquareZero);
    }
    let m = a1.maximal_ideal_elements();
    if m.iter().any(|&x| kernel.iter().any(|&y| a1.mul(x, y) != 0)) {
        return Err(DeformationError::KernelNotAnnihilated);
    }
    let ideal = IdealCoords::new(a1, &kernel)?;
    let n = rho0.dim();
    let module = adjoint_module(group, &rho0.residue(), AdjointFlavor::Gl)?.tensor_trivial(ideal.dim());
    let complex = cochain_complex(group, &module, 3, budget)?;
    let h2 = complex.cohomology(2);
    let d2 = complex.differential(2);
    let (lo, hi) = surj.sections();
    let lift_table = |s: &[u32]| -> Vec<RMatrix> { rho0.images().iter().map(|m| m.map_entries(|x| s[x as usize])).collect() };
    let t_lo = lift_table(&lo);
    let t_hi = lift_table(&hi);
    let c_lo = obstruction_cocycle(group, a1, &t_lo, &ideal)?;
    let c_hi = obstruction_cocycle(group, a1, &t_hi, &ideal)?;
    let closed = |c: &[u32]| d2.mul_vec(c).iter().all(|&x| x == 0);
    let is_cocycle = closed(&c_lo) && closed(&c_hi);
    let class = h2.coords(&c_lo);
    let section_independent = class == h2.coords(&c_hi);
    let is_zero = h2.is_boundary(&c_lo);
    let lift = if is_zero {
        let fp = d2.ring();
        let rhs: Vec<u32> = c_lo.iter().map(|&x| fp.neg(x)).collect();
        let b = solve(&complex.differential(1), &rhs).expect("a boundary has a preimage");
        let one = RMatrix::identity(a1, n);
        let block = n * n * ideal.dim();
        let images: Vec<RMatrix> = t_lo
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let entries: Vec<u32> = b[g * block..(g + 1) * block].chunks(ideal.dim()).map(|v| ideal.element(a1, v)).collect();
                let bg = RMatrix::from_entries(n, n, &entries).unwrap();
                one.add(a1, &bg).mul(a1, m)
            })
            .collect();
        let rep = Representation::from_table(group, a1, images)?;
        debug_assert!(rep.images().iter().zip(rho0.images()).all(|(x, y)| x.map_entries(|e| surj.apply(e)) == *y));
        Some(Lift { gens: rep.generator_images(group) })
    } else {
        None
    };
    Ok(ObstructionReport {
        kernel_dim: ideal.dim(),
        is_cocycle,
        class,
        class_orders: h2.orders().to_vec(),
        is_zero,
        section_independent,
        lift,
    })
}
