//! Representations into `GL_n(A)`, modules with group action over `Z/p^e`,
//! adjoint modules and twisted duals.

use serde::{Deserialize, Serialize};

use crate::algebra::{inverse, FiniteLocalRing, RMatrix, Zpe, ZpeMatrix};

use super::{FiniteGroup, GaloisError, Subgroup};

/// Extend generator images to the whole group along a breadth-first tree
/// and check multiplicativity on every pair.
fn extend<T: Clone>(
    group: &FiniteGroup,
    gens: &[T],
    one: T,
    mul: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<Vec<T>, GaloisError> {
    if gens.len() != group.generators().len() {
        return Err(GaloisError::Shape(format!(
            "{} generator images for {} generators",
            gens.len(),
            group.generators().len()
        )));
    }
    let mut images: Vec<Option<T>> = vec![None; group.order()];
    for (x, step) in group.bfs_order() {
        images[x] = Some(match step {
            None => one.clone(),
            Some((k, prev)) => mul(images[prev].as_ref().unwrap(), &gens[k]),
        });
    }
    let images: Vec<T> = images.into_iter().map(Option::unwrap).collect();
    check_multiplicative(group, &images, mul, eq)?;
    Ok(images)
}

fn check_multiplicative<T>(
    group: &FiniteGroup,
    images: &[T],
    mul: impl Fn(&T, &T) -> T,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<(), GaloisError> {
    for a in 0..group.order() {
        for b in 0..group.order() {
            if !eq(&images[group.mul(a, b)], &mul(&images[a], &images[b])) {
                return Err(GaloisError::NotAHomomorphism(a, b));
            }
        }
    }
    Ok(())
}

/// A homomorphism `Gamma -> GL_n(A)`, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    ring: FiniteLocalRing,
    n: usize,
    images: Vec<RMatrix>,
}

impl Representation {
    /// From generator images; the extension to the group is checked to be a
    /// homomorphism.
    pub fn from_generators(group: &FiniteGroup, ring: &FiniteLocalRing, gens: &[RMatrix]) -> Result<Self, GaloisError> {
        let n = gens.first().map_or(1, |m| m.rows());
        for g in gens {
            if g.rows() != n || g.cols() != n {
                return Err(GaloisError::Shape("generator images must be square of one size".into()));
            }
            if !g.is_invertible(ring) {
                return Err(GaloisError::Algebra(crate::algebra::AlgebraError::NotInvertible));
            }
        }
        let images = extend(group, gens, RMatrix::identity(ring, n), |a, b| a.mul(ring, b), |a, b| a == b)?;
        Ok(Representation { ring: ring.clone(), n, images })
    }

    /// From a full table indexed by group elements.
    pub fn from_table(group: &FiniteGroup, ring: &FiniteLocalRing, images: Vec<RMatrix>) -> Result<Self, GaloisError> {
        if images.len() != group.order() {
            return Err(GaloisError::Shape("one image per group element".into()));
        }
        let n = images[0].rows();
        check_multiplicative(group, &images, |a, b| a.mul(ring, b), |a, b| a == b)?;
        Ok(Representation { ring: ring.clone(), n, images })
    }

    pub fn trivial(group: &FiniteGroup, ring: &FiniteLocalRing, n: usize) -> Self {
        Representation { ring: ring.clone(), n, images: vec![RMatrix::identity(ring, n); group.order()] }
    }

    pub fn ring(&self) -> &FiniteLocalRing {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn image(&self, g: usize) -> &RMatrix {
        &self.images[g]
    }
    pub fn images(&self) -> &[RMatrix] {
        &self.images
    }

    /// Generator images in the order of `group.generators()`.
    pub fn generator_images(&self, group: &FiniteGroup) -> Vec<RMatrix> {
        group.generators().iter().map(|&g| self.images[g].clone()).collect()
    }

    pub fn restrict(&self, sub: &Subgroup) -> Representation {
        Representation { ring: self.ring.clone(), n: self.n, images: sub.elements.iter().map(|&g| self.images[g].clone()).collect() }
    }

    /// First element whose image is not upper triangular.
    pub fn first_non_borel(&self) -> Option<usize> {
        self.images.iter().position(|m| !m.is_upper_triangular())
    }

    /// Reduction to the residue field, as a representation over `F_p`.
    pub fn residue(&self) -> Representation {
        let k = FiniteLocalRing::prime_field(self.ring.p()).expect("residue field");
        let images = self.images.iter().map(|m| m.map_entries(|x| self.ring.residue(x))).collect();
        Representation { ring: k, n: self.n, images }
    }

    /// The ring-valued diagonal character `g -> rho(g)_{ii}` of an upper
    /// triangular representation.
    pub fn diagonal_entry(&self, i: usize) -> Vec<u32> {
        self.images.iter().map(|m| m.get(i, i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjointFlavor {
    /// All of `M_n`.
    Gl,
    /// Upper triangular matrices.
    Borel,
    /// Strictly upper triangular matrices.
    Nilpotent,
    /// Diagonal matrices, realized as the quotient `b/n`.
    Torus,
}

impl AdjointFlavor {
    /// Matrix positions spanning the flavor, row-major.
    pub fn positions(self, n: usize) -> Vec<(usize, usize)> {
        let all = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        match self {
            AdjointFlavor::Gl => all.collect(),
            AdjointFlavor::Borel => all.filter(|&(i, j)| i <= j).collect(),
            AdjointFlavor::Nilpotent => all.filter(|&(i, j)| i < j).collect(),
            AdjointFlavor::Torus => (0..n).map(|i| (i, i)).collect(),
        }
    }
}

/// A free `Z/p^e`-module of finite rank with a linear group action, stored
/// as one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    ring: Zpe,
    rank: usize,
    action: Vec<ZpeMatrix>,
}

impl GModule {
    /// From generator matrices; invertibility and multiplicativity of the
    /// extension are checked.
    pub fn from_generators(group: &FiniteGroup, ring: Zpe, rank: usize, gens: &[ZpeMatrix]) -> Result<Self, GaloisError> {
        for g in gens {
            if g.rows() != rank || g.cols() != rank || g.ring() != ring {
                return Err(GaloisError::Shape(format!("action matrices must be {rank}x{rank} over {ring:?}")));
            }
            if inverse(g).is_none() {
                return Err(GaloisError::Algebra(crate::algebra::AlgebraError::NotInvertible));
            }
        }
        let action = extend(group, gens, ZpeMatrix::identity(ring, rank), |a, b| a.mul(b), |a, b| a == b)?;
        Ok(GModule { ring, rank, action })
    }

    pub fn from_table(group: &FiniteGroup, ring: Zpe, action: Vec<ZpeMatrix>) -> Result<Self, GaloisError> {
        if action.len() != group.order() {
            return Err(GaloisError::Shape("one action matrix per group element".into()));
        }
        let rank = action[0].rows();
        check_multiplicative(group, &action, |a, b| a.mul(b), |a, b| a == b)?;
        Ok(GModule { ring, rank, action })
    }

    pub fn trivial(group: &FiniteGroup, ring: Zpe, rank: usize) -> Self {
        GModule { ring, rank, action: vec![ZpeMatrix::identity(ring, rank); group.order()] }
    }

    pub fn ring(&self) -> Zpe {
        self.ring
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn action(&self, g: usize) -> &ZpeMatrix {
        &self.action[g]
    }

    pub fn restrict(&self, sub: &Subgroup) -> GModule {
        GModule { ring: self.ring, rank: self.rank, action: sub.elements.iter().map(|&g| self.action[g].clone()).collect() }
    }

    /// `M (x) (Z/p^e)^r` with trivial action on the second factor; basis
    /// index `b * r + c`.
    pub fn tensor_trivial(&self, r: usize) -> GModule {
        let action = self
            .action
            .iter()
            .map(|a| ZpeMatrix::from_fn(self.ring, self.rank * r, self.rank * r, |i, j| if i % r == j % r { a.get(i / r, j / r) } else { 0 }))
            .collect();
        GModule { ring: self.ring, rank: self.rank * r, action }
    }

    pub fn direct_sum(&self, other: &GModule) -> GModule {
        assert_eq!(self.ring, other.ring);
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        GModule { ring: self.ring, rank: self.rank + other.rank, action }
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|a| *a == ZpeMatrix::identity(self.ring, self.rank))
    }

    /// Whether a matrix `M -> N` commutes with the actions.
    pub fn is_equivariant(&self, target: &GModule, f: &ZpeMatrix) -> bool {
        self.action.iter().zip(&target.action).all(|(a, b)| f.mul(a) == b.mul(f))
    }
}

/// A unit-valued homomorphism `Gamma -> (Z/p^e)^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    ring: Zpe,
    values: Vec<u32>,
}

impl Character {
    pub fn new(group: &FiniteGroup, ring: Zpe, values: Vec<u32>) -> Result<Self, GaloisError> {
        if values.len() != group.order() {
            return Err(GaloisError::Shape("one value per group element".into()));
        }
        if let Some(i) = values.iter().position(|&v| !ring.is_unit(v)) {
            return Err(GaloisError::NotACharacter(i));
        }
        check_multiplicative(group, &values, |a, b| ring.mul(*a, *b), |a, b| a == b)
            .map_err(|e| match e {
                GaloisError::NotAHomomorphism(a, _) => GaloisError::NotACharacter(a),
                e => e,
            })?;
        Ok(Character { ring, values })
    }

    pub fn from_generators(group: &FiniteGroup, ring: Zpe, gens: &[u32]) -> Result<Self, GaloisError> {
        let values = extend(group, gens, 1, |a, b| ring.mul(*a, *b), |a, b| a == b).map_err(|e| match e {
            GaloisError::NotAHomomorphism(a, _) => GaloisError::NotACharacter(a),
            e => e,
        })?;
        Self::new(group, ring, values)
    }

    pub fn trivial(group: &FiniteGroup, ring: Zpe) -> Self {
        Character { ring, values: vec![1; group.order()] }
    }

    pub fn ring(&self) -> Zpe {
        self.ring
    }
    pub fn value(&self, g: usize) -> u32 {
        self.values[g]
    }
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn inverse(&self) -> Character {
        Character { ring: self.ring, values: self.values.iter().map(|&v| self.ring.inv(v).unwrap()).collect() }
    }

    pub fn restrict(&self, sub: &Subgroup) -> Character {
        Character { ring: self.ring, values: sub.elements.iter().map(|&g| self.values[g]).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// `Ad rho` on the chosen flavor subspace, as a `Z/p^e`-module. Basis index
/// `k * d + c` for the `k`th flavor position and the `c`th coordinate of
/// the coefficient ring (rank `d` over `Z/p^e`).
pub fn adjoint_module(group: &FiniteGroup, rho: &Representation, flavor: AdjointFlavor) -> Result<GModule, GaloisError> {
    if flavor != AdjointFlavor::Gl {
        if let Some(g) = rho.first_non_borel() {
            return Err(GaloisError::NotBorelValued(g));
        }
    }
    let ring = rho.ring();
    let n = rho.dim();
    let d = ring.rank();
    let pos = flavor.positions(n);
    let basis_elems: Vec<u32> = (0..d).map(|c| ring.encode(&ring.basis_vector(c))).collect();
    let dim = pos.len() * d;
    let mut action = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let a = rho.image(g);
        let a_inv = a.inverse(ring)?;
        let mut m = ZpeMatrix::zeros(ring.base(), dim, dim);
        for (k, &(i, j)) in pos.iter().enumerate() {
            for (c, &b) in basis_elems.iter().enumerate() {
                let mut x = RMatrix::zeros(n, n);
                x.set(i, j, b);
                let y = a.mul(ring, &x).mul(ring, &a_inv);
                for (k2, &(i2, j2)) in pos.iter().enumerate() {
                    let coords = ring.coords(y.get(i2, j2));
                    for (c2, &v) in coords.iter().enumerate() {
                        m.set(k2 * d + c2, k * d + c, v);
                    }
                }
            }
        }
        action.push(m);
    }
    Ok(GModule { ring: ring.base(), rank: dim, action })
}

/// `Hom(M, Z/p^e)` with action `(g f)(m) = chi(g) f(g^-1 m)`; in the dual
/// basis the matrix of `g` is `chi(g) A(g^-1)^T`.
pub fn twisted_dual(group: &FiniteGroup, m: &GModule, chi: &Character) -> GModule {
    assert_eq!(m.ring, chi.ring, "character and module over different rings");
    let action = (0..group.order())
        .map(|g| m.action[group.inv(g)].transpose().scale(chi.value(g)))
        .collect();
    GModule { ring: m.ring, rank: m.rank, action }
}
