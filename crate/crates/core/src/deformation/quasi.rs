//! Maps `rho` with `rho(x)^{-1} rho(xy) = phi(x) rho(y) phi(x)^{-1}`.

use serde::Serialize;

use crate::algebra::{FiniteLocalRing, RMatrix};
use crate::galois::{FiniteGroup, Representation};
use crate::par;

use super::DeformationError;

/// A quasi-homomorphism as a full table with a witness `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiHom {
    pub table: Vec<RMatrix>,
    pub witness: Vec<RMatrix>,
    pub is_homomorphism: bool,
}

impl QuasiHom {
    /// Checks the defining identity for every pair and `rho(e) = 1`.
    pub fn new(group: &FiniteGroup, ring: &FiniteLocalRing, table: Vec<RMatrix>, witness: Vec<RMatrix>) -> Result<Self, DeformationError> {
        if table.len() != group.order() || witness.len() != group.order() {
            return Err(DeformationError::Shape("one matrix per group element".into()));
        }
        if !table[group.identity()].is_identity(ring) {
            return Err(DeformationError::NotUnital);
        }
        if let Some((x, y)) = first_identity_failure(group, ring, &table, &witness)? {
            return Err(DeformationError::Shape(format!("quasi-homomorphism identity fails at ({x}, {y})")));
        }
        let is_homomorphism = is_multiplicative(group, ring, &table);
        Ok(QuasiHom { table, witness, is_homomorphism })
    }

    pub fn from_representation(group: &FiniteGroup, rho: &Representation) -> Self {
        let one = RMatrix::identity(rho.ring(), rho.dim());
        QuasiHom { table: rho.images().to_vec(), witness: vec![one; group.order()], is_homomorphism: true }
    }
}

fn is_multiplicative(group: &FiniteGroup, ring: &FiniteLocalRing, table: &[RMatrix]) -> bool {
    (0..group.order()).all(|a| (0..group.order()).all(|b| table[group.mul(a, b)] == table[a].mul(ring, &table[b])))
}

fn first_identity_failure(
    group: &FiniteGroup,
    ring: &FiniteLocalRing,
    table: &[RMatrix],
    witness: &[RMatrix],
) -> Result<Option<(usize, usize)>, DeformationError> {
    for x in 0..group.order() {
        let rx_inv = table[x].inverse(ring)?;
        for y in 0..group.order() {
            // phi(x) rho(y) == rho(x)^{-1} rho(xy) phi(x)
            let lhs = witness[x].mul(ring, &table[y]);
            let rhs = rx_inv.mul(ring, &table[group.mul(x, y)]).mul(ring, &witness[x]);
            if lhs != rhs {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// The homomorphism `Gamma -> G / Z(rho(Gamma))` induced by a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedHom {
    /// Size of the centralizer of `rho(Gamma)` in the ambient candidates.
    pub centralizer_size: usize,
    /// `phi(x) phi(y) phi(xy)^{-1}` centralizes `rho(Gamma)` for all pairs.
    pub is_homomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum QuasiCheck {
    Quasi { witness: Vec<RMatrix>, induced: InducedHom },
    /// No candidate `phi(x)` satisfies the identity for all `y` up to and
    /// including this one.
    NotQuasi { x: usize, y: usize },
}

impl QuasiCheck {
    pub fn is_quasi(&self) -> bool {
        matches!(self, QuasiCheck::Quasi { .. })
    }
}

/// Search `phi(x)` among `ambient` for each `x`, narrowing the candidates
/// one `y` at a time. The witness is the first surviving candidate.
pub fn quasi_hom_check(
    group: &FiniteGroup,
    ring: &FiniteLocalRing,
    table: &[RMatrix],
    ambient: &[RMatrix],
) -> Result<QuasiCheck, DeformationError> {
    if table.len() != group.order() {
        return Err(DeformationError::Shape("one matrix per group element".into()));
    }
    if !table[group.identity()].is_identity(ring) {
        return Err(DeformationError::NotUnital);
    }
    let mut witness = Vec::with_capacity(group.order());
    for x in 0..group.order() {
        let rx_inv = table[x].inverse(ring)?;
        let targets: Vec<RMatrix> = (0..group.order()).map(|y| rx_inv.mul(ring, &table[group.mul(x, y)])).collect();
        let mut alive: Vec<usize> = (0..ambient.len()).collect();
        for y in 0..group.order() {
            let keep = par::map(&alive, |&i| ambient[i].mul(ring, &table[y]) == targets[y].mul(ring, &ambient[i]));
            alive = alive.into_iter().zip(keep).filter_map(|(i, k)| k.then_some(i)).collect();
            if alive.is_empty() {
                return Ok(QuasiCheck::NotQuasi { x, y });
            }
        }
        witness.push(ambient[alive[0]].clone());
    }
    let centralizer: Vec<&RMatrix> =
        ambient.iter().filter(|c| table.iter().all(|m| c.mul(ring, m) == m.mul(ring, c))).collect();
    let mut induced_ok = true;
    'outer: for x in 0..group.order() {
        for y in 0..group.order() {
            let z = witness[x].mul(ring, &witness[y]).mul(ring, &witness[group.mul(x, y)].inverse(ring)?);
            if !table.iter().all(|m| z.mul(ring, m) == m.mul(ring, &z)) {
                induced_ok = false;
                break 'outer;
            }
        }
    }
    Ok(QuasiCheck::Quasi { witness, induced: InducedHom { centralizer_size: centralizer.len(), is_homomorphism: induced_ok } })
}

/// `rho(x) = g^{-1} sigma(x) phi(x) g phi(x)^{-1}`, which is a
/// quasi-homomorphism with witness `phi` when `phi` commutes with
/// `sigma(Gamma)`.
pub fn build_quasi_hom(
    group: &FiniteGroup,
    sigma: &Representation,
    phi: &Representation,
    g: &RMatrix,
) -> Result<QuasiHom, DeformationError> {
    let ring = sigma.ring();
    for x in 0..group.order() {
        for y in 0..group.order() {
            let (a, b) = (phi.image(x), sigma.image(y));
            if a.mul(ring, b) != b.mul(ring, a) {
                return Err(DeformationError::CentralizerViolation(x, y));
            }
        }
    }
    let g_inv = g.inverse(ring)?;
    let table = (0..group.order())
        .map(|x| {
            let f = phi.image(x);
            let f_inv = f.inverse(ring)?;
            Ok(g_inv.mul(ring, sigma.image(x)).mul(ring, f).mul(ring, g).mul(ring, &f_inv))
        })
        .collect::<Result<Vec<_>, DeformationError>>()?;
    QuasiHom::new(group, ring, table, phi.images().to_vec())
}

/// `rho(x) = sigma(x) phi(x)^{-1}` for homomorphisms `sigma` and `phi`,
/// a quasi-homomorphism with witness `phi`. With `phi` valued in the
/// kernel of reduction this is a quasi-lift of the reduction of `sigma`.
pub fn twisted_quasi_hom(group: &FiniteGroup, sigma: &Representation, phi: &Representation) -> Result<QuasiHom, DeformationError> {
    let ring = sigma.ring();
    let table = (0..group.order())
        .map(|x| Ok(sigma.image(x).mul(ring, &phi.image(x).inverse(ring)?)))
        .collect::<Result<Vec<_>, DeformationError>>()?;
    QuasiHom::new(group, ring, table, phi.images().to_vec())
}

/// All block-diagonal matrices `diag(a, b)`.
pub fn block_diagonal_ambient(first: &[RMatrix], second: &[RMatrix]) -> Vec<RMatrix> {
    let mut out = Vec::with_capacity(first.len() * second.len());
    for a in first {
        for b in second {
            out.push(block_diag(a, b));
        }
    }
    out
}

pub(crate) fn block_diag(a: &RMatrix, b: &RMatrix) -> RMatrix {
    let (n1, n2) = (a.rows(), b.rows());
    let mut m = RMatrix::zeros(n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            m.set(i, j, a.get(i, j));
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            m.set(n1 + i, n1 + j, b.get(i, j));
        }
    }
    m
}
