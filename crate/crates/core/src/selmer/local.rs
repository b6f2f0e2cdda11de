//! Local data at a place and the local conditions `L_v`, `L~_v` and their
//! strict variants.

use crate::algebra::{canonical_basis, image_log_size, kernel, ZpeMatrix};
use crate::complexes::HomologyMap;
use crate::galois::{adjoint_module, cochain_complex, restriction_map, AdjointFlavor, FiniteGroup, GModule, Representation, Subgroup};

use super::SelmerError;

/// A place `v`: its decomposition group, optional inertia subgroup (both
/// inside `Gamma`), and a `Gamma_v`-submodule `b` of `g` given by an
/// injective equivariant matrix. `torus` is the quotient `b -> b/n` used by
/// the strict condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDatum {
    pub label: String,
    pub decomposition: Subgroup,
    pub inertia: Option<Subgroup>,
    pub borel: GModule,
    pub embedding: ZpeMatrix,
    pub torus: Option<(GModule, ZpeMatrix)>,
}

impl LocalDatum {
    /// Validate against the global module `g`.
    pub fn new(
        label: impl Into<String>,
        g: &GModule,
        decomposition: Subgroup,
        inertia: Option<Subgroup>,
        borel: GModule,
        embedding: ZpeMatrix,
        torus: Option<(GModule, ZpeMatrix)>,
    ) -> Result<Self, SelmerError> {
        let label = label.into();
        let gv = g.restrict(&decomposition);
        if embedding.rows() != g.rank() || embedding.cols() != borel.rank() {
            return Err(SelmerError::Shape(label, "embedding has the wrong shape".into()));
        }
        if !borel.is_equivariant(&gv, &embedding) {
            return Err(SelmerError::NotEquivariant(label));
        }
        if !kernel(&embedding).gens.is_zero() {
            return Err(SelmerError::NotInjective(label));
        }
        if let Some(i) = &inertia {
            if !i.is_subgroup_of(&decomposition) {
                return Err(SelmerError::InertiaNotContained(label));
            }
        }
        if let Some((t, pi)) = &torus {
            if pi.rows() != t.rank() || pi.cols() != borel.rank() {
                return Err(SelmerError::Shape(label, "torus projection has the wrong shape".into()));
            }
            if !borel.is_equivariant(t, pi) {
                return Err(SelmerError::NotEquivariant(label));
            }
        }
        Ok(LocalDatum { label, decomposition, inertia, borel, embedding, torus })
    }

    /// The datum of an upper triangular `rho|Gamma_v`: `b` is the `local`
    /// flavor of the adjoint module, embedded in the `global` flavor by
    /// matrix position, and for `b` Borel or torus the quotient `b/n` reads the diagonal.
    pub fn from_representation(
        label: impl Into<String>,
        group: &FiniteGroup,
        rho: &Representation,
        global: AdjointFlavor,
        local: AdjointFlavor,
        decomposition: Subgroup,
        inertia: Option<Subgroup>,
    ) -> Result<Self, SelmerError> {
        let label = label.into();
        let g = adjoint_module(group, rho, global)?;
        let rv = rho.restrict(&decomposition);
        let b = adjoint_module(&decomposition.group, &rv, local)?;
        let d = rho.ring().rank();
        let n = rho.dim();
        let embedding = select_positions(&b, d, &local.positions(n), &global.positions(n))
            .ok_or_else(|| SelmerError::Shape(label.clone(), format!("{local:?} is not contained in {global:?}")))?;
        // b/n only makes sense when b contains the diagonal and n
        let torus = if !matches!(local, AdjointFlavor::Borel | AdjointFlavor::Torus) {
            None
        } else {
            let t = adjoint_module(&decomposition.group, &rv, AdjointFlavor::Torus)?;
            let pi = select_positions(&b, d, &AdjointFlavor::Torus.positions(n), &local.positions(n))
                .expect("the diagonal lies in b")
                .transpose();
            Some((t, pi))
        };
        LocalDatum::new(label, &g, decomposition, inertia, b, embedding, torus)
    }
}

/// 0/1 matrix from the span of `small` positions into the span of `big`
/// positions, each position carrying `d` coordinates.
fn select_positions(m: &GModule, d: usize, small: &[(usize, usize)], big: &[(usize, usize)]) -> Option<ZpeMatrix> {
    let mut out = ZpeMatrix::zeros(m.ring(), big.len() * d, small.len() * d);
    for (k, p) in small.iter().enumerate() {
        let k2 = big.iter().position(|q| q == p)?;
        for c in 0..d {
            out.set(k2 * d + c, k * d + c, 1);
        }
    }
    Some(out)
}

/// `id_{tuples} (x) f` on `C^n`, where coordinates are `tuple * rank + comp`.
pub(crate) fn on_cochains(f: &ZpeMatrix, tuples: usize) -> ZpeMatrix {
    let (r, c) = (f.rows(), f.cols());
    let mut out = ZpeMatrix::zeros(f.ring(), tuples * r, tuples * c);
    for t in 0..tuples {
        out.set_block(t * r, t * c, f);
    }
    out
}

/// `L_v` as generators in the coordinates of `H^1(Gamma_v, g)`, and `L~_v`
/// as a canonical basis inside `C^1(Gamma_v, g)`.
#[derive(Clone, Debug)]
pub struct LocalCondition {
    pub l: ZpeMatrix,
    pub l_log: u32,
    pub tilde: ZpeMatrix,
    pub tilde_log: u32,
    pub coboundary_log: u32,
    pub h1_orders: Vec<u32>,
}

fn condition_from(datum: &LocalDatum, g: &GModule, cocycles: &ZpeMatrix, budget: u64) -> Result<LocalCondition, SelmerError> {
    let gv_group = &datum.decomposition.group;
    let gv = g.restrict(&datum.decomposition);
    let cg = cochain_complex(gv_group, &gv, 2, budget)?;
    let iota = on_cochains(&datum.embedding, gv_group.order());
    let pushed = iota.mul(cocycles);
    let boundaries = cg.differential(0);
    let tilde = canonical_basis(&pushed.hstack(&boundaries))?;
    let h1 = cg.cohomology(1);
    let cols: Vec<Vec<u32>> = pushed.columns().iter().map(|z| h1.coords(z)).collect();
    let l = ZpeMatrix::from_columns(g.ring(), h1.orders().len(), &cols);
    let l_log = HomologyMap { source_orders: vec![g.ring().e(); l.cols()], target_orders: h1.orders().to_vec(), matrix: l.clone() }
        .image_log_size();
    Ok(LocalCondition {
        tilde_log: image_log_size(&tilde),
        coboundary_log: image_log_size(&boundaries),
        l,
        l_log,
        tilde,
        h1_orders: h1.orders().to_vec(),
    })
}

/// `L_v = im(H^1(Gamma_v, b) -> H^1(Gamma_v, g))` and its preimage
/// `L~_v = iota Z^1(Gamma_v, b) + B^1(Gamma_v, g)` in `Z^1(Gamma_v, g)`.
pub fn local_condition(datum: &LocalDatum, g: &GModule, budget: u64) -> Result<LocalCondition, SelmerError> {
    let cb = cochain_complex(&datum.decomposition.group, &datum.borel, 2, budget)?;
    let z1 = kernel(&cb.differential(1)).gens;
    condition_from(datum, g, &z1, budget)
}

/// As [`local_condition`], with `Z^1(Gamma_v, b)` replaced by the cocycles
/// whose image in `H^1(I_v, b/n)` vanishes.
pub fn strict_local_condition(datum: &LocalDatum, g: &GModule, budget: u64) -> Result<LocalCondition, SelmerError> {
    let missing = || SelmerError::MissingInertia(datum.label.clone());
    let inertia = datum.inertia.as_ref().ok_or_else(missing)?;
    let (t, pi) = datum.torus.as_ref().ok_or_else(missing)?;
    let gv_group = &datum.decomposition.group;
    let positions: Vec<usize> = inertia
        .elements
        .iter()
        .map(|&x| datum.decomposition.position(x).expect("inertia validated inside decomposition"))
        .collect();
    let iv = gv_group.subgroup_from_elements(&positions)?;

    let cb = cochain_complex(gv_group, &datum.borel, 2, budget)?;
    let z1 = kernel(&cb.differential(1)).gens;
    let to_torus = on_cochains(pi, gv_group.order()).mul(&z1);
    let res = restriction_map(gv_group, &iv, t, 1, budget)?.at(1);
    let a = res.mul(&to_torus);
    let d0 = cochain_complex(&iv.group, &t.restrict(&iv), 1, budget)?.differential(0);
    let joint = kernel(&a.hstack(&d0.neg())).gens;
    let u = joint.block(0, 0, z1.cols(), joint.cols());
    condition_from(datum, g, &z1.mul(&u), budget)
}
