//! Homology presentations and induced maps.
//!
//! `H_n` is presented as `sum_j Z/p^{o_j}` together with one cycle per
//! summand and a chart that sends any cycle to its coordinates. Over `F_p`
//! all orders are 1 and the chart comes from reduced echelon forms. Over
//! `Z/p^e` the cycles are parametrized through the Smith form of the
//! outgoing boundary and the quotient by boundaries through a second Smith
//! form.

use crate::algebra::{
    field_kernel, field_rref, image_log_size, inverse, rank, snf, span_le, Zpe, ZpeMatrix,
};

use super::{ChainComplex, ChainMap};

#[derive(Clone, Debug)]
enum Chart {
    Field {
        /// Free columns of the outgoing boundary; cycle coordinates are the
        /// entries there.
        free: Vec<usize>,
        /// Reduced rows spanning the boundaries in cycle coordinates.
        rows: ZpeMatrix,
        pivots: Vec<usize>,
        /// Non-pivot cycle coordinates; these index the summands.
        keep: Vec<usize>,
    },
    General {
        r_inv: ZpeMatrix,
        /// `(k, a)`: the `k`th transformed coordinate of a cycle is
        /// `p^{e-a} z` with `z` defined modulo `p^a`.
        constrained: Vec<(usize, u32)>,
        left: ZpeMatrix,
        /// `(j, c)`: summand from row `j` of the presentation, order `p^c`.
        summands: Vec<(usize, u32)>,
    },
}

/// `H_n` of a chain complex.
#[derive(Clone, Debug)]
pub struct Homology {
    ring: Zpe,
    degree: i64,
    orders: Vec<u32>,
    gens: ZpeMatrix,
    chart: Chart,
}

impl Homology {
    pub fn ring(&self) -> Zpe {
        self.ring
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    /// `p`-exponents of the cyclic summands.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }
    /// Invariant factors `p^{o_j}`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.orders.iter().map(|&o| (self.ring.p() as u64).pow(o)).collect()
    }
    /// Number of cyclic summands; the dimension over a field.
    pub fn dim(&self) -> usize {
        self.orders.len()
    }
    /// `log_p |H|`.
    pub fn log_size(&self) -> u32 {
        self.orders.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }
    /// One cycle per summand, as columns.
    pub fn generators(&self) -> &ZpeMatrix {
        &self.gens
    }

    /// Coordinates of the class of a cycle; entry `j` is meaningful modulo
    /// `p^{o_j}` and is returned reduced.
    pub fn coords(&self, cycle: &[u32]) -> Vec<u32> {
        let ring = self.ring;
        match &self.chart {
            Chart::Field { free, rows, pivots, keep } => {
                let mut z: Vec<u32> = free.iter().map(|&f| cycle[f]).collect();
                for (i, &pc) in pivots.iter().enumerate() {
                    let c = z[pc];
                    if c == 0 {
                        continue;
                    }
                    let f = ring.neg(c);
                    for (zj, &rj) in z.iter_mut().zip(rows.row(i)) {
                        if rj != 0 {
                            *zj = ring.add(*zj, ring.mul(f, rj));
                        }
                    }
                }
                keep.iter().map(|&k| z[k]).collect()
            }
            Chart::General { r_inv, constrained, left, summands } => {
                let y = r_inv.mul_vec(cycle);
                let e = ring.e();
                let z: Vec<u32> = constrained.iter().map(|&(k, a)| ring.div_p_pow(y[k], e - a)).collect();
                let w = left.mul_vec(&z);
                summands.iter().map(|&(j, c)| w[j] % modulus(ring, c)).collect()
            }
        }
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, cycle: &[u32]) -> bool {
        self.coords(cycle).iter().all(|&x| x == 0)
    }
}

/// `H_n(C) = ker d_n / im d_{n+1}`; zero outside the stored range.
pub fn homology(c: &ChainComplex, n: i64) -> Homology {
    let ring = c.ring();
    let dim = c.rank(n);
    let out = c.boundary(n);
    let inc = c.boundary(n + 1);
    if ring.is_field() {
        let (kgens, free) = field_kernel(&out);
        let xb = inc.select_rows(&free);
        let (rows, pivots) = field_rref(&xb.transpose());
        let mut is_pivot = vec![false; free.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..free.len()).filter(|&k| !is_pivot[k]).collect();
        let gens = kgens.select_columns(&keep);
        return Homology {
            ring,
            degree: n,
            orders: vec![1; keep.len()],
            gens,
            chart: Chart::Field { free, rows, pivots, keep },
        };
    }
    let e = ring.e();
    let s = snf(&out);
    let constrained: Vec<(usize, u32)> = (0..dim)
        .filter_map(|k| {
            let a = if k < s.exponents.len() { s.exponents[k] } else { e };
            (a > 0).then_some((k, a))
        })
        .collect();
    let kk = constrained.len();
    // boundaries in the cycle parametrization
    let y = s.right_inv.mul(&inc);
    let xb = ZpeMatrix::from_fn(ring, kk, inc.cols(), |i, j| {
        let (k, a) = constrained[i];
        ring.div_p_pow(y.get(k, j), e - a)
    });
    let mut pres = ZpeMatrix::zeros(ring, kk, inc.cols() + kk);
    pres.set_block(0, 0, &xb);
    for (i, &(_, a)) in constrained.iter().enumerate() {
        pres.set(i, inc.cols() + i, ring.p_pow(a));
    }
    let ps = snf(&pres);
    let summands: Vec<(usize, u32)> = (0..kk)
        .filter_map(|j| {
            let c = if j < ps.exponents.len() { ps.exponents[j] } else { e };
            (c > 0).then_some((j, c))
        })
        .collect();
    let left_inv = inverse(&ps.left).expect("Smith transforms are invertible");
    let gens_cols: Vec<Vec<u32>> = summands
        .iter()
        .map(|&(j, _)| {
            let z = left_inv.column(j);
            let mut yv = vec![0u32; dim];
            for (i, &(k, a)) in constrained.iter().enumerate() {
                yv[k] = ring.mul(z[i], ring.p_pow(e - a));
            }
            s.right.mul_vec(&yv)
        })
        .collect();
    Homology {
        ring,
        degree: n,
        orders: summands.iter().map(|&(_, c)| c).collect(),
        gens: ZpeMatrix::from_columns(ring, dim, &gens_cols),
        chart: Chart::General { r_inv: s.right_inv, constrained, left: ps.left, summands },
    }
}

/// A homomorphism between homology presentations: column `j` holds the
/// coordinates of the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub source_orders: Vec<u32>,
    pub target_orders: Vec<u32>,
    pub matrix: ZpeMatrix,
}

impl HomologyMap {
    fn target_relations(&self) -> ZpeMatrix {
        relations(self.matrix.ring(), &self.target_orders)
    }

    /// `log_p` of the size of the image.
    pub fn image_log_size(&self) -> u32 {
        let rel = self.target_relations();
        image_log_size(&self.matrix.hstack(&rel)) - image_log_size(&rel)
    }

    /// `log_p` of the size of the kernel.
    pub fn kernel_log_size(&self) -> u32 {
        self.source_orders.iter().sum::<u32>() - self.image_log_size()
    }

    pub fn is_zero(&self) -> bool {
        self.image_log_size() == 0
    }

    pub fn is_isomorphism(&self) -> bool {
        let src: u32 = self.source_orders.iter().sum();
        let tgt: u32 = self.target_orders.iter().sum();
        src == tgt && self.image_log_size() == tgt
    }

    /// Rank over a field.
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    /// `after o self`.
    pub fn then(&self, after: &HomologyMap) -> HomologyMap {
        assert_eq!(self.target_orders, after.source_orders, "maps are not composable");
        let ring = self.matrix.ring();
        let m = after.matrix.mul(&self.matrix);
        let reduced = reduce_rows(ring, &m, &after.target_orders);
        HomologyMap { source_orders: self.source_orders.clone(), target_orders: after.target_orders.clone(), matrix: reduced }
    }
}

fn relations(ring: Zpe, orders: &[u32]) -> ZpeMatrix {
    let n = orders.len();
    let mut m = ZpeMatrix::zeros(ring, n, n);
    for (j, &o) in orders.iter().enumerate() {
        m.set(j, j, ring.p_pow(o));
    }
    m
}

fn modulus(ring: Zpe, o: u32) -> u32 {
    if o >= ring.e() {
        ring.q()
    } else {
        ring.p_pow(o)
    }
}

fn reduce_rows(ring: Zpe, m: &ZpeMatrix, orders: &[u32]) -> ZpeMatrix {
    ZpeMatrix::from_fn(ring, m.rows(), m.cols(), |i, j| m.get(i, j) % modulus(ring, orders[i]))
}

/// The map on homology induced by a degree-preserving matrix sending cycles
/// of `source`'s complex to cycles of `target`'s.
pub fn induced_by_matrix(source: &Homology, target: &Homology, m: &ZpeMatrix) -> HomologyMap {
    let ring = source.ring;
    let cols: Vec<Vec<u32>> = (0..source.gens.cols())
        .map(|j| target.coords(&m.mul_vec(&source.gens.column(j))))
        .collect();
    HomologyMap {
        source_orders: source.orders.clone(),
        target_orders: target.orders.clone(),
        matrix: ZpeMatrix::from_columns(ring, target.orders.len(), &cols),
    }
}

/// `H_n(f): H_n(C) -> H_n(D)`.
pub fn induced_map(f: &ChainMap, n: i64) -> HomologyMap {
    let hs = homology(f.source(), n);
    let ht = homology(f.target(), n);
    induced_by_matrix(&hs, &ht, &f.at(n))
}

/// Exactness of `A --alpha--> B --beta--> C` at `B`.
pub fn exact_at(alpha: &HomologyMap, beta: &HomologyMap) -> bool {
    assert_eq!(alpha.target_orders, beta.source_orders, "maps do not meet");
    let composite = alpha.then(beta);
    if !span_le(&composite.matrix, &composite.target_relations()) {
        return false;
    }
    alpha.image_log_size() == beta.kernel_log_size()
}

impl Homology {
    /// The identity map of this presentation.
    pub fn identity_map(&self) -> HomologyMap {
        let n = self.orders.len();
        HomologyMap {
            source_orders: self.orders.clone(),
            target_orders: self.orders.clone(),
            matrix: ZpeMatrix::identity(self.ring, n),
        }
    }
}
