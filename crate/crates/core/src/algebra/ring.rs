//! Finite commutative local rings presented by structure constants over
//! `Z/p^e`.
//!
//! An element is a coordinate vector in `(Z/p^e)^d`. Elements are also
//! addressed by an index: the coordinates read as base-`q` digits with the
//! first coordinate most significant. Index order is therefore lexicographic
//! order on coordinates, and index 0 is zero.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{inverse, kernel, rank, AlgebraError, Zpe, ZpeMatrix};

/// Upper bound on ring size; element indices must fit comfortably in `u32`.
pub const MAX_RING_SIZE: u64 = 1 << 24;
/// Rings up to this size get full operation tables.
const TABLE_LIMIT: u64 = 1024;

/// Serialized form of a ring: `mul[i][j]` is the coordinate vector of the
/// product of basis elements `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u32,
    pub e: u32,
    pub rank: usize,
    pub mul: Vec<Vec<Vec<i64>>>,
    pub one: Vec<i64>,
}

struct RingTable {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    residue: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteLocalRing {
    base: Zpe,
    rank: usize,
    /// `consts[(i*d + j)*d + k]`: coefficient of `b_k` in `b_i b_j`.
    consts: Vec<u32>,
    one: Vec<u32>,
    /// Residue map `A -> F_p` as a functional on coordinates mod `p`.
    residue_functional: Vec<u32>,
    /// `Z/p^e`-generators of the maximal ideal.
    maximal_ideal: Vec<Vec<u32>>,
    size: u64,
    table: Option<Arc<RingTable>>,
}

impl PartialEq for FiniteLocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.rank == other.rank && self.consts == other.consts && self.one == other.one
    }
}
impl Eq for FiniteLocalRing {}

impl fmt::Debug for FiniteLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteLocalRing(p={}, e={}, rank={}, |A|={})",
            self.base.p(),
            self.base.e(),
            self.rank,
            self.size
        )
    }
}

impl Serialize for FiniteLocalRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteLocalRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = RingSpec::deserialize(d)?;
        ring_from_spec(&spec).map_err(serde::de::Error::custom)
    }
}

/// Validate a ring spec and build the ring.
pub fn ring_from_spec(spec: &RingSpec) -> Result<FiniteLocalRing, AlgebraError> {
    let base = Zpe::new(spec.p, spec.e)?;
    let d = spec.rank;
    if d == 0 {
        return Err(AlgebraError::Shape("rank must be positive".into()));
    }
    if spec.mul.len() != d || spec.one.len() != d {
        return Err(AlgebraError::Shape(format!("expected {d} rows of structure constants and a unit of length {d}")));
    }
    let mut consts = vec![0u32; d * d * d];
    for (i, row) in spec.mul.iter().enumerate() {
        if row.len() != d {
            return Err(AlgebraError::Shape(format!("mul[{i}] has {} entries, expected {d}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != d {
                return Err(AlgebraError::Shape(format!("mul[{i}][{j}] has {} entries, expected {d}", v.len())));
            }
            for (k, &c) in v.iter().enumerate() {
                consts[(i * d + j) * d + k] = base.from_i64(c);
            }
        }
    }
    let one = spec.one.iter().map(|&c| base.from_i64(c)).collect();
    FiniteLocalRing::from_parts(base, d, consts, one)
}

impl FiniteLocalRing {
    /// Build and validate from raw structure constants.
    pub fn from_parts(base: Zpe, d: usize, consts: Vec<u32>, one: Vec<u32>) -> Result<Self, AlgebraError> {
        let size = (base.q() as u64).checked_pow(d as u32).filter(|&s| s <= MAX_RING_SIZE);
        let Some(size) = size else {
            return Err(AlgebraError::RingTooLarge);
        };
        let mut ring = FiniteLocalRing {
            base,
            rank: d,
            consts,
            one,
            residue_functional: Vec::new(),
            maximal_ideal: Vec::new(),
            size,
            table: None,
        };
        ring.check_axioms()?;
        ring.find_residue_map()?;
        if size <= TABLE_LIMIT {
            ring.table = Some(Arc::new(ring.build_table()));
        }
        Ok(ring)
    }

    /// `Z/p^e` as a ring of rank one.
    pub fn zpe(p: u32, e: u32) -> Result<Self, AlgebraError> {
        Self::from_parts(Zpe::new(p, e)?, 1, vec![1], vec![1])
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u32) -> Result<Self, AlgebraError> {
        Self::zpe(p, 1)
    }

    /// `Z/p^e[x]/(x^n)` with basis `1, x, ..., x^{n-1}`. With `e = 1, n = 2`
    /// this is the dual numbers `F_p[eps]`.
    pub fn truncated_polynomials(p: u32, e: u32, n: usize) -> Result<Self, AlgebraError> {
        let base = Zpe::new(p, e)?;
        let mut consts = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    consts[(i * n + j) * n + i + j] = 1;
                }
            }
        }
        let mut one = vec![0; n];
        one[0] = 1;
        Self::from_parts(base, n, consts, one)
    }

    pub fn dual_numbers(p: u32) -> Result<Self, AlgebraError> {
        Self::truncated_polynomials(p, 1, 2)
    }

    /// The trivial square-zero extension `T + M` with `(t, m)(t', m') = (tt',
    /// tm' + t'm)`. `action[i]` is the matrix of multiplication by the `i`th
    /// basis element of `T` on `M`.
    pub fn trivial_extension(t: &FiniteLocalRing, action: &[ZpeMatrix]) -> Result<Self, AlgebraError> {
        let dt = t.rank;
        if action.len() != dt {
            return Err(AlgebraError::Shape("one action matrix per basis element of T".into()));
        }
        let dm = action.first().map_or(0, |a| a.rows());
        if action.iter().any(|a| a.rows() != dm || a.cols() != dm || a.ring() != t.base) {
            return Err(AlgebraError::Shape("action matrices must be square over the base ring".into()));
        }
        let d = dt + dm;
        let mut consts = vec![0; d * d * d];
        for i in 0..dt {
            for j in 0..dt {
                for k in 0..dt {
                    consts[(i * d + j) * d + k] = t.consts[(i * dt + j) * dt + k];
                }
            }
            for a in 0..dm {
                for b in 0..dm {
                    let c = action[i].get(b, a);
                    consts[(i * d + dt + a) * d + dt + b] = c;
                    consts[((dt + a) * d + i) * d + dt + b] = c;
                }
            }
        }
        let mut one = t.one.clone();
        one.resize(d, 0);
        Self::from_parts(t.base, d, consts, one)
    }

    pub fn to_spec(&self) -> RingSpec {
        let d = self.rank;
        RingSpec {
            p: self.base.p(),
            e: self.base.e(),
            rank: d,
            mul: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).map(|k| self.consts[(i * d + j) * d + k] as i64).collect())
                        .collect()
                })
                .collect(),
            one: self.one.iter().map(|&x| x as i64).collect(),
        }
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let d = self.rank;
        let basis: Vec<Vec<u32>> = (0..d).map(|i| self.basis_vector(i)).collect();
        for i in 0..d {
            if self.mul_coords(&self.one, &basis[i]) != basis[i] {
                return Err(AlgebraError::NoUnit);
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.mul_coords(&basis[i], &basis[j]) != self.mul_coords(&basis[j], &basis[i]) {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        let products: Vec<Vec<Vec<u32>>> =
            (0..d).map(|i| (0..d).map(|j| self.mul_coords(&basis[i], &basis[j])).collect()).collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul_coords(&products[i][j], &basis[k]);
                    let right = self.mul_coords(&basis[i], &products[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Locality and the residue map, computed on `A/pA` with the linear
    /// Frobenius `x -> x^p`: its iterate `F^d` kills exactly the nilradical,
    /// and its fixed points form `F_p^s` where `s` is the number of local
    /// factors. The ring is local with residue field `F_p` iff `s = 1` and
    /// the nilradical has codimension one.
    fn find_residue_map(&mut self) -> Result<(), AlgebraError> {
        let d = self.rank;
        let p = self.base.p();
        let fp = Zpe::field(p)?;
        let frob_cols: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                let b = self.basis_vector(i);
                self.pow_coords(&b, p as u64).iter().map(|&x| x % p).collect()
            })
            .collect();
        let frob = ZpeMatrix::from_columns(fp, d, &frob_cols);
        let mut frob_d = ZpeMatrix::identity(fp, d);
        for _ in 0..d {
            frob_d = frob.mul(&frob_d);
        }
        let fixed = d - rank(&frob.sub(&ZpeMatrix::identity(fp, d)));
        if fixed != 1 {
            return Err(AlgebraError::NotLocal);
        }
        let nil = kernel(&frob_d).gens;
        if nil.cols() + 1 != d {
            return Err(AlgebraError::ResidueFieldNotPrime(d - nil.cols()));
        }
        // A/pA = F_p * 1 + nilradical; the residue of x is its coefficient on 1
        let one_mod_p: Vec<u32> = self.one.iter().map(|&x| x % p).collect();
        let frame = ZpeMatrix::column_vector(fp, &one_mod_p).hstack(&nil);
        let inv = inverse(&frame).ok_or(AlgebraError::NotLocal)?;
        self.residue_functional = inv.row(0).to_vec();
        let mut gens: Vec<Vec<u32>> = nil.columns();
        if self.base.e() > 1 {
            gens.extend((0..d).map(|i| {
                let mut v = vec![0; d];
                v[i] = p;
                v
            }));
        }
        self.maximal_ideal = gens;
        Ok(())
    }

    fn build_table(&self) -> RingTable {
        let n = self.size as usize;
        let coords: Vec<Vec<u32>> = (0..n as u32).map(|x| self.coords(x)).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let s = self.encode(&self.add_coords(&coords[a], &coords[b]));
                let m = self.encode(&self.mul_coords(&coords[a], &coords[b]));
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = m;
                mul[b * n + a] = m;
            }
        }
        let neg = (0..n).map(|a| self.encode(&coords[a].iter().map(|&x| self.base.neg(x)).collect::<Vec<_>>())).collect();
        let residue: Vec<u32> = (0..n).map(|a| self.residue_of_coords(&coords[a])).collect();
        let one = self.encode(&self.one);
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if residue[a] != 0 && inv[a] == u32::MAX {
                if let Some(b) = (0..n).find(|&b| mul[a * n + b] == one) {
                    inv[a] = b as u32;
                    inv[b] = a as u32;
                }
            }
        }
        RingTable { add, mul, neg, inv, residue }
    }

    pub fn base(&self) -> Zpe {
        self.base
    }
    pub fn p(&self) -> u32 {
        self.base.p()
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.size
    }
    /// Number of units, `|A| (1 - 1/p)`.
    pub fn unit_count(&self) -> u64 {
        self.size / self.p() as u64 * (self.p() as u64 - 1)
    }
    /// Number of elements of the maximal ideal, `|A| / p`.
    pub fn maximal_ideal_size(&self) -> u64 {
        self.size / self.p() as u64
    }
    /// `Z/p^e`-module generators of the maximal ideal.
    pub fn maximal_ideal_basis(&self) -> &[Vec<u32>] {
        &self.maximal_ideal
    }
    pub fn structure_constants(&self) -> &[u32] {
        &self.consts
    }
    pub fn is_field(&self) -> bool {
        self.size == self.p() as u64
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    // ---- coordinate arithmetic ----

    pub fn add_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.rank;
        let q = self.base.q() as u64;
        let mut out = vec![0u64; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x as u64 * y as u64 % q;
                let row = &self.consts[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, &c) in out.iter_mut().zip(row) {
                    *o = (*o + xy * c as u64) % q;
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    fn pow_coords(&self, a: &[u32], mut k: u64) -> Vec<u32> {
        let mut result = self.one.clone();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_coords(&result, &base);
            }
            base = self.mul_coords(&base, &base);
            k >>= 1;
        }
        result
    }

    pub fn residue_of_coords(&self, a: &[u32]) -> u32 {
        let p = self.p() as u64;
        let s: u64 = a.iter().zip(&self.residue_functional).map(|(&x, &l)| (x as u64 % p) * l as u64).sum();
        (s % p) as u32
    }

    // ---- indexed elements ----

    pub fn encode(&self, coords: &[u32]) -> u32 {
        let q = self.base.q() as u64;
        coords.iter().fold(0u64, |acc, &c| acc * q + c as u64) as u32
    }

    pub fn coords(&self, mut x: u32) -> Vec<u32> {
        let q = self.base.q();
        let mut v = vec![0; self.rank];
        for slot in v.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        v
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        self.encode(&self.one)
    }

    /// Image of `c` under `Z/p^e -> A`.
    pub fn from_base(&self, c: u32) -> u32 {
        let v: Vec<u32> = self.one.iter().map(|&x| self.base.mul(x, c)).collect();
        self.encode(&v)
    }

    pub fn from_i64(&self, c: i64) -> u32 {
        self.from_base(self.base.from_i64(c))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t.add[a as usize * self.size as usize + b as usize],
            None => self.encode(&self.add_coords(&self.coords(a), &self.coords(b))),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t.mul[a as usize * self.size as usize + b as usize],
            None => self.encode(&self.mul_coords(&self.coords(a), &self.coords(b))),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.table {
            Some(t) => t.neg[a as usize],
            None => {
                let v: Vec<u32> = self.coords(a).iter().map(|&x| self.base.neg(x)).collect();
                self.encode(&v)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Image in the residue field `F_p`.
    #[inline]
    pub fn residue(&self, a: u32) -> u32 {
        match &self.table {
            Some(t) => t.residue[a as usize],
            None => self.residue_of_coords(&self.coords(a)),
        }
    }

    #[inline]
    pub fn is_unit(&self, a: u32) -> bool {
        self.residue(a) != 0
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut r = self.one();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        match &self.table {
            Some(t) => Some(t.inv[a as usize]),
            None => Some(self.pow(a, self.unit_count() - 1)),
        }
    }

    /// All elements in index (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    /// Elements of the maximal ideal in index order.
    pub fn maximal_ideal_elements(&self) -> Vec<u32> {
        self.elements().filter(|&x| !self.is_unit(x)).collect()
    }

    /// Elements killed by every element of the maximal ideal.
    pub fn socle_elements(&self) -> Vec<u32> {
        let gens: Vec<u32> = self.maximal_ideal.iter().map(|g| self.encode(g)).collect();
        self.elements().filter(|&x| gens.iter().all(|&g| self.mul(g, x) == 0)).collect()
    }
}
