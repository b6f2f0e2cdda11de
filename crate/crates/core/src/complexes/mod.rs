//! Bounded chain and cochain complexes of finite free `Z/p^e`-modules.
//!
//! Cochain complexes are stored as chain complexes via `C^i = C_{-i}`.
//! Differentials are matrices acting on column vectors.

mod homology;
mod ops;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{kernel, AlgebraError, Zpe, ZpeMatrix};

pub use homology::{exact_at, homology, induced_by_matrix, induced_map, Homology, HomologyMap};
pub use ops::{cone, cone_les_exact, internal_hom, truncate, LesNode, Truncation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential {0} has the wrong shape")]
    Shape(i64),
    #[error("d o d is nonzero at degree {0}")]
    NotAComplex(i64),
    #[error("map does not commute with differentials at degree {0}")]
    NotAChainMap(i64),
    #[error("complexes have different coefficient rings")]
    RingMismatch,
    #[error("truncation at degree {0} is not a free module")]
    NonFreeTruncation(i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A bounded chain complex `C_lo <- ... <- C_hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct ChainComplex {
    ring: Zpe,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is the boundary `C_{lo+k+1} -> C_{lo+k}`.
    diffs: Vec<ZpeMatrix>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    ring: Zpe,
    lo: i64,
    ranks: Vec<usize>,
    differentials: Vec<Vec<Vec<u32>>>,
}

impl TryFrom<ComplexRepr> for ChainComplex {
    type Error = ComplexError;
    fn try_from(r: ComplexRepr) -> Result<Self, Self::Error> {
        let diffs = r
            .differentials
            .iter()
            .map(|rows| {
                let rows: Vec<Vec<i64>> = rows.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect();
                ZpeMatrix::from_rows(r.ring, &rows)
            })
            .collect::<Result<Vec<_>, _>>()?;
        ChainComplex::new(r.ring, r.lo, r.ranks, diffs)
    }
}

impl From<ChainComplex> for ComplexRepr {
    fn from(c: ChainComplex) -> Self {
        ComplexRepr {
            ring: c.ring,
            lo: c.lo,
            differentials: c.diffs.iter().map(|d| (0..d.rows()).map(|i| d.row(i).to_vec()).collect()).collect(),
            ranks: c.ranks,
        }
    }
}

impl ChainComplex {
    /// Build and validate. `diffs[k]` maps degree `lo+k+1` to `lo+k`; a
    /// `0 x n` or `n x 0` matrix stands for a map to or from zero.
    pub fn new(ring: Zpe, lo: i64, ranks: Vec<usize>, diffs: Vec<ZpeMatrix>) -> Result<Self, ComplexError> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(ComplexError::Shape(lo));
        }
        for (k, d) in diffs.iter().enumerate() {
            let n = lo + k as i64 + 1;
            if d.ring() != ring {
                return Err(ComplexError::RingMismatch);
            }
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(ComplexError::Shape(n));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k]).is_zero() {
                return Err(ComplexError::NotAComplex(lo + k as i64 + 1));
            }
        }
        Ok(ChainComplex { ring, lo, ranks, diffs })
    }

    pub fn zero(ring: Zpe) -> Self {
        ChainComplex { ring, lo: 0, ranks: vec![0], diffs: Vec::new() }
    }

    /// A free module of the given rank in a single degree.
    pub fn concentrated(ring: Zpe, degree: i64, rank: usize) -> Self {
        ChainComplex { ring, lo: degree, ranks: vec![rank], diffs: Vec::new() }
    }

    pub fn ring(&self) -> Zpe {
        self.ring
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Rank of `C_n` (zero outside the stored range).
    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    /// The boundary `C_n -> C_{n-1}`, zero outside the stored range.
    pub fn boundary(&self, n: i64) -> ZpeMatrix {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            ZpeMatrix::zeros(self.ring, self.rank(n - 1), self.rank(n))
        }
    }

    /// `C[k]` with `C[k]_n = C_{n-k}` and differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { self.ring.q() - 1 };
        ChainComplex {
            ring: self.ring,
            lo: self.lo + k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(sign)).collect(),
        }
    }

    /// Restrict or extend the stored range to `[lo, hi]`, padding with zero
    /// modules. Dropping nonzero modules is the caller's responsibility.
    pub fn with_range(&self, lo: i64, hi: i64) -> ChainComplex {
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.boundary(n)).collect();
        ChainComplex { ring: self.ring, lo, ranks, diffs }
    }

    /// `sum (-1)^n rank C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64).sum()
    }

    /// A random complex with the given ranks: each boundary is a random
    /// combination of kernel generators of the one below.
    pub fn random<R: Rng>(ring: Zpe, lo: i64, ranks: &[usize], density: f64, rng: &mut R) -> ChainComplex {
        let mut diffs: Vec<ZpeMatrix> = Vec::new();
        for k in 1..ranks.len() {
            let (rows, cols) = (ranks[k - 1], ranks[k]);
            let d = match diffs.last() {
                None => ZpeMatrix::from_fn(ring, rows, cols, |_, _| {
                    if rng.gen_bool(density) { rng.gen_range(0..ring.q()) } else { 0 }
                }),
                Some(prev) => {
                    let kgens = kernel(prev).gens;
                    let coeffs = ZpeMatrix::from_fn(ring, kgens.cols(), cols, |_, _| {
                        if rng.gen_bool(density) { rng.gen_range(0..ring.q()) } else { 0 }
                    });
                    kgens.mul(&coeffs)
                }
            };
            diffs.push(d);
        }
        ChainComplex::new(ring, lo, ranks.to_vec(), diffs).expect("random complex is valid")
    }
}

/// A bounded cochain complex `C^lo -> ... -> C^hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainComplex {
    chain: ChainComplex,
}

impl CochainComplex {
    /// `diffs[k]` maps degree `lo+k` to `lo+k+1`.
    pub fn new(ring: Zpe, lo: i64, ranks: Vec<usize>, diffs: Vec<ZpeMatrix>) -> Result<Self, ComplexError> {
        let hi = lo + ranks.len() as i64 - 1;
        let mut ranks = ranks;
        ranks.reverse();
        let mut diffs = diffs;
        diffs.reverse();
        ChainComplex::new(ring, -hi, ranks, diffs).map(|chain| CochainComplex { chain }).map_err(|e| match e {
            ComplexError::Shape(n) => ComplexError::Shape(-n),
            ComplexError::NotAComplex(n) => ComplexError::NotAComplex(-n),
            other => other,
        })
    }

    pub fn from_chain(chain: ChainComplex) -> Self {
        CochainComplex { chain }
    }
    pub fn as_chain(&self) -> &ChainComplex {
        &self.chain
    }
    pub fn ring(&self) -> Zpe {
        self.chain.ring
    }
    pub fn lo(&self) -> i64 {
        -self.chain.hi()
    }
    pub fn hi(&self) -> i64 {
        -self.chain.lo
    }
    pub fn rank(&self, n: i64) -> usize {
        self.chain.rank(-n)
    }
    /// The differential `C^n -> C^{n+1}`.
    pub fn differential(&self, n: i64) -> ZpeMatrix {
        self.chain.boundary(-n)
    }
    pub fn cohomology(&self, n: i64) -> Homology {
        homology(&self.chain, -n)
    }
    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }
}

/// A chain map given by one matrix per degree of the source range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<ZpeMatrix>,
}

impl ChainMap {
    /// `maps[k]` is `C_{lo+k} -> D_{lo+k}` with `lo` the source's lowest degree.
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<ZpeMatrix>) -> Result<Self, ComplexError> {
        if source.ring != target.ring {
            return Err(ComplexError::RingMismatch);
        }
        if maps.len() != source.ranks.len() {
            return Err(ComplexError::Shape(source.lo));
        }
        for (k, m) in maps.iter().enumerate() {
            let n = source.lo + k as i64;
            if m.rows() != target.rank(n) || m.cols() != source.rank(n) || m.ring() != source.ring {
                return Err(ComplexError::Shape(n));
            }
        }
        let f = ChainMap { source, target, maps };
        for n in f.source.lo..=f.source.hi() + 1 {
            let left = f.target.boundary(n).mul(&f.at(n));
            let right = f.at(n - 1).mul(&f.source.boundary(n));
            if left != right {
                return Err(ComplexError::NotAChainMap(n));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c.ranks.iter().map(|&r| ZpeMatrix::identity(c.ring, r)).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let maps = (source.lo..=source.hi())
            .map(|n| ZpeMatrix::zeros(source.ring, target.rank(n), source.rank(n)))
            .collect();
        ChainMap { source: source.clone(), target: target.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }
    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// The component `C_n -> D_n` (zero outside the source range).
    pub fn at(&self, n: i64) -> ZpeMatrix {
        if n < self.source.lo || n > self.source.hi() {
            ZpeMatrix::zeros(self.source.ring, self.target.rank(n), self.source.rank(n))
        } else {
            self.maps[(n - self.source.lo) as usize].clone()
        }
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap, ComplexError> {
        let maps = (self.source.lo..=self.source.hi()).map(|n| after.at(n).mul(&self.at(n))).collect();
        ChainMap::new(self.source.clone(), after.target.clone(), maps)
    }
}

/// A cochain map, stored as a chain map on the reindexed complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    chain: ChainMap,
}

impl CochainMap {
    /// `maps[k]` is `C^{lo+k} -> D^{lo+k}` with `lo` the source's lowest degree.
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<ZpeMatrix>) -> Result<Self, ComplexError> {
        let mut maps = maps;
        maps.reverse();
        ChainMap::new(source.chain, target.chain, maps).map(|chain| CochainMap { chain }).map_err(|e| match e {
            ComplexError::NotAChainMap(n) => ComplexError::NotAChainMap(-n),
            ComplexError::Shape(n) => ComplexError::Shape(-n),
            other => other,
        })
    }
    pub fn as_chain(&self) -> &ChainMap {
        &self.chain
    }
    pub fn source(&self) -> CochainComplex {
        CochainComplex::from_chain(self.chain.source.clone())
    }
    pub fn target(&self) -> CochainComplex {
        CochainComplex::from_chain(self.chain.target.clone())
    }
    pub fn at(&self, n: i64) -> ZpeMatrix {
        self.chain.at(-n)
    }
    pub fn induced(&self, n: i64) -> HomologyMap {
        induced_map(&self.chain, -n)
    }
}
