//! `GL_n` pseudo-characters as tables of traces of words evaluated on
//! tuples of group elements.

mod axioms;
mod reconstruct;

use std::io::{self, Write};

use thiserror::Error;

use crate::algebra::{check_budget, AlgebraError, FiniteLocalRing, RMatrix};
use crate::deformation::DeformationError;
use crate::galois::{FiniteGroup, GaloisError};
use crate::par;

pub use axioms::{reflection_check, verify_axioms, AxiomReport, AxiomViolation, ReflectionReport};
pub use reconstruct::{conj_equivalent, reconstruct, Reconstruction, TupleClassWitness};

pub const DEFAULT_MAX_TUPLE: usize = 3;
pub const DEFAULT_MAX_WORD: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PseudocharError {
    #[error("no lift of the generator images matches the table")]
    NoMatch,
    #[error("no lift of the image of element {0} matches the table")]
    NoMatchAt(usize),
    #[error("{count} lifts of the image of element {element} match the table")]
    Ambiguous { element: usize, count: usize },
    #[error("the residual representation has a non-scalar commutant")]
    NotScalarCommutant,
    #[error("{0} generators need tuples of size {1}, above the table bound")]
    TupleBoundTooSmall(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
}

/// Words of length at most `max_len` over `m` letters, ordered by length
/// and then lexicographically. Letters are `0..m`.
#[derive(Clone, Debug)]
pub(crate) struct Words {
    m: usize,
    offsets: Vec<usize>,
}

impl Words {
    pub(crate) fn new(m: usize, max_len: usize) -> Self {
        let mut offsets = vec![0];
        let mut level = 1usize;
        for _ in 0..=max_len {
            let last = *offsets.last().unwrap();
            offsets.push(last + level);
            level *= m;
        }
        Words { m, offsets }
    }
    pub(crate) fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }
    pub(crate) fn index(&self, w: &[usize]) -> usize {
        self.offsets[w.len()] + w.iter().fold(0, |acc, &l| acc * self.m + l)
    }
    pub(crate) fn word(&self, mut i: usize) -> Vec<usize> {
        let len = self.offsets.iter().rposition(|&o| o <= i).unwrap();
        i -= self.offsets[len];
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = i % self.m;
            i /= self.m;
        }
        w
    }
    pub(crate) fn all(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| self.word(i)).collect()
    }
}

/// Traces of every word in the letters `tuple`, indexed as in [`Words`].
pub(crate) fn word_traces(ring: &FiniteLocalRing, tuple: &[RMatrix], max_len: usize) -> Vec<u32> {
    let n = tuple.first().map_or(0, |m| m.rows());
    let mut out = Vec::new();
    let mut level = vec![RMatrix::identity(ring, n)];
    for len in 0..=max_len {
        out.extend(level.iter().map(|m| m.trace(ring)));
        if len == max_len {
            break;
        }
        level = level.iter().flat_map(|p| tuple.iter().map(move |t| p.mul(ring, t))).collect();
    }
    out
}

/// Whether the word traces of `tuple` equal `expected`, stopping at the first
/// mismatch.
pub(crate) fn word_traces_match(ring: &FiniteLocalRing, tuple: &[RMatrix], expected: &[u32], max_len: usize) -> bool {
    let n = tuple.first().map_or(0, |m| m.rows());
    let mut level = vec![RMatrix::identity(ring, n)];
    let mut i = 0;
    for len in 0..=max_len {
        for m in &level {
            if m.trace(ring) != expected[i] {
                return false;
            }
            i += 1;
        }
        if len == max_len {
            break;
        }
        level = level.iter().flat_map(|p| tuple.iter().map(move |t| p.mul(ring, t))).collect();
    }
    true
}

/// `theta(w; gamma_1 .. gamma_m)` for `m <= max_tuple` and words of length at
/// most `max_word`. Tuples are indexed base `|Gamma|` with the first entry
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCharacterTable {
    ring: FiniteLocalRing,
    n: usize,
    order: usize,
    max_tuple: usize,
    max_word: usize,
    /// `values[m - 1][tuple * words(m) + word]`.
    values: Vec<Vec<u32>>,
}

impl PseudoCharacterTable {
    pub fn ring(&self) -> &FiniteLocalRing {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn max_tuple(&self) -> usize {
        self.max_tuple
    }
    pub fn max_word(&self) -> usize {
        self.max_word
    }

    pub(crate) fn words(&self, m: usize) -> Words {
        Words::new(m, self.max_word)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    pub fn tuple_count(&self, m: usize) -> usize {
        self.order.pow(m as u32)
    }

    pub(crate) fn decode_tuple(&self, mut t: usize, m: usize) -> Vec<usize> {
        let mut out = vec![0; m];
        for slot in out.iter_mut().rev() {
            *slot = t % self.order;
            t /= self.order;
        }
        out
    }

    /// Value at a word (letters `0..m`) and a tuple of length `m`.
    pub fn value(&self, word: &[usize], tuple: &[usize]) -> u32 {
        let m = tuple.len();
        self.at(m, self.words(m).index(word), self.tuple_index(tuple))
    }

    pub(crate) fn at(&self, m: usize, word: usize, tuple: usize) -> u32 {
        let w = self.words(m).len();
        self.values[m - 1][tuple * w + word]
    }

    /// All word values for one tuple.
    pub(crate) fn row(&self, tuple: &[usize]) -> &[u32] {
        let m = tuple.len();
        let w = self.words(m).len();
        let t = self.tuple_index(tuple);
        &self.values[m - 1][t * w..(t + 1) * w]
    }

    /// Overwrite one value.
    pub fn set(&mut self, word: &[usize], tuple: &[usize], v: u32) {
        let m = tuple.len();
        let w = self.words(m);
        let i = self.tuple_index(tuple) * w.len() + w.index(word);
        self.values[m - 1][i] = v;
    }

    /// Entrywise reduction to the residue field.
    pub fn residue(&self) -> PseudoCharacterTable {
        let k = FiniteLocalRing::prime_field(self.ring.p()).expect("residue field");
        PseudoCharacterTable {
            ring: k,
            values: self.values.iter().map(|v| v.iter().map(|&x| self.ring.residue(x)).collect()).collect(),
            ..self.clone()
        }
    }

    /// Stream the table as JSON, one entry per `(m, word, tuple)`, with
    /// 1-based letters and the value as ring coordinates.
    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(
            out,
            "{{\"n\":{},\"p\":{},\"order\":{},\"max_tuple\":{},\"max_word\":{},\"entries\":[",
            self.n,
            self.ring.p(),
            self.order,
            self.max_tuple,
            self.max_word
        )?;
        let mut first = true;
        for m in 1..=self.max_tuple {
            let words = self.words(m).all();
            for t in 0..self.tuple_count(m) {
                let tuple = self.decode_tuple(t, m);
                for (wi, w) in words.iter().enumerate() {
                    if !first {
                        out.write_all(b",")?;
                    }
                    first = false;
                    let letters: Vec<usize> = w.iter().map(|l| l + 1).collect();
                    let value = self.ring.coords(self.at(m, wi, t));
                    write!(
                        out,
                        "{{\"m\":{m},\"word\":{},\"tuple\":{},\"value\":{}}}",
                        serde_json::to_string(&letters)?,
                        serde_json::to_string(&tuple)?,
                        serde_json::to_string(&value)?
                    )?;
                }
            }
        }
        out.write_all(b"]}")
    }
}

/// Number of stored values for the given bounds.
pub fn table_size(order: usize, max_tuple: usize, max_word: usize) -> u128 {
    (1..=max_tuple).map(|m| (order as u128).pow(m as u32) * Words::new(m, max_word).len() as u128).sum()
}

/// The table of a map `rho: Gamma -> GL_n(A)` given in full. Entry
/// `(w, gamma)` is the trace of `w` evaluated on
/// `(rho(P_{i-1})^{-1} rho(P_i))_i` with `P_i = gamma_1 .. gamma_i`, which is
/// `(rho(gamma_i))_i` when `rho` is a homomorphism.
pub fn from_quasi_lift(
    group: &FiniteGroup,
    ring: &FiniteLocalRing,
    table: &[RMatrix],
    max_tuple: usize,
    max_word: usize,
    budget: u64,
) -> Result<PseudoCharacterTable, PseudocharError> {
    if table.len() != group.order() {
        return Err(PseudocharError::Shape("one matrix per group element".into()));
    }
    check_budget(table_size(group.order(), max_tuple, max_word), budget)?;
    let n = table[group.identity()].rows();
    let inverses = table.iter().map(|m| m.inverse(ring)).collect::<Result<Vec<_>, _>>()?;
    let order = group.order();
    let mut values = Vec::with_capacity(max_tuple);
    for m in 1..=max_tuple {
        let count = order.pow(m as u32);
        let rows = par::map_range(count, |t| {
            let mut gammas = vec![0; m];
            let mut rest = t;
            for slot in gammas.iter_mut().rev() {
                *slot = rest % order;
                rest /= order;
            }
            let mut prefix = group.identity();
            let tuple: Vec<RMatrix> = gammas
                .iter()
                .map(|&g| {
                    let next = group.mul(prefix, g);
                    let step = inverses[prefix].mul(ring, &table[next]);
                    prefix = next;
                    step
                })
                .collect();
            word_traces(ring, &tuple, max_word)
        });
        values.push(rows.concat());
    }
    Ok(PseudoCharacterTable { ring: ring.clone(), n, order, max_tuple, max_word, values })
}
