//! Matrices over a [`FiniteLocalRing`] and enumeration of small matrix groups.
//!
//! An [`RMatrix`] stores element indices only; the ring is passed to every
//! operation. This keeps matrices cheap to hash, compare and collect in the
//! large enumerations of the deformation and pseudo-character modules.
//! Matrix order is lexicographic on row-major entries, which coincides with
//! lexicographic order on coordinates.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{rank, AlgebraError, FiniteLocalRing, Zpe, ZpeMatrix};
use crate::par;

/// Default cap on the number of candidates an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: SmallVec<[u32; 9]>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: SmallVec::from_elem(0, rows * cols) }
    }

    pub fn identity(ring: &FiniteLocalRing, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        let one = ring.one();
        for i in 0..n {
            m.data[i * n + i] = one;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[u32]) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(RMatrix { rows, cols, data: SmallVec::from_slice(entries) })
    }

    /// The scalar matrix `a * I_n`.
    pub fn scalar(n: usize, a: u32) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    /// Matrix from rows of coordinate vectors.
    pub fn from_coords(ring: &FiniteLocalRing, rows: &[Vec<Vec<u32>>]) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = SmallVec::new();
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::Shape("ragged matrix".into()));
            }
            for v in row {
                if v.len() != ring.rank() {
                    return Err(AlgebraError::Shape(format!("entry has {} coordinates, ring rank is {}", v.len(), ring.rank())));
                }
                let q = ring.base().q();
                let v: Vec<u32> = v.iter().map(|&x| x % q).collect();
                data.push(ring.encode(&v));
            }
        }
        Ok(RMatrix { rows: r, cols: c, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, ring: &FiniteLocalRing, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = ring.add(out.data[idx], ring.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, ring: &FiniteLocalRing, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| ring.add(a, b)).collect();
        RMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, ring: &FiniteLocalRing, other: &RMatrix) -> RMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| ring.sub(a, b)).collect();
        RMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, ring: &FiniteLocalRing, c: u32) -> RMatrix {
        let data = self.data.iter().map(|&a| ring.mul(c, a)).collect();
        RMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, ring: &FiniteLocalRing) -> RMatrix {
        let data = self.data.iter().map(|&a| ring.neg(a)).collect();
        RMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self, ring: &FiniteLocalRing) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| ring.add(acc, self.get(i, i)))
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_identity(&self, ring: &FiniteLocalRing) -> bool {
        self.is_square() && *self == RMatrix::identity(ring, self.rows)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j) == 0))
    }

    /// Entrywise image in the residue field, as a matrix over `F_p`.
    pub fn residue(&self, ring: &FiniteLocalRing) -> ZpeMatrix {
        let fp = Zpe::field(ring.p()).expect("ring characteristic is an odd prime");
        ZpeMatrix::from_fn(fp, self.rows, self.cols, |i, j| ring.residue(self.get(i, j)))
    }

    /// Apply an entrywise map, e.g. a ring homomorphism given on indices.
    pub fn map_entries(&self, f: impl Fn(u32) -> u32) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f(a)).collect() }
    }

    /// Whether the residue matrix is invertible (equivalently, `self` is).
    pub fn is_invertible(&self, ring: &FiniteLocalRing) -> bool {
        self.is_square() && rank(&self.residue(ring)) == self.rows
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self, ring: &FiniteLocalRing) -> Result<RMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RMatrix::identity(ring, n);
        for c in 0..n {
            let piv = (c..n).find(|&i| ring.is_unit(a.get(i, c))).ok_or(AlgebraError::NotInvertible)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let s = ring.inv(a.get(c, c)).expect("pivot is a unit");
            for j in 0..n {
                a.data[c * n + j] = ring.mul(s, a.data[c * n + j]);
                inv.data[c * n + j] = ring.mul(s, inv.data[c * n + j]);
            }
            for i in 0..n {
                let f = a.get(i, c);
                if i == c || f == 0 {
                    continue;
                }
                let f = ring.neg(f);
                for j in 0..n {
                    a.data[i * n + j] = ring.add(a.data[i * n + j], ring.mul(f, a.data[c * n + j]));
                    inv.data[i * n + j] = ring.add(inv.data[i * n + j], ring.mul(f, inv.data[c * n + j]));
                }
            }
        }
        Ok(inv)
    }

    /// `g * self * g^{-1}` given `g` and its inverse.
    pub fn conjugate(&self, ring: &FiniteLocalRing, g: &RMatrix, g_inv: &RMatrix) -> RMatrix {
        g.mul(ring, self).mul(ring, g_inv)
    }

    /// Coordinates of the entries, row-major, as nested vectors.
    pub fn to_coords(&self, ring: &FiniteLocalRing) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| ring.coords(self.get(i, j))).collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Units of the ring, as `1x1` matrices.
    Units,
    /// `GL_n(A)`.
    GLn,
    /// `ker(GL_n(A) -> GL_n(k))`, i.e. `1 + M_n(m_A)`.
    KernelGLn,
}

/// Product of the list lengths, i.e. the number of tuples an odometer over
/// the lists visits.
pub fn odometer_len<T>(lists: &[Vec<T>]) -> u128 {
    lists.iter().map(|l| l.len() as u128).product()
}

/// Decode a mixed-radix index into one choice per list; the first list is the
/// most significant digit, so increasing index is lexicographic order.
pub(crate) fn odometer_pick<T: Copy>(lists: &[Vec<T>], mut idx: u64, out: &mut [T]) {
    for (slot, l) in out.iter_mut().zip(lists).rev() {
        let n = l.len() as u64;
        *slot = l[(idx % n) as usize];
        idx /= n;
    }
}

pub(crate) fn check_budget(needed: u128, budget: u64) -> Result<(), AlgebraError> {
    if needed > budget as u128 {
        Err(AlgebraError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// All elements of a small matrix group in lexicographic order.
pub fn enumerate_small_group(
    kind: GroupKind,
    ring: &FiniteLocalRing,
    n: usize,
    budget: u64,
) -> Result<Vec<RMatrix>, AlgebraError> {
    match kind {
        GroupKind::Units => {
            check_budget(ring.size() as u128, budget)?;
            Ok(ring.elements().filter(|&x| ring.is_unit(x)).map(|x| RMatrix::scalar(1, x)).collect())
        }
        GroupKind::GLn => {
            let all: Vec<u32> = ring.elements().collect();
            let lists = vec![all; n * n];
            check_budget(odometer_len(&lists), budget)?;
            let total = odometer_len(&lists) as u64;
            Ok(par::filter_map_range(total, |idx| {
                let mut e = vec![0; n * n];
                odometer_pick(&lists, idx, &mut e);
                let m = RMatrix::from_entries(n, n, &e).unwrap();
                m.is_invertible(ring).then_some(m)
            }))
        }
        GroupKind::KernelGLn => {
            let lists = kernel_entry_lists(ring, n);
            check_budget(odometer_len(&lists), budget)?;
            let total = odometer_len(&lists) as u64;
            Ok(par::filter_map_range(total, |idx| {
                let mut e = vec![0; n * n];
                odometer_pick(&lists, idx, &mut e);
                Some(RMatrix::from_entries(n, n, &e).unwrap())
            }))
        }
    }
}

/// Per-entry candidate lists for `1 + M_n(m_A)`, each sorted so that the
/// odometer runs in lexicographic order.
pub(crate) fn kernel_entry_lists(ring: &FiniteLocalRing, n: usize) -> Vec<Vec<u32>> {
    let m = ring.maximal_ideal_elements();
    let mut diag: Vec<u32> = m.iter().map(|&x| ring.add(ring.one(), x)).collect();
    diag.sort_unstable();
    (0..n * n).map(|k| if k / n == k % n { diag.clone() } else { m.clone() }).collect()
}

/// Per-entry candidate lists for all lifts of a residual matrix: entry `(i,j)`
/// ranges over the elements with the given residue.
pub(crate) fn fiber_entry_lists(ring: &FiniteLocalRing, residual: &ZpeMatrix) -> Vec<Vec<u32>> {
    let mut by_residue: Vec<Vec<u32>> = vec![Vec::new(); ring.p() as usize];
    for x in ring.elements() {
        by_residue[ring.residue(x) as usize].push(x);
    }
    residual.data().iter().map(|&r| by_residue[r as usize].clone()).collect()
}
