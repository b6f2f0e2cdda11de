//! Dense matrices over `Z/p^e`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Zpe};

/// A dense row-major matrix over `Z/p^e`. Also used as the matrix of a
/// `Z/p^e`-linear map between free modules (columns = source coordinates).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr")]
pub struct ZpeMatrix {
    ring: Zpe,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

#[derive(Deserialize)]
struct MatrixRepr {
    ring: Zpe,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl TryFrom<MatrixRepr> for ZpeMatrix {
    type Error = AlgebraError;
    fn try_from(m: MatrixRepr) -> Result<Self, Self::Error> {
        if m.data.iter().any(|&x| x >= m.ring.q()) {
            return Err(AlgebraError::Shape("entry out of range".into()));
        }
        ZpeMatrix::from_vec(m.ring, m.rows, m.cols, m.data)
    }
}

impl fmt::Debug for ZpeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZpeMatrix {}x{} mod {}", self.rows, self.cols, self.ring.q())?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

impl ZpeMatrix {
    pub fn zeros(ring: Zpe, rows: usize, cols: usize) -> Self {
        ZpeMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: Zpe, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(ring: Zpe, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % ring.q()).collect();
        Ok(ZpeMatrix { ring, rows, cols, data })
    }

    /// Build from signed integer rows; all rows must have equal length.
    pub fn from_rows(ring: Zpe, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| ring.from_i64(v)).collect();
        Ok(ZpeMatrix { ring, rows: r, cols: c, data })
    }

    pub fn from_fn(ring: Zpe, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % ring.q());
            }
        }
        ZpeMatrix { ring, rows, cols, data }
    }

    /// A single column vector.
    pub fn column_vector(ring: Zpe, v: &[u32]) -> Self {
        ZpeMatrix { ring, rows: v.len(), cols: 1, data: v.iter().map(|x| x % ring.q()).collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(ring: Zpe, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % ring.q();
            }
        }
        m
    }

    #[inline]
    pub fn ring(&self) -> Zpe {
        self.ring
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
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub(crate) fn data_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.ring.q();
    }
    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.ring.add(self.data[k], v % self.ring.q());
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ZpeMatrix) -> ZpeMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let q = self.ring.q() as u64;
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as u64;
                }
                // keep accumulators bounded
                if k % 4096 == 4095 {
                    acc.iter_mut().for_each(|s| *s %= q);
                }
            }
            for (j, s) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (s % q) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let q = self.ring.q() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % q).sum();
                (s % q) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &ZpeMatrix) -> ZpeMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.add(a, b)).collect();
        ZpeMatrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ZpeMatrix) -> ZpeMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.sub(a, b)).collect();
        ZpeMatrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> ZpeMatrix {
        let r = self.ring;
        let data = self.data.iter().map(|&a| r.mul(a, c % r.q())).collect();
        ZpeMatrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> ZpeMatrix {
        self.scale(self.ring.q() - 1)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ZpeMatrix) -> ZpeMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.ring, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &ZpeMatrix) -> ZpeMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ZpeMatrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &ZpeMatrix) -> ZpeMatrix {
        let mut m = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ZpeMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ZpeMatrix {
        let mut m = Self::zeros(self.ring, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> ZpeMatrix {
        ZpeMatrix::from_fn(self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> ZpeMatrix {
        let mut m = Self::zeros(self.ring, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            m.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(i));
        }
        m
    }

    /// Reduce entries modulo a smaller power `p^k` and reinterpret in `Z/p^k`.
    pub fn reduce_to(&self, target: Zpe) -> ZpeMatrix {
        assert_eq!(self.ring.p(), target.p());
        assert!(target.e() <= self.ring.e());
        let data = self.data.iter().map(|&a| a % target.q()).collect();
        ZpeMatrix { ring: target, rows: self.rows, cols: self.cols, data }
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }
}
