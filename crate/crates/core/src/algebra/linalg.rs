//! Exact linear algebra over `Z/p^e`: echelon forms over `F_p`, Smith normal
//! form over `Z/p^e`, kernels, spans and linear solving.
//!
//! Submodules of `(Z/p^e)^n` are carried around as generator matrices whose
//! columns span them. Their size is `p^log_size`, computed from the Smith
//! exponents of the generator matrix; over a field `log_size` is the rank.

use super::{AlgebraError, Zpe, ZpeMatrix};
use crate::par;

/// Smith normal form `L * m * R = D` where `D` is diagonal with entries
/// `p^{a_0}, p^{a_1}, ...` and `a_0 <= a_1 <= ...`. Exponent `e` marks a zero
/// diagonal entry.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub exponents: Vec<u32>,
    pub diagonal: ZpeMatrix,
    pub left: ZpeMatrix,
    pub right: ZpeMatrix,
    pub right_inv: ZpeMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn nonzero(&self) -> usize {
        let e = self.diagonal.ring().e();
        self.exponents.iter().filter(|&&a| a < e).count()
    }
}

/// Row operation `row_i += f * row_k` on a row-major buffer, restricted to
/// columns `from..`.
#[inline]
fn axpy_rows(data: &mut [u32], cols: usize, q: u32, target: usize, source: usize, f: u32, from: usize) {
    if f == 0 {
        return;
    }
    let (t, s) = if target < source {
        let (a, b) = data.split_at_mut(source * cols);
        (&mut a[target * cols..(target + 1) * cols], &b[..cols])
    } else {
        let (a, b) = data.split_at_mut(target * cols);
        (&mut b[..cols], &a[source * cols..(source + 1) * cols])
    };
    for j in from..cols {
        let s = s[j];
        if s != 0 {
            t[j] = (t[j] + f * s) % q;
        }
    }
}

/// Eliminate column `col` from the other rows using the pivot row `piv`,
/// whose entry at `col` is 1. Columns before `start` are left untouched.
fn eliminate_zpe(data: &mut [u32], cols: usize, q: u32, piv: usize, col: usize, start: usize) {
    let (before, rest) = data.split_at_mut(piv * cols);
    let (pivot_row, after) = rest.split_at_mut(cols);
    let pivot_row: &[u32] = pivot_row;
    let work = |row: &mut [u32]| {
        let a = row[col];
        if a == 0 {
            return;
        }
        let f = q - a;
        for j in start..cols {
            let s = pivot_row[j];
            if s != 0 {
                row[j] = (row[j] + f * s) % q;
            }
        }
    };
    par::for_each_chunk_mut(before, cols, work);
    par::for_each_chunk_mut(after, cols, work);
}

/// Row echelon form over `F_p`. Returns the reduced entries and the pivot
/// columns, one per nonzero row. The optional `companion` receives the same
/// row operations.
///
/// Entries live in a `u64` buffer and are only reduced when they are read:
/// each elimination step adds less than `p^2 < 2^32` to an entry, so at most
/// `min(rows, cols)` unreduced additions cannot overflow.
fn field_echelon(
    ring: Zpe,
    src: &[u32],
    rows: usize,
    cols: usize,
    reduced: bool,
    mut companion: Option<&mut ZpeMatrix>,
) -> (Vec<u32>, Vec<usize>) {
    debug_assert!(ring.is_field());
    let p = ring.q() as u64;
    let mut data: Vec<u64> = src.iter().map(|&x| x as u64).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        for i in r..rows {
            let x = &mut data[i * cols + c];
            *x %= p;
            if *x != 0 {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else {
            continue;
        };
        if i != r {
            for j in 0..cols {
                data.swap(i * cols + j, r * cols + j);
            }
            if let Some(comp) = companion.as_deref_mut() {
                let cc = comp.cols();
                let d = comp.data_mut();
                for j in 0..cc {
                    d.swap(i * cc + j, r * cc + j);
                }
            }
        }
        let inv = ring.inv(data[r * cols + c] as u32).expect("nonzero in a field") as u64;
        for x in &mut data[r * cols + c..(r + 1) * cols] {
            *x = *x % p * inv % p;
        }
        let scope = if reduced { 0 } else { r + 1 };
        if let Some(comp) = companion.as_deref_mut() {
            let cc = comp.cols();
            let q = ring.q();
            let d = comp.data_mut();
            for j in 0..cc {
                d[r * cc + j] = ring.mul(d[r * cc + j], inv as u32);
            }
            for i2 in scope..rows {
                if i2 == r {
                    continue;
                }
                let a = (data[i2 * cols + c] % p) as u32;
                if a != 0 {
                    axpy_rows(d, cc, q, i2, r, q - a, 0);
                }
            }
        }
        let (before, rest) = data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let pivot_row: &[u64] = pivot_row;
        let work = |row: &mut [u64]| {
            let a = row[c] % p;
            row[c] = 0;
            if a == 0 {
                return;
            }
            let f = p - a;
            for (x, &s) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *x += f * s;
            }
        };
        if reduced {
            par::for_each_chunk_mut(before, cols, work);
        }
        par::for_each_chunk_mut(after, cols, work);
        pivots.push(c);
        r += 1;
    }
    (data.into_iter().map(|x| (x % p) as u32).collect(), pivots)
}

/// Rank over `F_p`, or number of nonzero Smith entries over `Z/p^e`.
pub fn rank(m: &ZpeMatrix) -> usize {
    if m.ring().is_field() {
        field_echelon(m.ring(), m.data(), m.rows(), m.cols(), false, None).1.len()
    } else {
        let e = m.ring().e();
        smith_exponents(m).iter().filter(|&&a| a < e).count()
    }
}

/// `log_p` of the size of the column span of `m`.
pub fn image_log_size(m: &ZpeMatrix) -> u32 {
    if m.ring().is_field() {
        rank(m) as u32
    } else {
        let e = m.ring().e();
        smith_exponents(m).iter().map(|&a| e - a.min(e)).sum()
    }
}

/// Smith exponents only (no transforms). Only row operations are needed:
/// with a minimal-valuation pivot the remaining pivot-row entries can always
/// be cleared by column operations that leave the rest of the matrix alone.
pub fn smith_exponents(m: &ZpeMatrix) -> Vec<u32> {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let n = rows.min(cols);
    if ring.is_field() {
        let r = field_echelon(ring, m.data(), rows, cols, false, None).1.len();
        let mut out = vec![0; r];
        out.resize(n, 1);
        return out;
    }
    let q = ring.q();
    let e = ring.e();
    let mut data = m.data().to_vec();
    let mut colmap: Vec<usize> = (0..cols).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // minimal valuation pivot in the lower-right block
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..rows {
            for jj in k..cols {
                let a = data[i * cols + colmap[jj]];
                if a != 0 {
                    let v = ring.valuation(a);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, jj));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, i, jj)) = best else {
            out.resize(n, e);
            break;
        };
        if i != k {
            for j in 0..cols {
                data.swap(i * cols + j, k * cols + j);
            }
        }
        colmap.swap(k, jj);
        let pc = colmap[k];
        let (_, uinv) = ring.split_unit(data[k * cols + pc]);
        for j in 0..cols {
            data[k * cols + j] = ring.mul(data[k * cols + j], uinv);
        }
        for i2 in k + 1..rows {
            let a = data[i2 * cols + pc];
            if a != 0 {
                let f = ring.div_p_pow(a, v);
                axpy_rows(&mut data, cols, q, i2, k, ring.neg(f), 0);
            }
        }
        out.push(v);
    }
    out
}

/// Full Smith normal form with both transforms and the inverse of the right
/// transform.
pub fn snf(m: &ZpeMatrix) -> SmithForm {
    snf_with(m, None)
}

/// Smith normal form; row operations are additionally applied to `rhs` (if
/// given), which therefore comes back multiplied by `L`.
pub(crate) fn snf_with(m: &ZpeMatrix, rhs: Option<&mut ZpeMatrix>) -> SmithForm {
    let ring = m.ring();
    let q = ring.q();
    let e = ring.e();
    let (rows, cols) = (m.rows(), m.cols());
    let n = rows.min(cols);
    let mut a = m.clone();
    let mut left = ZpeMatrix::identity(ring, rows);
    let mut right = ZpeMatrix::identity(ring, cols);
    let mut right_inv = ZpeMatrix::identity(ring, cols);
    let mut rhs = rhs;
    let mut exps = Vec::with_capacity(n);

    fn swap_rows(m: &mut ZpeMatrix, i: usize, k: usize) {
        if i == k {
            return;
        }
        let c = m.cols();
        let d = m.data_mut();
        for j in 0..c {
            d.swap(i * c + j, k * c + j);
        }
    }
    fn swap_cols(m: &mut ZpeMatrix, i: usize, k: usize) {
        if i == k {
            return;
        }
        let c = m.cols();
        let r = m.rows();
        let d = m.data_mut();
        for row in 0..r {
            d.swap(row * c + i, row * c + k);
        }
    }
    fn scale_row(m: &mut ZpeMatrix, i: usize, s: u32) {
        let ring = m.ring();
        let c = m.cols();
        let d = m.data_mut();
        for j in 0..c {
            d[i * c + j] = ring.mul(d[i * c + j], s);
        }
    }
    // col_j += f * col_k
    fn axpy_col(m: &mut ZpeMatrix, j: usize, k: usize, f: u32) {
        let ring = m.ring();
        let c = m.cols();
        let r = m.rows();
        let d = m.data_mut();
        for row in 0..r {
            let s = d[row * c + k];
            if s != 0 {
                d[row * c + j] = ring.add(d[row * c + j], ring.mul(f, s));
            }
        }
    }

    for k in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..rows {
            for j in k..cols {
                let x = a.get(i, j);
                if x != 0 {
                    let v = ring.valuation(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, i, j)) = best else {
            exps.resize(n, e);
            break;
        };
        swap_rows(&mut a, i, k);
        swap_rows(&mut left, i, k);
        if let Some(r) = rhs.as_deref_mut() {
            swap_rows(r, i, k);
        }
        swap_cols(&mut a, j, k);
        swap_cols(&mut right, j, k);
        swap_rows(&mut right_inv, j, k);
        let (_, uinv) = ring.split_unit(a.get(k, k));
        scale_row(&mut a, k, uinv);
        scale_row(&mut left, k, uinv);
        if let Some(r) = rhs.as_deref_mut() {
            scale_row(r, k, uinv);
        }
        for i2 in k + 1..rows {
            let x = a.get(i2, k);
            if x != 0 {
                let f = ring.neg(ring.div_p_pow(x, v));
                let c = a.cols();
                axpy_rows(a.data_mut(), c, q, i2, k, f, 0);
                let lc = left.cols();
                axpy_rows(left.data_mut(), lc, q, i2, k, f, 0);
                if let Some(r) = rhs.as_deref_mut() {
                    let rc = r.cols();
                    axpy_rows(r.data_mut(), rc, q, i2, k, f, 0);
                }
            }
        }
        for j2 in k + 1..cols {
            let x = a.get(k, j2);
            if x != 0 {
                let f = ring.div_p_pow(x, v);
                // col_j2 -= f * col_k ; inverse: row_k += f * row_j2
                axpy_col(&mut a, j2, k, ring.neg(f));
                axpy_col(&mut right, j2, k, ring.neg(f));
                let c = right_inv.cols();
                axpy_rows(right_inv.data_mut(), c, q, k, j2, f, 0);
            }
        }
        exps.push(v);
    }
    SmithForm { exponents: exps, diagonal: a, left, right, right_inv }
}

/// Generators of the kernel of `m` (as columns), with the `p`-exponent of
/// each generator's additive order. Over a field the generators form the
/// canonical basis attached to the reduced echelon form of `m`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub gens: ZpeMatrix,
    pub orders: Vec<u32>,
}

pub fn kernel(m: &ZpeMatrix) -> Kernel {
    let ring = m.ring();
    let cols = m.cols();
    if ring.is_field() {
        let (gens, free) = field_kernel(m);
        return Kernel { orders: vec![1; free.len()], gens };
    }
    let e = ring.e();
    let s = snf(m);
    let mut columns = Vec::new();
    let mut orders = Vec::new();
    for k in 0..cols {
        let a = if k < s.exponents.len() { s.exponents[k] } else { e };
        if a == 0 {
            continue;
        }
        let scale = ring.p_pow(e - a);
        columns.push(s.right.column(k).iter().map(|&x| ring.mul(x, scale)).collect::<Vec<_>>());
        orders.push(a);
    }
    Kernel { gens: ZpeMatrix::from_columns(ring, cols, &columns), orders }
}

/// Kernel over `F_p` from the reduced echelon form: one generator per free
/// column, equal to 1 there and 0 at the other free columns. Returns the
/// generators and the free columns.
pub(crate) fn field_kernel(m: &ZpeMatrix) -> (ZpeMatrix, Vec<usize>) {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let (d, pivots) = field_echelon(ring, m.data(), rows, cols, true, None);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut gens = ZpeMatrix::zeros(ring, cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        gens.set(f, k, 1);
        for (r, &c) in pivots.iter().enumerate() {
            let a = d[r * cols + f];
            if a != 0 {
                gens.set(c, k, ring.neg(a));
            }
        }
    }
    (gens, free)
}

/// Reduced row echelon form over `F_p`: the nonzero rows and their pivot
/// columns.
pub(crate) fn field_rref(m: &ZpeMatrix) -> (ZpeMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let (d, pivots) = field_echelon(m.ring(), m.data(), rows, cols, true, None);
    let r = pivots.len();
    let out = ZpeMatrix::from_vec(m.ring(), r, cols, d[..r * cols].to_vec()).expect("row count matches");
    (out, pivots)
}

/// Solve `m x = b`. Returns one solution if any exists.
pub fn solve(m: &ZpeMatrix, b: &[u32]) -> Option<Vec<u32>> {
    let ring = m.ring();
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let (rows, cols) = (m.rows(), m.cols());
    if ring.is_field() {
        let aug = m.hstack(&ZpeMatrix::column_vector(ring, b));
        let w = cols + 1;
        let (d, pivots) = field_echelon(ring, aug.data(), rows, w, true, None);
        if pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![0; cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = d[r * w + cols];
        }
        return Some(x);
    }
    let e = ring.e();
    let mut rhs = ZpeMatrix::column_vector(ring, b);
    let s = snf_with(m, Some(&mut rhs));
    let c = rhs.column(0);
    let mut y = vec![0u32; cols];
    for (k, &ck) in c.iter().enumerate() {
        let a = if k < s.exponents.len() { s.exponents[k] } else { e };
        if a >= e {
            if ck != 0 {
                return None;
            }
            continue;
        }
        if ring.valuation(ck) < a {
            return None;
        }
        if k < cols {
            y[k] = ring.div_p_pow(ck, a);
        }
    }
    Some(s.right.mul_vec(&y))
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &ZpeMatrix) -> Option<ZpeMatrix> {
    if !m.is_square() {
        return None;
    }
    let ring = m.ring();
    let n = m.rows();
    if ring.is_field() {
        let mut comp = ZpeMatrix::identity(ring, n);
        let (_, piv) = field_echelon(ring, m.data(), n, n, true, Some(&mut comp));
        return (piv.len() == n).then_some(comp);
    }
    // invertible iff invertible modulo p
    let residue = m.reduce_to(Zpe::field(ring.p()).ok()?);
    if rank(&residue) != n {
        return None;
    }
    let cols: Option<Vec<Vec<u32>>> = (0..n)
        .map(|j| {
            let mut ej = vec![0; n];
            ej[j] = 1;
            solve(m, &ej)
        })
        .collect();
    Some(ZpeMatrix::from_columns(ring, n, &cols?))
}

/// Canonical basis (as columns) of the span of `gens`, which must be a free
/// direct summand. Pivots are unit entries taken left to right, so the
/// result depends only on the submodule.
pub fn canonical_basis(gens: &ZpeMatrix) -> Result<ZpeMatrix, AlgebraError> {
    let ring = gens.ring();
    let t = gens.transpose();
    let (rows, cols) = (t.rows(), t.cols());
    let q = ring.q();
    let mut d = t.data().to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| ring.is_unit(d[i * cols + c])) else {
            continue;
        };
        if i != r {
            for j in 0..cols {
                d.swap(i * cols + j, r * cols + j);
            }
        }
        let inv = ring.inv(d[r * cols + c]).unwrap();
        for j in 0..cols {
            d[r * cols + j] = ring.mul(d[r * cols + j], inv);
        }
        eliminate_zpe(&mut d, cols, q, r, c, 0);
        r += 1;
    }
    if d[r * cols..].iter().any(|&x| x != 0) {
        return Err(AlgebraError::NotFreeSummand);
    }
    let basis = ZpeMatrix::from_vec(ring, r, cols, d[..r * cols].to_vec())?;
    Ok(basis.transpose())
}

/// Pivot row index of each column of a canonical basis: the coordinate where
/// that basis vector is 1 and all others vanish.
pub fn canonical_pivots(basis: &ZpeMatrix) -> Vec<usize> {
    let ring = basis.ring();
    let mut out = Vec::with_capacity(basis.cols());
    let mut start = 0;
    for k in 0..basis.cols() {
        let i = (start..basis.rows())
            .find(|&i| ring.is_unit(basis.get(i, k)))
            .expect("canonical basis column has a unit pivot");
        out.push(i);
        start = i + 1;
    }
    out
}

/// Whether `v` lies in the column span of `span`.
pub fn span_contains(span: &ZpeMatrix, v: &[u32]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let ext = span.hstack(&ZpeMatrix::column_vector(span.ring(), v));
    image_log_size(&ext) == image_log_size(span)
}

/// Whether the span of `a` is contained in the span of `b`.
pub fn span_le(a: &ZpeMatrix, b: &ZpeMatrix) -> bool {
    image_log_size(&b.hstack(a)) == image_log_size(b)
}

pub fn same_span(a: &ZpeMatrix, b: &ZpeMatrix) -> bool {
    let la = image_log_size(a);
    la == image_log_size(b) && image_log_size(&a.hstack(b)) == la
}

/// Generators of `{ z in span(domain) : f z in span(target) }`.
pub fn preimage(f: &ZpeMatrix, domain: &ZpeMatrix, target: &ZpeMatrix) -> ZpeMatrix {
    let fz = f.mul(domain);
    let k = kernel(&fz.hstack(target));
    let top = k.gens.block(0, 0, domain.cols(), k.gens.cols());
    domain.mul(&top)
}

/// Empty generator matrix for the zero submodule of `(Z/p^e)^n`.
pub fn zero_span(ring: Zpe, n: usize) -> ZpeMatrix {
    ZpeMatrix::zeros(ring, n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, e: u32) -> Zpe {
        Zpe::new(p, e).unwrap()
    }

    fn check_snf(m: &ZpeMatrix) {
        let s = snf(m);
        let prod = s.left.mul(m).mul(&s.right);
        assert_eq!(prod, s.diagonal);
        let ring = m.ring();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i == j && i < s.exponents.len() { ring.p_pow(s.exponents[i]) } else { 0 };
                assert_eq!(prod.get(i, j), expect, "entry ({i},{j})");
            }
        }
        assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
        assert!(inverse(&s.left).is_some());
        assert_eq!(s.right.mul(&s.right_inv), ZpeMatrix::identity(ring, m.cols()));
        assert_eq!(smith_exponents(m), s.exponents);
    }

    #[test]
    fn snf_identity() {
        let r = z(3, 2);
        let s = snf(&ZpeMatrix::identity(r, 3));
        assert_eq!(s.exponents, vec![0, 0, 0]);
    }

    #[test]
    fn snf_sorts_diag_p_one() {
        let r = z(3, 2);
        let m = ZpeMatrix::from_rows(r, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert_eq!(snf(&m).exponents, vec![0, 1]);
        check_snf(&m);
    }

    #[test]
    fn snf_p_one_zero_p() {
        // [[p,1],[0,p]] over Z/p^2 has Smith form diag(1, p^2) = diag(1, 0)
        for p in [3u32, 5, 7] {
            let r = z(p, 2);
            let m = ZpeMatrix::from_rows(r, &[vec![p as i64, 1], vec![0, p as i64]]).unwrap();
            let s = snf(&m);
            assert_eq!(s.exponents, vec![0, 2]);
            check_snf(&m);
        }
    }

    #[test]
    fn snf_rectangular_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let r = z(3, rng.gen_range(1..4));
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m = ZpeMatrix::from_fn(r, rows, cols, |_, _| {
                if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..r.q()) }
            });
            check_snf(&m);
            let k = kernel(&m);
            assert!(m.mul(&k.gens).is_zero());
            // |ker| * |im| = |domain|
            let ker_log: u32 = k.orders.iter().sum();
            assert_eq!(ker_log + image_log_size(&m), cols as u32 * r.e());
        }
    }

    #[test]
    fn field_kernel_and_solve() {
        let r = z(5, 1);
        let m = ZpeMatrix::from_rows(r, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        assert_eq!(rank(&m), 1);
        let k = kernel(&m);
        assert_eq!(k.gens.cols(), 2);
        assert!(m.mul(&k.gens).is_zero());
        let x = solve(&m, &[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
        assert!(solve(&m, &[1, 0]).is_none());
    }

    #[test]
    fn solve_over_z9() {
        let r = z(3, 2);
        let m = ZpeMatrix::from_rows(r, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert!(solve(&m, &[1, 0]).is_none());
        let x = solve(&m, &[6, 4]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![6, 4]);
    }

    #[test]
    fn inverse_roundtrip() {
        let r = z(3, 2);
        let m = ZpeMatrix::from_rows(r, &[vec![1, 3], vec![3, 1]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), ZpeMatrix::identity(r, 2));
        let sing = ZpeMatrix::from_rows(r, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert!(inverse(&sing).is_none());
    }

    #[test]
    fn canonical_basis_is_generator_independent() {
        let r = z(3, 2);
        let a = ZpeMatrix::from_rows(r, &[vec![1, 0], vec![2, 1], vec![0, 1]]).unwrap();
        // different generators of the same summand
        let b = a.mul(&ZpeMatrix::from_rows(r, &[vec![2, 1], vec![1, 1]]).unwrap());
        assert_eq!(canonical_basis(&a).unwrap(), canonical_basis(&b).unwrap());
        let not_summand = ZpeMatrix::from_rows(r, &[vec![3], vec![0], vec![0]]).unwrap();
        assert_eq!(canonical_basis(&not_summand), Err(AlgebraError::NotFreeSummand));
    }
}
