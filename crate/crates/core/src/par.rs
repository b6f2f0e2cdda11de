//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool unless
//! sequential mode has been switched on at runtime; without the feature they
//! are plain loops. Every helper returns results in input order, so output
//! never depends on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force sequential execution even when the `parallel` feature is enabled.
pub fn set_sequential(on: bool) {
    SEQUENTIAL.store(on, Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed)
}

/// Below this many elements, slices are processed inline.
#[cfg(feature = "parallel")]
const MIN_PAR_LEN: usize = 1 << 13;
/// Index ranges are split into chunks of this size.
const CHUNK: u64 = 1 << 10;

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub fn chunks_mut<T: Send>(data: &mut [T], chunk: usize, f: &(dyn Fn(&mut [T]) + Sync)) {
        data.par_chunks_mut(chunk).for_each(f);
    }

    pub fn chunks_mut_indexed<T: Send>(data: &mut [T], chunk: usize, f: &(dyn Fn(usize, &mut [T]) + Sync)) {
        data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }

    pub fn map<T: Sync, R: Send>(items: &[T], f: &(dyn Fn(&T) -> R + Sync)) -> Vec<R> {
        items.par_iter().map(f).collect()
    }

    pub fn map_range<R: Send>(n: usize, f: &(dyn Fn(usize) -> R + Sync)) -> Vec<R> {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn find_first(n: usize, f: &(dyn Fn(usize) -> bool + Sync)) -> Option<usize> {
        (0..n).into_par_iter().find_first(|&i| f(i))
    }
}

/// Apply `f` to consecutive chunks of `chunk` elements.
pub fn for_each_chunk_mut<T: Send>(data: &mut [T], chunk: usize, f: impl Fn(&mut [T]) + Sync) {
    if chunk == 0 || data.is_empty() {
        return;
    }
    #[cfg(feature = "parallel")]
    if is_parallel() && data.len() >= MIN_PAR_LEN {
        return imp::chunks_mut(data, chunk, &f);
    }
    data.chunks_mut(chunk).for_each(f);
}

/// Like [`for_each_chunk_mut`], also passing the chunk index.
pub fn for_each_chunk_mut_indexed<T: Send>(data: &mut [T], chunk: usize, f: impl Fn(usize, &mut [T]) + Sync) {
    if chunk == 0 || data.is_empty() {
        return;
    }
    #[cfg(feature = "parallel")]
    if is_parallel() && data.len() >= MIN_PAR_LEN {
        return imp::chunks_mut_indexed(data, chunk, &f);
    }
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        return imp::map(items, &f);
    }
    items.iter().map(f).collect()
}

pub fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if is_parallel() && n > 1 {
        return imp::map_range(n, &f);
    }
    (0..n).map(f).collect()
}

/// Keep `f(i)` for every `i < n` where it is `Some`, in index order.
pub fn filter_map_range<R: Send>(n: u64, f: impl Fn(u64) -> Option<R> + Sync) -> Vec<R> {
    let chunks = n.div_ceil(CHUNK) as usize;
    let run = |c: usize| -> Vec<R> {
        let lo = c as u64 * CHUNK;
        (lo..(lo + CHUNK).min(n)).filter_map(&f).collect()
    };
    map_range(chunks, run).into_iter().flatten().collect()
}

/// Smallest `i < n` with `f(i)`.
pub fn find_first(n: usize, f: impl Fn(usize) -> bool + Sync) -> Option<usize> {
    #[cfg(feature = "parallel")]
    if is_parallel() && n > 1 {
        return imp::find_first(n, &f);
    }
    (0..n).find(|&i| f(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = filter_map_range(5000, |i| (i % 7 == 0).then_some(i));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v.len(), 715);
        assert_eq!(find_first(100, |i| i * i > 50), Some(8));
    }
}
