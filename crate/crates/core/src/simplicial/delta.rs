//! Monotone maps between ordinals `[m] = {0, ..., m}`, stored as their
//! value lists.

/// `delta^i: [n-1] -> [n]`, the injection skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|x| if x < i { x } else { x + 1 }).collect()
}

/// `sigma^i: [n+1] -> [n]`, the surjection hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|x| if x <= i { x } else { x - 1 }).collect()
}

/// `f o g`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Epi-monic factorization `f = d o t` with `t: [m] ->> [s]` and
/// `d: [s] -> [k]` injective. Returns `(t, d)`.
pub fn epi_mono(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut d: Vec<usize> = f.to_vec();
    d.dedup();
    let mut t = Vec::with_capacity(f.len());
    let mut pos = 0;
    for &x in f {
        while d[pos] != x {
            pos += 1;
        }
        t.push(pos);
    }
    (t, d)
}

/// All surjections `[n] ->> [k]`, ordered by `k` descending and then by
/// jump set in lexicographic order. The jump set of `s` is the set of
/// `i in 1..=n` with `s(i) = s(i-1) + 1`; the identity comes first.
pub fn surjections(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for jumps in subsets(n, k) {
            let mut s = Vec::with_capacity(n + 1);
            let mut v = 0;
            s.push(0);
            for i in 1..=n {
                if jumps.contains(&i) {
                    v += 1;
                }
                s.push(v);
            }
            out.push(s);
        }
    }
    out
}

/// `k`-element subsets of `{1..=n}` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Target ordinal of a surjection.
pub fn target(s: &[usize]) -> usize {
    *s.last().unwrap()
}

/// `(p, q)`-shuffles as `(mu, nu, sign)`: `mu` and `nu` partition
/// `{0, ..., p+q-1}` into increasing lists of sizes `p` and `q`, and the
/// sign is that of the permutation `(mu, nu)`.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let n = p + q;
    subsets(n, p)
        .into_iter()
        .map(|s| {
            let mu: Vec<usize> = s.iter().map(|&x| x - 1).collect();
            let nu: Vec<usize> = (0..n).filter(|x| !mu.contains(x)).collect();
            let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
            (mu, nu, inversions % 2 == 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn surjection_counts() {
        for n in 0..6 {
            let s = surjections(n);
            assert_eq!(s.len(), 1 << n);
            assert_eq!(s[0], (0..=n).collect::<Vec<_>>());
            for k in 0..=n {
                assert_eq!(s.iter().filter(|x| target(x) == k).count(), binom(n, k));
            }
        }
        assert_eq!(surjections(2).iter().filter(|x| target(x) == 1).count(), 2);
    }

    #[test]
    fn factorization() {
        let f = vec![1, 1, 3, 3, 4];
        let (t, d) = epi_mono(&f);
        assert_eq!(t, vec![0, 0, 1, 1, 2]);
        assert_eq!(d, vec![1, 3, 4]);
        assert_eq!(compose(&d, &t), f);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    assert_eq!(compose(&coface(n, j), &coface(n - 1, i)), compose(&coface(n, i), &coface(n - 1, j - 1)));
                }
            }
        }
        assert_eq!(compose(&codegeneracy(2, 1), &coface(3, 1)), vec![0, 1, 2]);
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s, vec![(vec![0], vec![1], false), (vec![1], vec![0], true)]);
        assert_eq!(shuffles(2, 2).len(), 6);
    }
}
