//! Generators shared by the property tests.
#![allow(dead_code)]

use derivlab::algebra::{FiniteLocalRing, RMatrix, Zpe, ZpeMatrix};
use derivlab::complexes::ChainComplex;
use derivlab::deformation::ResidualRep;
use derivlab::galois::{Character, FiniteGroup, GModule, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mat(n: usize, e: &[u32]) -> RMatrix {
    RMatrix::from_entries(n, n, e).unwrap()
}

pub fn s3_standard() -> ResidualRep {
    let k = FiniteLocalRing::prime_field(5).unwrap();
    ResidualRep::new(&FiniteGroup::symmetric(3), &k, &[mat(2, &[0, 1, 1, 0]), mat(2, &[0, 4, 1, 4])]).unwrap()
}

/// Small finite local rings of every construction the crate offers.
pub fn small_rings() -> Vec<FiniteLocalRing> {
    let f3 = FiniteLocalRing::prime_field(3).unwrap();
    let d3 = FiniteLocalRing::dual_numbers(3).unwrap();
    let base = Zpe::field(3).unwrap();
    // F_3[eps] + k, with eps acting by zero on k
    let ext = FiniteLocalRing::trivial_extension(&d3, &[ZpeMatrix::identity(base, 1), ZpeMatrix::zeros(base, 1, 1)]).unwrap();
    vec![
        f3,
        FiniteLocalRing::prime_field(5).unwrap(),
        FiniteLocalRing::zpe(3, 2).unwrap(),
        FiniteLocalRing::zpe(5, 2).unwrap(),
        d3,
        FiniteLocalRing::dual_numbers(5).unwrap(),
        FiniteLocalRing::truncated_polynomials(3, 1, 3).unwrap(),
        FiniteLocalRing::truncated_polynomials(3, 2, 2).unwrap(),
        ext,
    ]
}

pub fn random_matrix(ring: Zpe, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ZpeMatrix {
    ZpeMatrix::from_fn(ring, rows, cols, |_, _| rng.gen_range(0..ring.q()))
}

/// Direct sum of two chain complexes over the same ring.
pub fn direct_sum(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let ring = a.ring();
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let ranks = (lo..=hi).map(|n| a.rank(n) + b.rank(n)).collect();
    let diffs = (lo + 1..=hi).map(|n| a.boundary(n).block_diag(&b.boundary(n))).collect();
    ChainComplex::new(ring, lo, ranks, diffs).unwrap()
}

/// `E -> E` identity in degrees `n` and `n - 1`: contractible.
pub fn contractible(ring: Zpe, degree: i64, rank: usize) -> ChainComplex {
    ChainComplex::new(ring, degree - 1, vec![rank, rank], vec![ZpeMatrix::identity(ring, rank)]).unwrap()
}

/// Every character of `g` into `(Z/p^e)^*`.
pub fn characters(g: &FiniteGroup, ring: Zpe) -> Vec<Character> {
    let units: Vec<u32> = (1..ring.q()).filter(|x| x % ring.p() != 0).collect();
    let n = g.generators().len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let vals: Vec<u32> = idx.iter().map(|&i| units[i]).collect();
        if let Ok(c) = Character::from_generators(g, ring, &vals) {
            out.push(c);
        }
        let Some(k) = (0..n).find(|&k| idx[k] + 1 < units.len()) else { break };
        idx[k] += 1;
        idx[..k].iter_mut().for_each(|x| *x = 0);
    }
    out
}

/// A random character plus up to three trivial summands, in a random basis.
pub fn random_module(g: &FiniteGroup, ring: Zpe, rng: &mut ChaCha8Rng) -> GModule {
    let chars = characters(g, ring);
    let chi = &chars[rng.gen_range(0..chars.len())];
    let one_dim = GModule::from_table(g, ring, (0..g.order()).map(|x| ZpeMatrix::from_fn(ring, 1, 1, |_, _| chi.value(x))).collect())
        .unwrap();
    let mut m = one_dim;
    let extra = rng.gen_range(0..=3);
    if extra > 0 {
        m = m.direct_sum(&GModule::trivial(g, ring, extra));
    }
    loop {
        let p = random_matrix(ring, m.rank(), m.rank(), rng);
        if let Some(p_inv) = derivlab::algebra::inverse(&p) {
            let action = (0..g.order()).map(|x| p.mul(m.action(x)).mul(&p_inv)).collect();
            return GModule::from_table(g, ring, action).unwrap();
        }
    }
}

/// Dimension over `F_p` of the fixed vectors, by brute force.
pub fn fixed_points_log(g: &FiniteGroup, m: &GModule) -> u32 {
    let q = m.ring().q() as u64;
    let r = m.rank();
    let count = (0..q.pow(r as u32))
        .filter(|code| {
            let v: Vec<u32> = (0..r).map(|i| ((code / q.pow(i as u32)) % q) as u32).collect();
            g.generators().iter().all(|&x| m.action(x).mul_vec(&v) == v)
        })
        .count() as u64;
    count.ilog(m.ring().p() as u64)
}

/// A 2-dimensional representation found by random search on generator
/// images of compatible order.
pub fn random_rep2(g: &FiniteGroup, k: &FiniteLocalRing, gl2: &[RMatrix], rng: &mut ChaCha8Rng) -> Representation {
    let order_of = |m: &RMatrix| {
        let mut x = m.clone();
        let mut n = 1;
        while !x.is_identity(k) {
            x = x.mul(k, m);
            n += 1;
        }
        n
    };
    let orders: Vec<usize> = gl2.iter().map(order_of).collect();
    let candidates: Vec<Vec<&RMatrix>> = g
        .generators()
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            gl2.iter().zip(&orders).filter(|(_, &n)| o.is_multiple_of(n)).map(|(m, _)| m).collect()
        })
        .collect();
    let mut best = Representation::trivial(g, k, 2);
    for _ in 0..4000 {
        let gens: Vec<RMatrix> = candidates.iter().map(|c| c[rng.gen_range(0..c.len())].clone()).collect();
        if gens.iter().all(|m| m.is_identity(k)) {
            continue;
        }
        if let Ok(r) = Representation::from_generators(g, k, &gens) {
            best = r;
            if rng.gen_bool(0.5) {
                break;
            }
        }
    }
    best
}

/// Conjugate `rho` so that `rho(x)` is upper triangular, if it has an
/// eigenvector over the residue field.
pub fn triangularize(g: &FiniteGroup, k: &FiniteLocalRing, rho: &Representation, x: usize) -> Representation {
    let m = rho.image(x);
    let p = k.p();
    for a in 0..p {
        for b in 0..p {
            if (a, b) == (0, 0) {
                continue;
            }
            let v = mat(2, &[a, 0, b, 0]);
            let mv = m.mul(k, &v);
            let eigen = (0..p).any(|l| mv == v.scale(k, l));
            if eigen {
                let w = if a == 0 { [1, 0] } else { [0, 1] };
                let basis = mat(2, &[a, w[0], b, w[1]]);
                let inv = basis.inverse(k).unwrap();
                let images = rho.images().iter().map(|y| inv.mul(k, y).mul(k, &basis)).collect();
                return Representation::from_table(g, k, images).unwrap();
            }
        }
    }
    rho.clone()
}
