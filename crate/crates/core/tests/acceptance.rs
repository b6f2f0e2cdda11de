//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs with a custom harness so the lines are printed even on success.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use derivlab::algebra::{enumerate_small_group, inverse, FiniteLocalRing, GroupKind, RMatrix, Zpe, ZpeMatrix, DEFAULT_BUDGET};
use derivlab::complexes::{homology, ChainComplex};
use derivlab::deformation::{enumerate_lifts, obstruction_class, tangent_check, twisted_quasi_hom, ResidualRep, RingSurjection};
use derivlab::galois::{adjoint_module, cochain_complex, AdjointFlavor, Character, FiniteGroup, GModule, Representation};
use derivlab::par;
use derivlab::pseudochar::{conj_equivalent, from_quasi_lift, reconstruct, reflection_check, verify_axioms};
use derivlab::scenario::{self, RunOptions, Scenario};
use derivlab::selmer::{verify_star, LocalDatum};
use derivlab::simplicial::{cosimplicial_group_complex, dk, homotopy_groups, homotopy_ring, normalized, square_zero_extension};
use common::{characters, mat, random_rep2, s3_standard, triangularize};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(p: u32) -> FiniteLocalRing {
    FiniteLocalRing::prime_field(p).unwrap()
}

fn dual(p: u32) -> FiniteLocalRing {
    FiniteLocalRing::dual_numbers(p).unwrap()
}

/// The `s3_gl2_f5` lift: the standard representation conjugated by
/// `1 + eps E12`, so it is a genuine lift that is not the constant one.
fn s3_lift() -> (FiniteGroup, FiniteLocalRing, Representation) {
    let r = s3_standard();
    let a = dual(5);
    let up = |m: &RMatrix| m.map_entries(|x| a.from_base(x));
    let u = RMatrix::identity(&a, 2).add(&a, &mat(2, &[0, a.encode(&[0, 1]), 0, 0]));
    let u_inv = u.inverse(&a).unwrap();
    let gens: Vec<RMatrix> = r.generator_images().iter().map(|m| up(m).conjugate(&a, &u, &u_inv)).collect();
    let rho = Representation::from_generators(r.group(), &a, &gens).unwrap();
    (r.group().clone(), a, rho)
}

/// `Z/3 -> F_3[eps]^*`, generator to `1 + eps`.
fn z3_lift() -> (FiniteGroup, FiniteLocalRing, Representation) {
    let g = FiniteGroup::cyclic(3);
    let a = dual(3);
    let rho = Representation::from_generators(&g, &a, &[mat(1, &[a.encode(&[1, 1])])]).unwrap();
    (g, a, rho)
}

fn homomorphism_fixtures() -> Vec<(&'static str, FiniteGroup, FiniteLocalRing, Representation)> {
    let (g1, a1, r1) = z3_lift();
    let (g2, a2, r2) = s3_lift();
    let s = s3_standard();
    vec![
        ("z3 over F3[eps]", g1, a1, r1),
        ("s3 over F5[eps]", g2, a2, r2),
        ("s3 over F5", s.group().clone(), s.field().clone(), s.representation().clone()),
    ]
}

/// Distinct subgroups generated by at most two elements.
fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let mut els = g.closure(&[a, b]);
            els.sort_unstable();
            seen.insert(els);
        }
    }
    seen.into_iter().collect()
}

/// Permutation module on the left cosets of `h`.
fn coset_module(g: &FiniteGroup, h: &[usize], ring: Zpe) -> GModule {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        let mut c: Vec<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let k = cosets.len();
    let action = (0..g.order())
        .map(|x| {
            let mut m = ZpeMatrix::zeros(ring, k, k);
            for (j, c) in cosets.iter().enumerate() {
                let image = g.mul(x, c[0]);
                let i = cosets.iter().position(|d| d.contains(&image)).unwrap();
                m.set(i, j, 1);
            }
            m
        })
        .collect();
    GModule::from_table(g, ring, action).unwrap()
}

fn character_module(g: &FiniteGroup, c: &Character) -> GModule {
    let ring = c.ring();
    let action = (0..g.order()).map(|x| ZpeMatrix::from_fn(ring, 1, 1, |_, _| c.value(x))).collect();
    GModule::from_table(g, ring, action).unwrap()
}

fn random_invertible(ring: Zpe, n: usize, rng: &mut ChaCha8Rng) -> (ZpeMatrix, ZpeMatrix) {
    loop {
        let m = ZpeMatrix::from_fn(ring, n, n, |_, _| rng.gen_range(0..ring.q()));
        if let Some(inv) = inverse(&m) {
            return (m, inv);
        }
    }
}

fn change_basis(g: &FiniteGroup, m: &GModule, rng: &mut ChaCha8Rng) -> GModule {
    let (p, p_inv) = random_invertible(m.ring(), m.rank(), rng);
    let action = (0..g.order()).map(|x| p.mul(m.action(x)).mul(&p_inv)).collect();
    GModule::from_table(g, m.ring(), action).unwrap()
}

/// Random modules of rank at most 4 built from coset permutation modules,
/// characters and trivial summands, in a random basis.
fn random_modules(g: &FiniteGroup, ring: Zpe, count: usize, rng: &mut ChaCha8Rng) -> Vec<GModule> {
    let mut pieces: Vec<GModule> = subgroups(g)
        .into_iter()
        .filter(|h| h.len() * 4 >= g.order())
        .map(|h| coset_module(g, &h, ring))
        .collect();
    pieces.extend(characters(g, ring).iter().map(|c| character_module(g, c)));
    (0..count)
        .map(|_| {
            let mut m = pieces[rng.gen_range(0..pieces.len())].clone();
            while m.rank() < 4 && rng.gen_bool(0.5) {
                let extra = &pieces[rng.gen_range(0..pieces.len())];
                if m.rank() + extra.rank() <= 4 {
                    m = m.direct_sum(extra);
                }
            }
            change_basis(g, &m, rng)
        })
        .collect()
}

/// `log_p` of the number of vectors fixed by every element, by brute force.
fn fixed_points_log(g: &FiniteGroup, m: &GModule) -> u32 {
    let ring = m.ring();
    let r = m.rank();
    let total = (ring.q() as u64).pow(r as u32);
    let mut count = 0u64;
    for code in 0..total {
        let v: Vec<u32> = (0..r).map(|i| ((code / (ring.q() as u64).pow(i as u32)) % ring.q() as u64) as u32).collect();
        if g.generators().iter().all(|&x| m.action(x).mul_vec(&v) == v) {
            count += 1;
        }
    }
    count.ilog(ring.p() as u64)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for p in [3u32, 5] {
        let ring = Zpe::field(p).unwrap();
        for _ in 0..100 {
            let d = rng.gen_range(1..=5);
            let ranks: Vec<usize> = (0..=d).map(|_| rng.gen_range(0..=3)).collect();
            let c = ChainComplex::random(ring, 0, &ranks, 0.7, &mut rng);
            let level = d + 1;
            let m = dk(&c, level).map_err(|e| e.to_string())?;
            let n = normalized(&m).map_err(|e| e.to_string())?;
            ensure(n.with_range(0, level as i64) == c.with_range(0, level as i64), || format!("N(DK(C)) != C for ranks {ranks:?}, p = {p}"))?;
            let pi = homotopy_groups(&m).map_err(|e| e.to_string())?;
            for g in pi.iter().filter(|g| g.reliable) {
                ensure(g.orders == homology(&c, g.degree as i64).orders(), || format!("pi_{} != H_{} for ranks {ranks:?}", g.degree, g.degree))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes, roundtrip and pi = H"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = FiniteGroup::small_groups();
    let mut pairs = 0;
    for (name, g) in &groups {
        for ring in [Zpe::field(3).unwrap(), Zpe::field(5).unwrap(), Zpe::new(3, 2).unwrap()] {
            for m in random_modules(g, ring, 1, &mut rng) {
                let a = cosimplicial_group_complex(g, &m, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let b = cochain_complex(g, &m, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                for n in 0..3 {
                    ensure(a.differential(n) == b.differential(n), || format!("{name}, rank {}, d^{n} differs", m.rank()))?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} groups, {pairs} modules, d^0..d^2 identical", groups.len()))
}

fn criterion_3() -> Outcome {
    for p in [3u32, 5] {
        let g = FiniteGroup::cyclic(p as usize);
        let m = GModule::trivial(&g, Zpe::field(p).unwrap(), 1);
        let c = cochain_complex(&g, &m, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        for i in 0..=3 {
            ensure(c.cohomology(i).dim() == 1, || format!("dim H^{i}(Z/{p}, F_{p}) != 1"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    for (name, g) in FiniteGroup::small_groups() {
        for p in [3u32, 5] {
            let ring = Zpe::field(p).unwrap();
            for m in random_modules(&g, ring, 2, &mut rng) {
                let c = cochain_complex(&g, &m, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let h0 = c.cohomology(0).log_size();
                ensure(h0 == fixed_points_log(&g, &m), || format!("{name}, p = {p}: H^0 is not the fixed points"))?;
                if g.order() % p as usize != 0 {
                    for i in 1..3 {
                        ensure(c.cohomology(i).is_zero(), || format!("{name}, p = {p}: H^{i} != 0 for coprime order"))?;
                    }
                }
                runs += 1;
            }
        }
    }
    Ok(format!("cyclic oracles, {runs} modules checked for H^0 and coprime vanishing"))
}

fn criterion_4() -> Outcome {
    let mut groups = FiniteGroup::small_groups();
    groups.push(("S4".into(), FiniteGroup::symmetric(4)));
    groups.push(("S3xZ4".into(), FiniteGroup::direct_product(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(4))));
    groups.push(("A4xZ2".into(), FiniteGroup::direct_product(&FiniteGroup::alternating4(), &FiniteGroup::cyclic(2))));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut scenarios = 0;
    let mut borel_places = 0;
    for (name, g) in groups.iter().filter(|(_, g)| g.order() > 1) {
        for p in [3u32, 5] {
            let k = f(p);
            let gl2 = enumerate_small_group(GroupKind::GLn, &k, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let mut rho = random_rep2(g, &k, &gl2, &mut rng);
            let places = rng.gen_range(0..=2);
            let xs: Vec<usize> = (0..places).map(|_| rng.gen_range(0..g.order())).collect();
            if let Some(&x) = xs.first() {
                rho = triangularize(g, &k, &rho, x);
            }
            let gm = adjoint_module(g, &rho, AdjointFlavor::Gl).map_err(|e| e.to_string())?;
            let mut data = Vec::new();
            for (i, &x) in xs.iter().enumerate() {
                let sub = g.subgroup(&[x]).map_err(|e| e.to_string())?;
                let borel = rho.restrict(&sub).first_non_borel().is_none();
                let flavor = if borel { AdjointFlavor::Borel } else { AdjointFlavor::Gl };
                borel_places += borel as usize;
                let inertia = if borel && rng.gen_bool(0.5) { Some(sub.clone()) } else { None };
                data.push(
                    LocalDatum::from_representation(format!("v{i}"), g, &rho, AdjointFlavor::Gl, flavor, sub, inertia)
                        .map_err(|e| e.to_string())?,
                );
            }
            let top = if g.order() <= 12 { 3 } else { 2 };
            let rep = verify_star(g, &data, &gm, top, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(rep.all_exact(), || format!("{name}, p = {p}: not exact: {rep:?}"))?;
            ensure(rep.h0_isomorphism && rep.h_ord[0] == rep.h_global[0], || format!("{name}, p = {p}: H^0_ord -> H^0 not an isomorphism"))?;
            scenarios += 1;
        }
    }
    ensure(scenarios >= 50, || format!("only {scenarios} scenarios"))?;
    Ok(format!("{scenarios} scenarios all exact, {borel_places} Borel places, H^0_ord = H^0"))
}

fn criterion_5() -> Outcome {
    // z3_gl1_f3: trivial character of Z/3 over F_3
    let z3 = ResidualRep::new(&FiniteGroup::cyclic(3), &f(3), &[mat(1, &[1])]).unwrap();
    let s3 = s3_standard();
    let mut notes = Vec::new();
    for (name, r, framed, classes) in [("z3_gl1_f3", &z3, 3u64, 3u64), ("s3_gl2_f5", &s3, 125, 1)] {
        ensure(r.scalar_commutant(), || format!("{name}: centralizer condition fails"))?;
        let t = tangent_check(r, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let p = r.field().p() as u64;
        ensure(t.framed_lifts == p.pow(t.z1_log), || format!("{name}: |D(k[eps])| framed {} != |Z^1| {}", t.framed_lifts, p.pow(t.z1_log)))?;
        ensure(t.classes == p.pow(t.h1_log), || format!("{name}: {} classes != p^{}", t.classes, t.h1_log))?;
        ensure(t.cocycle_bijection && t.conjugation_is_translation, || format!("{name}: lift/cocycle matching is not a bijection"))?;
        ensure(t.passes(), || format!("{name}: {t:?}"))?;
        // frozen from the brute-force counts below
        ensure((t.framed_lifts, t.classes) == (framed, classes), || format!("{name}: counts moved to {t:?}"))?;
        let ad = adjoint_module(r.group(), r.representation(), AdjointFlavor::Gl).map_err(|e| e.to_string())?;
        let h1 = cochain_complex(r.group(), &ad, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?.cohomology(1).log_size();
        ensure(h1 == t.h1_log, || format!("{name}: dim H^1 {h1} vs {}", t.h1_log))?;
        ensure(brute_force_framed(r) == framed, || format!("{name}: brute-force lift count disagrees"))?;
        notes.push(format!("{name} {framed}={framed}, {classes}=p^{h1}"));
    }
    Ok(notes.join("; "))
}

/// Framed lifts to `k[eps]` counted by trying every entrywise lift of the
/// generator images.
fn brute_force_framed(r: &ResidualRep) -> u64 {
    let k = r.field();
    let a = dual(k.p());
    let fibers = |m: &RMatrix| -> Vec<RMatrix> {
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        for &x in m.entries() {
            let choices: Vec<u32> = a.elements().filter(|&y| a.residue(y) == k.residue(x)).collect();
            out = out.iter().flat_map(|pre| choices.iter().map(move |&c| [pre.clone(), vec![c]].concat())).collect();
        }
        out.into_iter().map(|e| RMatrix::from_entries(m.rows(), m.cols(), &e).unwrap()).collect()
    };
    let lists: Vec<Vec<RMatrix>> = r.generator_images().iter().map(fibers).collect();
    let mut idx = vec![0usize; lists.len()];
    let mut count = 0;
    loop {
        let gens: Vec<RMatrix> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
        if Representation::from_generators(r.group(), &a, &gens).is_ok() {
            count += 1;
        }
        let Some(j) = (0..idx.len()).find(|&j| idx[j] + 1 < lists[j].len()) else { break };
        idx[j] += 1;
        idx[..j].iter_mut().for_each(|x| *x = 0);
    }
    count
}

fn criterion_6() -> Outcome {
    // Z/5 with the unipotent generator, lifted to Z/25
    let g = FiniteGroup::cyclic(5);
    let k = f(5);
    let u = mat(2, &[1, 1, 0, 1]);
    let rho0 = Representation::from_generators(&g, &k, std::slice::from_ref(&u)).unwrap();
    let a1 = FiniteLocalRing::zpe(5, 2).unwrap();
    let surj = RingSurjection::truncation(&a1, &k).map_err(|e| e.to_string())?;
    let rep = obstruction_class(&g, &rho0, &surj, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(rep.is_cocycle && rep.section_independent, || "unipotent: cocycle or section check failed".into())?;
    ensure(!rep.is_zero && rep.lift.is_none(), || "unipotent: class should be nonzero".into())?;
    let lifts = enumerate_lifts(&ResidualRep::new(&g, &k, std::slice::from_ref(&u)).unwrap(), &a1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(lifts.is_empty(), || format!("unipotent: {} lifts found", lifts.len()))?;
    // independent search: every entrywise lift M of u with M^5 = 1
    let mut certified = 0;
    for code in 0..625u32 {
        let d = [code % 5, code / 5 % 5, code / 25 % 5, code / 125];
        let m = mat(2, &[1 + 5 * d[0], 1 + 5 * d[1], 5 * d[2], 1 + 5 * d[3]]);
        let mut x = m.clone();
        for _ in 0..4 {
            x = x.mul(&a1, &m);
        }
        ensure(!x.is_identity(&a1), || format!("unipotent: {m:?} has order 5"))?;
        certified += 1;
    }

    // coprime order: S_3 over F_5 and Z/4 over F_3, lifted to Z/p^2
    let s = s3_standard();
    let z4 = ResidualRep::new(&FiniteGroup::cyclic(4), &f(3), &[mat(2, &[0, 2, 1, 0])]).unwrap();
    let mut coprime = 0;
    for r in [&s, &z4] {
        let p = r.field().p();
        let a = FiniteLocalRing::zpe(p, 2).unwrap();
        let surj = RingSurjection::truncation(&a, r.field()).map_err(|e| e.to_string())?;
        let rep = obstruction_class(r.group(), r.representation(), &surj, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(rep.is_cocycle && rep.section_independent && rep.is_zero, || format!("coprime p = {p}: {rep:?}"))?;
        let lift = rep.lift.ok_or("coprime: no lift exhibited")?;
        let rho = lift.representation(r.group(), &a).map_err(|e| e.to_string())?;
        ensure(rho.residue() == *r.representation(), || format!("coprime p = {p}: lift does not reduce to rho0"))?;
        coprime += 1;
    }
    Ok(format!("Z/5 unipotent: nonzero class, {certified} candidates ruled out; {coprime} coprime fixtures lift"))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for (name, g, a, rho) in homomorphism_fixtures() {
        let t = from_quasi_lift(&g, &a, rho.images(), 3, 6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let r = verify_axioms(&g, &t);
        ensure(r.passes(), || format!("{name}: {:?}", r.violations.first()))?;
        if a.is_field() {
            notes.push(name.to_string());
            continue;
        }
        let kernel = enumerate_small_group(GroupKind::KernelGLn, &a, rho.dim(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        for u in kernel.iter().step_by(37) {
            let u_inv = u.inverse(&a).unwrap();
            let conj: Vec<RMatrix> = rho.images().iter().map(|m| m.conjugate(&a, u, &u_inv)).collect();
            let t2 = from_quasi_lift(&g, &a, &conj, 3, 6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(t2 == t, || format!("{name}: kernel conjugate changes the table"))?;
        }
        notes.push(name.to_string());
    }
    Ok(format!("axioms hold at M = 3, L = 6 on {}", notes.join(", ")))
}

fn criterion_8() -> Outcome {
    let (g, a, rho) = s3_lift();
    let r = s3_standard();
    let t = from_quasi_lift(&g, &a, rho.images(), 3, 6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let out = reconstruct(&t, &r, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(out.round_trip && out.is_quasi_lift, || "reconstruction does not round-trip".into())?;
    let gens_out: Vec<RMatrix> = g.generators().iter().map(|&x| out.table[x].clone()).collect();
    let gens_in = rho.generator_images(&g);
    let w = conj_equivalent(&a, &gens_out, &gens_in, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let c = w.conjugator.ok_or("no kernel conjugator found")?;
    let c_inv = c.inverse(&a).unwrap();
    ensure(gens_out.iter().zip(&gens_in).all(|(x, y)| x.conjugate(&a, &c, &c_inv) == *y), || "conjugator does not conjugate".into())?;
    Ok("reconstructed lift is kernel-conjugate to the input".into())
}

fn criterion_9() -> Outcome {
    for (name, g, a, rho) in homomorphism_fixtures() {
        let t = from_quasi_lift(&g, &a, rho.images(), 3, 6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(reflection_check(&t).equivariant, || format!("{name}: reflection violation on a homomorphism"))?;
    }
    // rho = sigma phi^{-1} on Z/5 x S_3, phi the generator of Z/5 to 1 + eps E12
    let s3 = FiniteGroup::symmetric(3);
    let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(5), &s3);
    let a = dual(5);
    let up = |m: &RMatrix| m.map_entries(|x| a.from_base(x));
    let one = RMatrix::identity(&a, 2);
    let mut sigma_gens = vec![one.clone()];
    sigma_gens.extend(s3_standard().generator_images().iter().map(up));
    let phi_gens = vec![one.add(&a, &mat(2, &[0, a.encode(&[0, 1]), 0, 0])), one.clone(), one.clone()];
    let sigma = Representation::from_generators(&g, &a, &sigma_gens).map_err(|e| e.to_string())?;
    let phi = Representation::from_generators(&g, &a, &phi_gens).map_err(|e| e.to_string())?;
    let q = twisted_quasi_hom(&g, &sigma, &phi).map_err(|e| e.to_string())?;
    ensure(!q.is_homomorphism, || "twisted fixture is a homomorphism".into())?;
    let t = from_quasi_lift(&g, &a, &q.table, 2, 6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let r = reflection_check(&t);
    let outcome = if r.equivariant { "inconclusive at L = 6".to_string() } else { format!("violation at {:?}", r.witness) };
    Ok(format!("homomorphisms equivariant; non-homomorphism: {outcome}"))
}

fn criterion_10() -> Outcome {
    let mut runs = 0;
    for t in [f(3), dual(3)] {
        let base = t.base();
        let d = t.rank();
        // multiplication by each basis element, from products of basis vectors
        let action: Vec<ZpeMatrix> = (0..d)
            .map(|i| {
                let cols: Vec<Vec<u32>> = (0..d).map(|c| t.mul_coords(&t.basis_vector(i), &t.basis_vector(c))).collect();
                ZpeMatrix::from_columns(base, d, &cols)
            })
            .collect();
        for j in 1..=2 {
            let level = j + 2;
            let s = square_zero_extension(&t, &action, j, level).map_err(|e| e.to_string())?;
            let h = homotopy_ring(&s).map_err(|e| e.to_string())?;
            ensure(h.pi0 == t, || format!("pi_0 != T for rank {d}, j = {j}"))?;
            for n in 1..level {
                let expect = if n == j { vec![1; d] } else { vec![] };
                ensure(h.groups[n].orders == expect, || format!("rank {d}, j = {j}: pi_{n} = {:?}", h.groups[n].orders))?;
            }
            for (i, a) in action.iter().enumerate() {
                ensure(h.pi0_action(&t.basis_vector(i), j) == *a, || format!("rank {d}, j = {j}: wrong action of b_{i}"))?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(10 + j as u64);
            for (i, k) in [(0, j), (j, 0), (0, 0), (j, j)] {
                let (di, dk) = (h.groups[i].orders.len(), h.groups[k].orders.len());
                for _ in 0..20 {
                    let x: Vec<u32> = (0..di).map(|_| rng.gen_range(0..3)).collect();
                    let y: Vec<u32> = (0..dk).map(|_| rng.gen_range(0..3)).collect();
                    let (Some(xy), Some(yx)) = (h.product(i, &x, k, &y), h.product(k, &y, i, &x)) else { continue };
                    let sign_yx: Vec<u32> = if (i * k) % 2 == 1 { yx.iter().map(|&v| (3 - v) % 3).collect() } else { yx };
                    ensure(xy == sign_yx, || format!("rank {d}, j = {j}: x y != (-1)^(ik) y x in degrees {i}, {k}"))?;
                }
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} square-zero extensions: pi_* = T + M[j], action and graded commutativity"))
}

fn run_all(s: &Scenario) -> Result<String, String> {
    scenario::run(s, &RunOptions::default()).map(|r| r.to_json()).map_err(|e| e.to_string())
}

fn criterion_11() -> Outcome {
    for name in scenario::FIXTURE_NAMES {
        let s = Scenario::from_json(scenario::emit_fixture(name).unwrap()).map_err(|e| e.to_string())?;
        par::set_sequential(true);
        let seq = run_all(&s);
        par::set_sequential(false);
        let seq = seq?;
        for threads in [2, 4] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
            let out = pool.install(|| run_all(&s))?;
            ensure(out == seq, || format!("{name}: report with {threads} threads differs from the sequential one"))?;
        }
        ensure(run_all(&s)? == seq, || format!("{name}: second run differs"))?;
    }
    Ok(format!("{} fixtures byte-identical at 1, 2 and 4 threads", scenario::FIXTURE_NAMES.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("Dold-Kan roundtrip", Duration::from_secs(30), criterion_1),
        ("totalization equals group cochains", Duration::from_secs(60), criterion_2),
        ("cohomology oracles", Duration::from_secs(10), criterion_3),
        ("nearly ordinary exact sequence", Duration::from_secs(120), criterion_4),
        ("tangent space bridge", Duration::from_secs(120), criterion_5),
        ("obstruction classes", Duration::from_secs(60), criterion_6),
        ("pseudo-character axioms", Duration::from_secs(120), criterion_7),
        ("reconstruction round-trip", Duration::from_secs(300), criterion_8),
        ("reflection", Duration::from_secs(120), criterion_9),
        ("homotopy rings", Duration::from_secs(30), criterion_10),
        ("determinism", Duration::from_secs(600), criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > *limit => Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())),
            r => r,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failed += result.is_err() as usize;
        println!("criterion {:>2} {status} [{:.2}s] {name}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
