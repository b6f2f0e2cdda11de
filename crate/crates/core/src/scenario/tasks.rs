//! Task dispatch and reports.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{image_log_size, AlgebraError, FiniteLocalRing, RMatrix, Zpe, ZpeMatrix, DEFAULT_BUDGET};
use crate::complexes::{homology, ChainComplex, ComplexError};
use crate::deformation::{
    deformation_classes, enumerate_lifts, obstruction_class, ordinary_filter, tangent_check, DeformationError, OrdinaryPlace,
    ResidualRep, RingSurjection,
};
use crate::galois::{adjoint_module, cochain_complex, AdjointFlavor, GaloisError, Representation};
use crate::par;
use crate::pseudochar::{conj_equivalent, from_quasi_lift, reconstruct, reflection_check, verify_axioms, PseudocharError};
use crate::selmer::{check_regularity, ordinary_complex, ordinary_mu_complex, verify_star, SelmerError};
use crate::simplicial::{cosimplicial_group_complex, dk, homotopy_groups, homotopy_ring, normalized, square_zero_extension, SimplicialError};

use super::{parse_matrix, Scenario, ScenarioError, TaskSpec, SCHEMA_VERSION};

pub const TASK_NAMES: [&str; 13] = [
    "cohomology",
    "selmer",
    "selmer-mu",
    "star",
    "deform",
    "tangent",
    "obstruction",
    "doldkan-roundtrip",
    "homotopy-ring",
    "totalization",
    "pseudochar-verify",
    "pseudochar-reflect",
    "pseudochar-reconstruct",
];

/// Representatives and witnesses listed in a report are capped at this many.
const MAX_LISTED: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Candidate budget for tasks that do not set their own.
    pub budget: Option<u64>,
    /// Run only tasks with these names; all when empty.
    pub tasks: Vec<String>,
    /// Record wall-clock milliseconds per task. Off by default, since it
    /// makes reports differ between runs.
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskResult {
    /// Position in the scenario's task list.
    pub index: usize,
    pub task: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub tool_version: String,
    pub tasks: Vec<TaskResult>,
}

impl Report {
    pub fn any_fail(&self) -> bool {
        self.tasks.iter().any(|t| t.verdict == Verdict::Fail)
    }

    /// Pretty JSON with object keys sorted, newline terminated.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("values serialize");
        s.push('\n');
        s
    }
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

struct TaskError {
    budget: bool,
    msg: String,
}

macro_rules! task_error_from {
    ($($t:ty => $pat:pat),* $(,)?) => {$(
        impl From<$t> for TaskError {
            fn from(e: $t) -> Self {
                TaskError { budget: matches!(&e, $pat), msg: e.to_string() }
            }
        }
    )*};
}

task_error_from! {
    AlgebraError => AlgebraError::BudgetExceeded { .. },
    ComplexError => ComplexError::Algebra(AlgebraError::BudgetExceeded { .. }),
    GaloisError => GaloisError::Algebra(AlgebraError::BudgetExceeded { .. }),
    SimplicialError => SimplicialError::Algebra(AlgebraError::BudgetExceeded { .. }),
    SelmerError => SelmerError::Algebra(AlgebraError::BudgetExceeded { .. })
        | SelmerError::Galois(GaloisError::Algebra(AlgebraError::BudgetExceeded { .. })),
    DeformationError => DeformationError::Algebra(AlgebraError::BudgetExceeded { .. })
        | DeformationError::Galois(GaloisError::Algebra(AlgebraError::BudgetExceeded { .. })),
    PseudocharError => PseudocharError::Algebra(AlgebraError::BudgetExceeded { .. })
        | PseudocharError::Galois(GaloisError::Algebra(AlgebraError::BudgetExceeded { .. }))
        | PseudocharError::Deformation(DeformationError::Algebra(AlgebraError::BudgetExceeded { .. })),
}

impl From<String> for TaskError {
    fn from(msg: String) -> Self {
        TaskError { budget: false, msg }
    }
}

type Outcome = Result<(Verdict, Value), TaskError>;

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Run the selected tasks. Tasks may run concurrently; results come back
/// in task-list order.
pub fn run(s: &Scenario, opts: &RunOptions) -> Result<Report, ScenarioError> {
    let unknown: Vec<String> = opts
        .tasks
        .iter()
        .filter(|t| !TASK_NAMES.contains(&t.as_str()))
        .map(|t| format!("--task {t}: unknown task (known: {})", TASK_NAMES.join(", ")))
        .collect();
    if !unknown.is_empty() {
        return Err(ScenarioError::Validation(unknown));
    }
    let selected: Vec<(usize, &TaskSpec)> = s
        .tasks()
        .iter()
        .enumerate()
        .filter(|(_, t)| opts.tasks.is_empty() || opts.tasks.iter().any(|n| n == t.name()))
        .collect();
    let tasks = par::map(&selected, |&(index, t)| {
        let budget = t.budget().or(opts.budget).unwrap_or(DEFAULT_BUDGET);
        let start = Instant::now();
        let outcome = run_task(s, t, budget);
        let millis = opts.timings.then(|| start.elapsed().as_millis() as u64);
        let (verdict, error, details) = match outcome {
            Ok((v, d)) => (v, None, d),
            Err(e) if e.budget => (Verdict::Inconclusive, Some(e.msg), Value::Null),
            Err(e) => (Verdict::Fail, Some(e.msg), Value::Null),
        };
        TaskResult { index, task: t.name().to_string(), verdict, error, details, millis }
    });
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        scenario: s.name().to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        tasks,
    })
}

fn run_task(s: &Scenario, t: &TaskSpec, budget: u64) -> Outcome {
    match t {
        TaskSpec::Cohomology { representation, flavor, top, .. } => cohomology(s, representation, *flavor, *top, budget),
        TaskSpec::Selmer { representation, top, .. } => selmer(s, representation, *top, budget),
        TaskSpec::SelmerMu { representation, top, .. } => selmer_mu(s, representation, *top, budget),
        TaskSpec::Star { representation, top, .. } => star(s, representation, *top, budget),
        TaskSpec::Deform { representation, ring, ordinary, .. } => deform(s, representation, ring, *ordinary, budget),
        TaskSpec::Tangent { representation, .. } => tangent(s, representation, budget),
        TaskSpec::Obstruction { representation, source, images, .. } => {
            obstruction(s, representation, source, images.as_deref(), budget)
        }
        TaskSpec::DoldkanRoundtrip { p, e, count, seed, max_rank, max_degree } => {
            doldkan_roundtrip(*p, *e, *count, *seed, *max_rank, *max_degree)
        }
        TaskSpec::HomotopyRing { ring, j, level } => homotopy(s, ring, *j, level.unwrap_or(j + 2)),
        TaskSpec::Totalization { representation, flavor, top, .. } => totalization(s, representation, *flavor, *top, budget),
        TaskSpec::PseudocharVerify { representation, max_tuple, max_word, .. } => {
            pseudochar_verify(s, representation, *max_tuple, *max_word, budget)
        }
        TaskSpec::PseudocharReflect { representation, max_tuple, max_word, .. } => {
            pseudochar_reflect(s, representation, *max_tuple, *max_word, budget)
        }
        TaskSpec::PseudocharReconstruct { representation, residual, max_tuple, max_word, .. } => {
            pseudochar_reconstruct(s, representation, residual, *max_tuple, *max_word, budget)
        }
    }
}

fn hom<'a>(s: &'a Scenario, name: &str) -> &'a Representation {
    s.representations[name].hom.as_ref().expect("validated as a homomorphism")
}

fn matrix_coords(ring: &FiniteLocalRing, ms: &[RMatrix]) -> Vec<Vec<Vec<Vec<u32>>>> {
    ms.iter().map(|m| m.to_coords(ring)).collect()
}

/// The surjection used by the obstruction task.
pub(crate) fn surjection(
    source: &FiniteLocalRing,
    target: &FiniteLocalRing,
    images: Option<&[Vec<i64>]>,
) -> Result<RingSurjection, DeformationError> {
    match images {
        None => RingSurjection::truncation(source, target),
        Some(images) => {
            if images.iter().any(|c| c.len() != target.rank()) {
                return Err(DeformationError::NotASurjection(format!(
                    "images need {} coordinates each",
                    target.rank()
                )));
            }
            let codes: Vec<u32> = images
                .iter()
                .map(|c| target.encode(&c.iter().map(|&x| target.base().from_i64(x)).collect::<Vec<_>>()))
                .collect();
            RingSurjection::new(source, target, &codes)
        }
    }
}

/// `log_p` of the fixed points of the generators.
fn fixed_point_log(m: &crate::galois::GModule, gens: &[usize]) -> u32 {
    let ring = m.ring();
    let r = m.rank();
    if gens.is_empty() {
        return r as u32 * ring.e();
    }
    let id = ZpeMatrix::identity(ring, r);
    let stacked = gens.iter().map(|&g| m.action(g).sub(&id)).reduce(|a, b| a.vstack(&b)).expect("non-empty");
    r as u32 * ring.e() - image_log_size(&stacked)
}

fn cohomology(s: &Scenario, rep: &str, flavor: AdjointFlavor, top: usize, budget: u64) -> Outcome {
    let rho = hom(s, rep);
    let m = adjoint_module(&s.group, rho, flavor)?;
    let c = cochain_complex(&s.group, &m, top, budget)?;
    let hs: Vec<_> = (0..top).map(|i| c.cohomology(i as i64)).collect();
    let fixed = fixed_point_log(&m, s.group.generators());
    let ok = hs[0].log_size() == fixed;
    let details = json!({
        "module_rank": m.rank(),
        "h_log": hs.iter().map(|h| h.log_size()).collect::<Vec<_>>(),
        "h_orders": hs.iter().map(|h| h.orders().to_vec()).collect::<Vec<_>>(),
        "fixed_points_log": fixed,
        "h0_is_fixed_points": ok,
    });
    Ok((pass_if(ok), details))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn selmer(s: &Scenario, rep: &str, top: usize, budget: u64) -> Outcome {
    let rho = hom(s, rep);
    let data = s.local_data(rho)?;
    let g = adjoint_module(&s.group, rho, AdjointFlavor::Gl)?;
    let ord = ordinary_complex(&s.group, &data, &g, top, budget)?;
    let h_ord: Vec<Option<u32>> = (0..=3).map(|i| ord.cohomology(i).map(|h| h.log_size())).collect();
    let h_glob: Vec<u32> = (0..top.min(4)).map(|i| ord.global.cohomology(i as i64).log_size()).collect();
    let h0_ok = h_ord[0] == Some(h_glob[0]);
    let coprime = gcd(s.group.order(), rho.ring().p() as usize) == 1;
    let vanishing_ok = !coprime || h_ord.iter().skip(1).all(|h| h.is_none_or(|x| x == 0));
    let regularity: Vec<Value> = match &s.omega {
        None => vec![],
        Some(omega) => s
            .places
            .iter()
            .map(|v| match check_regularity(&v.decomposition, rho, omega) {
                Ok(r) => json!({ "place": v.label, "report": r }),
                Err(e) => json!({ "place": v.label, "error": e.to_string() }),
            })
            .collect(),
    };
    let details = json!({
        "h_ord_log": h_ord,
        "h_global_log": h_glob,
        "l_log": ord.conditions.iter().map(|c| c.l_log).collect::<Vec<_>>(),
        "h0_matches": h0_ok,
        "coprime_order": coprime,
        "coprime_vanishing": vanishing_ok,
        "regularity": regularity,
    });
    Ok((pass_if(h0_ok && vanishing_ok), details))
}

fn selmer_mu(s: &Scenario, rep: &str, top: usize, budget: u64) -> Outcome {
    let rho = hom(s, rep);
    let data = s.local_data(rho)?;
    let g = adjoint_module(&s.group, rho, AdjointFlavor::Gl)?;
    let ord = ordinary_complex(&s.group, &data, &g, top, budget)?;
    let strict = ordinary_mu_complex(&s.group, &data, &g, top, budget)?;
    let h = |c: &crate::selmer::OrdinaryComplex| -> Vec<Option<u32>> { (0..=3).map(|i| c.cohomology(i).map(|h| h.log_size())).collect() };
    let (h_ord, h_str) = (h(&ord), h(&strict));
    let l_ord: Vec<u32> = ord.conditions.iter().map(|c| c.l_log).collect();
    let l_str: Vec<u32> = strict.conditions.iter().map(|c| c.l_log).collect();
    let h1_ok = match (h_str[1], h_ord[1]) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    let l_ok = l_str.iter().zip(&l_ord).all(|(a, b)| a <= b);
    let details = json!({
        "h_strict_log": h_str,
        "h_ord_log": h_ord,
        "l_strict_log": l_str,
        "l_log": l_ord,
        "h1_strict_at_most_h1_ord": h1_ok,
        "strict_conditions_smaller": l_ok,
    });
    Ok((pass_if(h1_ok && l_ok), details))
}

fn star(s: &Scenario, rep: &str, top: usize, budget: u64) -> Outcome {
    let rho = hom(s, rep);
    let data = s.local_data(rho)?;
    let g = adjoint_module(&s.group, rho, AdjointFlavor::Gl)?;
    let report = verify_star(&s.group, &data, &g, top, budget)?;
    let ok = report.all_exact();
    Ok((pass_if(ok), json!({ "all_exact": ok, "report": report })))
}

fn residual(s: &Scenario, rep: &str) -> Result<ResidualRep, TaskError> {
    Ok(ResidualRep::from_representation(&s.group, hom(s, rep).clone())?)
}

fn deform(s: &Scenario, rep: &str, ring: &str, ordinary: bool, budget: u64) -> Outcome {
    let r = residual(s, rep)?;
    let a = &s.rings[ring];
    let lifts = enumerate_lifts(&r, a, budget)?;
    let classes = deformation_classes(&lifts, a, r.dim(), budget)?;
    let covered: usize = classes.iter().map(|c| c.members.len()).sum();
    let ordinary_classes = if ordinary {
        let places = s
            .places
            .iter()
            .map(|v| {
                let gbar = match &v.gbar {
                    Some(m) => parse_matrix(r.field(), m)?,
                    None => RMatrix::identity(r.field(), r.dim()),
                };
                Ok(OrdinaryPlace { decomposition: v.decomposition.clone(), gbar })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Some(ordinary_filter(&s.group, &classes, &places, a, budget)?)
    } else {
        None
    };
    let reps: Vec<_> = classes.iter().take(MAX_LISTED).map(|c| matrix_coords(a, &c.representative.gens)).collect();
    let details = json!({
        "framed_lifts": lifts.len(),
        "classes": classes.len(),
        "class_sizes": classes.iter().map(|c| c.members.len()).collect::<Vec<_>>(),
        "representatives": reps,
        "ordinary_classes": ordinary_classes.as_ref().map(|o| o.len()),
        "ordinary_indices": ordinary_classes,
        "scalar_commutant": r.scalar_commutant(),
    });
    Ok((pass_if(covered == lifts.len()), details))
}

fn tangent(s: &Scenario, rep: &str, budget: u64) -> Outcome {
    let r = residual(s, rep)?;
    let t = tangent_check(&r, budget)?;
    let p = t.p as u64;
    let details = json!({
        "framed_lifts": t.framed_lifts,
        "z1_size": p.pow(t.z1_log),
        "classes": t.classes,
        "h1_size": p.pow(t.h1_log),
        "report": t,
    });
    Ok((pass_if(t.passes()), details))
}

fn obstruction(s: &Scenario, rep: &str, source: &str, images: Option<&[Vec<i64>]>, budget: u64) -> Outcome {
    let rho0 = hom(s, rep);
    let a1 = &s.rings[source];
    let surj = surjection(a1, rho0.ring(), images)?;
    let report = obstruction_class(&s.group, rho0, &surj, budget)?;
    // with a field target, a nonzero class is confirmed by exhaustive search
    let lifts_found = if !report.is_zero && rho0.ring().is_field() {
        let r = ResidualRep::from_representation(&s.group, rho0.clone())?;
        Some(enumerate_lifts(&r, a1, budget)?.len())
    } else {
        None
    };
    let lift_ok = match &report.lift {
        Some(l) => {
            let lifted = l.representation(&s.group, a1)?;
            lifted.images().iter().zip(rho0.images()).all(|(x, y)| x.map_entries(|c| surj.apply(c)) == *y)
        }
        None => true,
    };
    let ok = report.is_cocycle
        && report.section_independent
        && report.is_zero == report.lift.is_some()
        && lift_ok
        && lifts_found.is_none_or(|c| c == 0);
    let details = json!({
        "is_zero": report.is_zero,
        "class": report.class,
        "class_orders": report.class_orders,
        "kernel_dim": report.kernel_dim,
        "is_cocycle": report.is_cocycle,
        "section_independent": report.section_independent,
        "lift": report.lift.as_ref().map(|l| matrix_coords(a1, &l.gens)),
        "lift_reduces_correctly": lift_ok,
        "exhaustive_lifts_found": lifts_found,
    });
    Ok((pass_if(ok), details))
}

/// Random complexes in degrees `0..=d`, `d <= max_degree`, ranks at most
/// `max_rank`; each is checked for `N(DK(C)) = C` and `pi_* DK(C) = H_*(C)`.
fn doldkan_roundtrip(p: u32, e: u32, count: usize, seed: u64, max_rank: usize, max_degree: usize) -> Outcome {
    let ring = Zpe::new(p, e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus: Vec<ChainComplex> = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            let ranks: Vec<usize> = (0..=d).map(|_| rng.gen_range(0..=max_rank)).collect();
            ChainComplex::random(ring, 0, &ranks, 0.7, &mut rng)
        })
        .collect();
    let checks = par::map(&corpus, |c| -> Result<(bool, bool), SimplicialError> {
        let level = c.hi().max(1) as usize;
        let m = dk(c, level)?;
        let roundtrip = normalized(&m)?.with_range(0, level as i64) == c.with_range(0, level as i64);
        let pi = homotopy_groups(&m)?;
        let homotopy = pi.iter().all(|g| g.orders == homology(c, g.degree as i64).orders());
        Ok((roundtrip, homotopy))
    });
    let mut rows = Vec::with_capacity(count);
    let mut all = true;
    for (c, r) in corpus.iter().zip(checks) {
        let (roundtrip, homotopy) = r?;
        all &= roundtrip && homotopy;
        let ranks: Vec<usize> = (0..=c.hi()).map(|n| c.rank(n)).collect();
        rows.push(json!({ "ranks": ranks, "roundtrip": roundtrip, "homotopy_matches_homology": homotopy }));
    }
    Ok((pass_if(all), json!({ "p": p, "e": e, "count": count, "seed": seed, "complexes": rows })))
}

/// `T + T[j]` with `T` acting on itself.
fn homotopy(s: &Scenario, ring: &str, j: usize, level: usize) -> Outcome {
    let t = &s.rings[ring];
    let base = t.base();
    let d = t.rank();
    let consts = t.structure_constants();
    let action: Vec<ZpeMatrix> =
        (0..d).map(|i| ZpeMatrix::from_fn(base, d, d, |r, c| consts[(i * d + c) * d + r])).collect();
    let a = square_zero_extension(t, &action, j, level)?;
    let h = homotopy_ring(&a)?;
    let pi0_ok = h.pi0 == *t;
    let expected = |n: usize| if n == j { vec![base.e(); d] } else { vec![] };
    let groups_ok = (1..level).all(|n| h.groups[n].orders == expected(n));
    let action_ok = (0..d).all(|i| h.pi0_action(&t.basis_vector(i), j) == action[i]);
    let pairs: Vec<(usize, usize)> = (0..=level).flat_map(|i| (i..=level - i).map(move |k| (i, k))).collect();
    let commutative = pairs.iter().all(|&(i, k)| h.is_graded_commutative(i, k));
    let details = json!({
        "level": level,
        "j": j,
        "pi_orders": h.groups.iter().map(|g| g.orders.clone()).collect::<Vec<_>>(),
        "pi_reliable": h.groups.iter().map(|g| g.reliable).collect::<Vec<_>>(),
        "pi0_is_t": pi0_ok,
        "groups_as_expected": groups_ok,
        "pi0_action_matches": action_ok,
        "graded_commutative_pairs": pairs.len(),
        "graded_commutative": commutative,
    });
    Ok((pass_if(pi0_ok && groups_ok && action_ok && commutative), details))
}

fn totalization(s: &Scenario, rep: &str, flavor: AdjointFlavor, top: usize, budget: u64) -> Outcome {
    let m = adjoint_module(&s.group, hom(s, rep), flavor)?;
    let cos = cosimplicial_group_complex(&s.group, &m, top, budget)?;
    let inh = cochain_complex(&s.group, &m, top, budget)?;
    let equal: Vec<bool> = (0..top as i64).map(|n| cos.differential(n) == inh.differential(n)).collect();
    let ranks: Vec<usize> = (0..=top as i64).map(|n| inh.rank(n)).collect();
    let ok = equal.iter().all(|&b| b);
    Ok((pass_if(ok), json!({ "ranks": ranks, "differentials_equal": equal })))
}

fn table_of(
    s: &Scenario,
    rep: &str,
    max_tuple: usize,
    max_word: usize,
    budget: u64,
) -> Result<crate::pseudochar::PseudoCharacterTable, TaskError> {
    let r = &s.representations[rep];
    Ok(from_quasi_lift(&s.group, &s.rings[&r.ring], &r.images, max_tuple, max_word, budget)?)
}

fn pseudochar_verify(s: &Scenario, rep: &str, max_tuple: usize, max_word: usize, budget: u64) -> Outcome {
    let t = table_of(s, rep, max_tuple, max_word, budget)?;
    let report = verify_axioms(&s.group, &t);
    let details = json!({
        "homomorphism": s.representations[rep].hom.is_some(),
        "max_tuple": max_tuple,
        "max_word": max_word,
        "report": report,
    });
    Ok((pass_if(report.passes()), details))
}

/// For a homomorphism equivariance is required. For a map that is not one,
/// a violation is the expected outcome and its absence is inconclusive at
/// the given bounds.
fn pseudochar_reflect(s: &Scenario, rep: &str, max_tuple: usize, max_word: usize, budget: u64) -> Outcome {
    let t = table_of(s, rep, max_tuple, max_word, budget)?;
    let report = reflection_check(&t);
    let is_hom = s.representations[rep].hom.is_some();
    let (verdict, outcome) = match (is_hom, report.equivariant) {
        (true, true) => (Verdict::Pass, "equivariant".to_string()),
        (true, false) => (Verdict::Fail, "violation on a homomorphism".to_string()),
        (false, false) => (Verdict::Pass, "violation".to_string()),
        (false, true) => (Verdict::Inconclusive, format!("inconclusive at L = {max_word}")),
    };
    Ok((verdict, json!({ "homomorphism": is_hom, "outcome": outcome, "report": report })))
}

fn pseudochar_reconstruct(s: &Scenario, rep: &str, res: &str, max_tuple: usize, max_word: usize, budget: u64) -> Outcome {
    let t = table_of(s, rep, max_tuple, max_word, budget)?;
    let r = residual(s, res)?;
    let a = t.ring().clone();
    let out = match reconstruct(&t, &r, budget) {
        Ok(out) => out,
        Err(PseudocharError::Ambiguous { element, count }) => {
            let details = json!({ "ambiguous_element": element, "matching_lifts": count, "max_word": max_word });
            return Ok((Verdict::Inconclusive, details));
        }
        Err(e) => return Err(e.into()),
    };
    let gens = s.group.generators();
    let input: Vec<RMatrix> = gens.iter().map(|&g| s.representations[rep].images[g].clone()).collect();
    let output: Vec<RMatrix> = gens.iter().map(|&g| out.table[g].clone()).collect();
    let w = conj_equivalent(&a, &output, &input, budget)?;
    let ok = out.round_trip && out.is_quasi_lift && w.conjugator.is_some();
    let details = json!({
        "round_trip": out.round_trip,
        "is_quasi_lift": out.is_quasi_lift,
        "kernel_conjugate_to_input": w.conjugator.is_some(),
        "conjugator": w.conjugator.as_ref().map(|u| u.to_coords(&a)),
        "generator_images": matrix_coords(&a, &output),
    });
    Ok((pass_if(ok), details))
}

#[cfg(test)]
mod tests {
    use super::super::emit_fixture;
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = sort_keys(json!({ "b": 1, "a": { "d": 2, "c": [ { "z": 0, "y": 1 } ] } }));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"c":[{"y":1,"z":0}],"d":2},"b":1}"#);
    }

    #[test]
    fn tangent_on_z3_counts_three() {
        let s = Scenario::from_json(emit_fixture("z3_gl1_f3").unwrap()).unwrap();
        let opts = RunOptions { tasks: vec!["tangent".into()], ..Default::default() };
        let r = run(&s, &opts).unwrap();
        assert_eq!(r.tasks.len(), 1);
        let t = &r.tasks[0];
        assert_eq!(t.verdict, Verdict::Pass);
        assert_eq!(t.details["framed_lifts"], 3);
        assert_eq!(t.details["z1_size"], 3);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let s = Scenario::from_json(emit_fixture("s3_gl2_f5").unwrap()).unwrap();
        let opts = RunOptions { tasks: vec!["deform".into()], budget: Some(10), ..Default::default() };
        let r = run(&s, &opts).unwrap();
        assert_eq!(r.tasks[0].verdict, Verdict::Inconclusive);
        assert!(r.tasks[0].error.as_ref().unwrap().contains("budget"));
    }

    #[test]
    fn unknown_selector_rejected() {
        let s = Scenario::from_json(emit_fixture("z3_gl1_f3").unwrap()).unwrap();
        let opts = RunOptions { tasks: vec!["nope".into()], ..Default::default() };
        assert!(matches!(run(&s, &opts), Err(ScenarioError::Validation(_))));
    }
}
