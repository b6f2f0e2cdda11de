//! JSON scenarios: named rings, one finite group, representations, local
//! places and a task list. Validation collects every problem it finds
//! before anything runs; `run` executes the tasks and assembles a report
//! with sorted keys.

mod fixtures;
mod tasks;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ring_from_spec, FiniteLocalRing, RMatrix, RingSpec};
use crate::galois::{adjoint_module, AdjointFlavor, Character, FiniteGroup, GroupSpec, Representation, Subgroup};
use crate::selmer::LocalDatum;

pub use fixtures::{emit_fixture, FIXTURE_NAMES};
pub use tasks::{run, RunOptions, Report, TaskResult, Verdict, TASK_NAMES};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{} validation error(s):\n  {}", .0.len(), .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// A matrix entry: an integer (its image in the ring) or the coordinates
/// of the element in the ring's basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Int(i64),
    Coords(Vec<i64>),
}

pub type MatrixSpec = Vec<Vec<EntrySpec>>;

/// A group element by index or as a word in the generators (letters `+-k`,
/// 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Index(usize),
    Word(Vec<i32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub ring: String,
    /// Images of the group generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixSpec>>,
    /// Images of all elements, in element order; need not be a
    /// homomorphism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<MatrixSpec>>,
}

fn borel() -> AdjointFlavor {
    AdjointFlavor::Borel
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceSpec {
    pub label: String,
    /// Generators of the decomposition group.
    pub decomposition: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia: Option<Vec<ElementSpec>>,
    /// Residual matrix conjugating the place into the Borel, for the
    /// ordinary deformation condition; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbar: Option<MatrixSpec>,
    #[serde(default = "borel")]
    pub flavor: AdjointFlavor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub ring: String,
    /// Values on the generators.
    pub generators: Vec<i64>,
}

fn default_flavor() -> AdjointFlavor {
    AdjointFlavor::Gl
}
fn three() -> usize {
    3
}
fn six() -> usize {
    6
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    Cohomology {
        representation: String,
        #[serde(default = "default_flavor")]
        flavor: AdjointFlavor,
        #[serde(default = "three")]
        top: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    Selmer {
        representation: String,
        #[serde(default = "three")]
        top: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    SelmerMu {
        representation: String,
        #[serde(default = "three")]
        top: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    Star {
        representation: String,
        #[serde(default = "three")]
        top: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    Deform {
        representation: String,
        ring: String,
        #[serde(default)]
        ordinary: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    Tangent {
        representation: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    Obstruction {
        /// Over the target of the surjection.
        representation: String,
        source: String,
        /// Target coordinates of the image of each source basis vector;
        /// the truncation map when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        images: Option<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    DoldkanRoundtrip {
        p: u32,
        #[serde(default = "one")]
        e: u32,
        count: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "three")]
        max_rank: usize,
        #[serde(default = "five")]
        max_degree: usize,
    },
    HomotopyRing {
        ring: String,
        j: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<usize>,
    },
    Totalization {
        representation: String,
        #[serde(default = "default_flavor")]
        flavor: AdjointFlavor,
        #[serde(default = "three")]
        top: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    PseudocharVerify {
        representation: String,
        #[serde(default = "three")]
        max_tuple: usize,
        #[serde(default = "six")]
        max_word: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    PseudocharReflect {
        representation: String,
        #[serde(default = "three")]
        max_tuple: usize,
        #[serde(default = "six")]
        max_word: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
    PseudocharReconstruct {
        representation: String,
        residual: String,
        #[serde(default = "three")]
        max_tuple: usize,
        #[serde(default = "six")]
        max_word: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        budget: Option<u64>,
    },
}

fn one() -> u32 {
    1
}
fn five() -> usize {
    5
}

impl TaskSpec {
    pub fn name(&self) -> &'static str {
        match self {
            TaskSpec::Cohomology { .. } => "cohomology",
            TaskSpec::Selmer { .. } => "selmer",
            TaskSpec::SelmerMu { .. } => "selmer-mu",
            TaskSpec::Star { .. } => "star",
            TaskSpec::Deform { .. } => "deform",
            TaskSpec::Tangent { .. } => "tangent",
            TaskSpec::Obstruction { .. } => "obstruction",
            TaskSpec::DoldkanRoundtrip { .. } => "doldkan-roundtrip",
            TaskSpec::HomotopyRing { .. } => "homotopy-ring",
            TaskSpec::Totalization { .. } => "totalization",
            TaskSpec::PseudocharVerify { .. } => "pseudochar-verify",
            TaskSpec::PseudocharReflect { .. } => "pseudochar-reflect",
            TaskSpec::PseudocharReconstruct { .. } => "pseudochar-reconstruct",
        }
    }

    pub fn budget(&self) -> Option<u64> {
        match self {
            TaskSpec::Cohomology { budget, .. }
            | TaskSpec::Selmer { budget, .. }
            | TaskSpec::SelmerMu { budget, .. }
            | TaskSpec::Star { budget, .. }
            | TaskSpec::Deform { budget, .. }
            | TaskSpec::Tangent { budget, .. }
            | TaskSpec::Obstruction { budget, .. }
            | TaskSpec::Totalization { budget, .. }
            | TaskSpec::PseudocharVerify { budget, .. }
            | TaskSpec::PseudocharReflect { budget, .. }
            | TaskSpec::PseudocharReconstruct { budget, .. } => *budget,
            TaskSpec::DoldkanRoundtrip { .. } | TaskSpec::HomotopyRing { .. } => None,
        }
    }
}

/// The file format, as parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub rings: BTreeMap<String, RingSpec>,
    pub group: GroupSpec,
    #[serde(default)]
    pub representations: BTreeMap<String, RepresentationSpec>,
    #[serde(default)]
    pub places: Vec<PlaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<CharacterSpec>,
    pub tasks: Vec<TaskSpec>,
}

/// A representation after validation: its full table, and the
/// homomorphism when it is one.
#[derive(Clone, Debug)]
pub struct ResolvedRep {
    pub ring: String,
    pub images: Vec<RMatrix>,
    pub hom: Option<Representation>,
}

#[derive(Clone, Debug)]
pub struct Place {
    pub label: String,
    pub decomposition: Subgroup,
    pub inertia: Option<Subgroup>,
    /// Parsed over the residual field of the task that uses it.
    pub gbar: Option<MatrixSpec>,
    pub flavor: AdjointFlavor,
}

/// A fully validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub rings: BTreeMap<String, FiniteLocalRing>,
    pub group: FiniteGroup,
    pub representations: BTreeMap<String, ResolvedRep>,
    pub places: Vec<Place>,
    pub omega: Option<Character>,
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.file.name
    }
    pub fn tasks(&self) -> &[TaskSpec] {
        &self.file.tasks
    }

    /// Parse and validate.
    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        validate(file)
    }

    /// Local data for the Selmer tasks, built from a homomorphism.
    pub(crate) fn local_data(&self, rep: &Representation) -> Result<Vec<LocalDatum>, String> {
        self.places
            .iter()
            .map(|v| {
                LocalDatum::from_representation(
                    v.label.clone(),
                    &self.group,
                    rep,
                    AdjointFlavor::Gl,
                    v.flavor,
                    v.decomposition.clone(),
                    v.inertia.clone(),
                )
                .map_err(|e| format!("place {}: {e}", v.label))
            })
            .collect()
    }
}

pub(crate) fn parse_matrix(ring: &FiniteLocalRing, m: &MatrixSpec) -> Result<RMatrix, String> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(format!("matrix rows must be non-empty and of equal length, got {rows} rows"));
    }
    let base = ring.base();
    let mut entries = Vec::with_capacity(rows * cols);
    for e in m.iter().flatten() {
        entries.push(match e {
            EntrySpec::Int(c) => ring.from_i64(*c),
            EntrySpec::Coords(v) => {
                if v.len() != ring.rank() {
                    return Err(format!("entry has {} coordinates, the ring has rank {}", v.len(), ring.rank()));
                }
                let c: Vec<u32> = v.iter().map(|&x| base.from_i64(x)).collect();
                ring.encode(&c)
            }
        });
    }
    RMatrix::from_entries(rows, cols, &entries).map_err(|e| e.to_string())
}

fn check_word(w: &[i32], gens: usize) -> Result<(), String> {
    match w.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > gens) {
        Some(l) => Err(format!("letter {l} refers to a missing generator (there are {gens})")),
        None => Ok(()),
    }
}

fn resolve_element(group: &FiniteGroup, e: &ElementSpec) -> Result<usize, String> {
    match e {
        ElementSpec::Index(i) if *i < group.order() => Ok(*i),
        ElementSpec::Index(i) => Err(format!("element {i} out of range (order {})", group.order())),
        ElementSpec::Word(w) => {
            check_word(w, group.generators().len())?;
            group.eval_word(w).map_err(|e| e.to_string())
        }
    }
}

fn resolve_subgroup(group: &FiniteGroup, gens: &[ElementSpec]) -> Result<Subgroup, String> {
    let elems = gens.iter().map(|e| resolve_element(group, e)).collect::<Result<Vec<_>, _>>()?;
    group.subgroup(&elems).map_err(|e| e.to_string())
}

fn resolve_rep(
    group: &FiniteGroup,
    rings: &BTreeMap<String, FiniteLocalRing>,
    spec: &RepresentationSpec,
) -> Result<ResolvedRep, String> {
    let ring = rings.get(&spec.ring).ok_or_else(|| format!("unknown ring `{}`", spec.ring))?;
    let parse_all = |ms: &[MatrixSpec]| -> Result<Vec<RMatrix>, String> {
        ms.iter().enumerate().map(|(i, m)| parse_matrix(ring, m).map_err(|e| format!("matrix {i}: {e}"))).collect()
    };
    match (&spec.generators, &spec.table) {
        (Some(gens), None) => {
            let count = group.generators().len();
            if gens.len() != count {
                return Err(format!("{} generator images for {count} generators", gens.len()));
            }
            let gens = parse_all(gens)?;
            let rep = Representation::from_generators(group, ring, &gens).map_err(|e| e.to_string())?;
            Ok(ResolvedRep { ring: spec.ring.clone(), images: rep.images().to_vec(), hom: Some(rep) })
        }
        (None, Some(table)) => {
            if table.len() != group.order() {
                return Err(format!("table has {} entries for a group of order {}", table.len(), group.order()));
            }
            let images = parse_all(table)?;
            let n = images[0].rows();
            if images.iter().any(|m| m.rows() != n || m.cols() != n) {
                return Err("table entries must be square of one size".into());
            }
            if let Some(i) = images.iter().position(|m| !m.is_invertible(ring)) {
                return Err(format!("table entry {i} is not invertible"));
            }
            if !images[group.identity()].is_identity(ring) {
                return Err("the identity element must map to the identity matrix".into());
            }
            let hom = Representation::from_table(group, ring, images.clone()).ok();
            Ok(ResolvedRep { ring: spec.ring.clone(), images, hom })
        }
        _ => Err("give exactly one of `generators` or `table`".into()),
    }
}

/// Check everything the tasks will rely on, collecting all errors.
pub fn validate(file: ScenarioFile) -> Result<Scenario, ScenarioError> {
    let mut errs: Vec<String> = Vec::new();
    if file.schema_version != SCHEMA_VERSION {
        errs.push(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", file.schema_version));
    }

    let mut rings = BTreeMap::new();
    for (name, spec) in &file.rings {
        match ring_from_spec(spec) {
            Ok(r) => {
                rings.insert(name.clone(), r);
            }
            Err(e) => errs.push(format!("rings.{name}: {e}")),
        }
    }

    let gen_count = match (&file.group.cayley, &file.group.permutations) {
        (Some(_), _) => file.group.generators.as_ref().map_or(0, |g| g.len()),
        (None, Some(p)) => p.len(),
        (None, None) => 0,
    };
    let mut relations_ok = true;
    for (i, r) in file.group.relations.iter().enumerate() {
        if let Err(e) = check_word(r, gen_count) {
            errs.push(format!("group.relations[{i}]: {e}"));
            relations_ok = false;
        }
    }
    let group = if relations_ok {
        FiniteGroup::from_spec(&file.group).map_err(|e| errs.push(format!("group: {e}"))).ok()
    } else {
        None
    };
    let Some(group) = group else {
        return Err(ScenarioError::Validation(errs));
    };

    let mut reps = BTreeMap::new();
    for (name, spec) in &file.representations {
        match resolve_rep(&group, &rings, spec) {
            Ok(r) => {
                reps.insert(name.clone(), r);
            }
            Err(e) => errs.push(format!("representations.{name}: {e}")),
        }
    }

    let mut places = Vec::new();
    for (i, v) in file.places.iter().enumerate() {
        let at = format!("places[{i}] ({})", v.label);
        let decomposition = resolve_subgroup(&group, &v.decomposition).map_err(|e| errs.push(format!("{at}.decomposition: {e}")));
        let inertia = match &v.inertia {
            None => Ok(None),
            Some(gens) => resolve_subgroup(&group, gens).map(Some).map_err(|e| errs.push(format!("{at}.inertia: {e}"))),
        };
        if let (Ok(decomposition), Ok(inertia)) = (decomposition, inertia) {
            if inertia.as_ref().is_some_and(|i| !i.is_subgroup_of(&decomposition)) {
                errs.push(format!("{at}: inertia is not contained in the decomposition group"));
            }
            places.push(Place { label: v.label.clone(), decomposition, inertia, gbar: v.gbar.clone(), flavor: v.flavor });
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for v in &file.places {
        if !seen.insert(&v.label) {
            errs.push(format!("places: duplicate label `{}`", v.label));
        }
    }

    let omega = file.omega.as_ref().and_then(|o| {
        let r = rings.get(&o.ring).or_else(|| {
            errs.push(format!("omega: unknown ring `{}`", o.ring));
            None
        })?;
        let vals: Vec<u32> = o.generators.iter().map(|&c| r.base().from_i64(c)).collect();
        Character::from_generators(&group, r.base(), &vals).map_err(|e| errs.push(format!("omega: {e}"))).ok()
    });

    let scenario = Scenario { file: file.clone(), rings, group, representations: reps, places, omega };
    for (i, t) in file.tasks.iter().enumerate() {
        for e in check_task(&scenario, t) {
            errs.push(format!("tasks[{i}] ({}): {e}", t.name()));
        }
    }
    if errs.is_empty() {
        Ok(scenario)
    } else {
        Err(ScenarioError::Validation(errs))
    }
}

/// Problems with one task's references and parameters.
fn check_task(s: &Scenario, t: &TaskSpec) -> Vec<String> {
    let mut errs = Vec::new();
    let group = &s.group;
    let rep = |name: &str, errs: &mut Vec<String>| -> Option<ResolvedRep> {
        let r = s.representations.get(name).cloned();
        if r.is_none() && !s.file.representations.contains_key(name) {
            errs.push(format!("unknown representation `{name}`"));
        }
        r
    };
    let hom = |name: &str, errs: &mut Vec<String>| -> Option<Representation> {
        let r = rep(name, errs)?;
        if r.hom.is_none() {
            errs.push(format!("representation `{name}` is not a homomorphism"));
        }
        r.hom
    };
    let field_hom = |name: &str, errs: &mut Vec<String>| -> Option<Representation> {
        let h = hom(name, errs)?;
        if !h.ring().is_field() {
            errs.push(format!("representation `{name}` must be over a prime field"));
            return None;
        }
        Some(h)
    };
    let ring = |name: &str, errs: &mut Vec<String>| -> Option<FiniteLocalRing> {
        let r = s.rings.get(name).cloned();
        if r.is_none() && !s.file.rings.contains_key(name) {
            errs.push(format!("unknown ring `{name}`"));
        }
        r
    };
    let flavor_ok = |h: &Representation, f: AdjointFlavor, errs: &mut Vec<String>| {
        if let Err(e) = adjoint_module(group, h, f) {
            errs.push(e.to_string());
        }
    };
    let places_ok = |h: &Representation, errs: &mut Vec<String>| {
        if let Err(e) = s.local_data(h) {
            errs.push(e);
        }
    };
    let top_at_least = |top: usize, min: usize, errs: &mut Vec<String>| {
        if top < min {
            errs.push(format!("top must be at least {min}"));
        }
    };
    match t {
        TaskSpec::Cohomology { representation, flavor, top, .. } | TaskSpec::Totalization { representation, flavor, top, .. } => {
            top_at_least(*top, 1, &mut errs);
            if let Some(h) = hom(representation, &mut errs) {
                flavor_ok(&h, *flavor, &mut errs);
            }
        }
        TaskSpec::Selmer { representation, top, .. } | TaskSpec::SelmerMu { representation, top, .. } => {
            top_at_least(*top, 2, &mut errs);
            if let Some(h) = hom(representation, &mut errs) {
                places_ok(&h, &mut errs);
            }
            if matches!(t, TaskSpec::SelmerMu { .. }) {
                for v in &s.places {
                    if v.inertia.is_none() {
                        errs.push(format!("place {} has no inertia subgroup", v.label));
                    }
                    if !matches!(v.flavor, AdjointFlavor::Borel | AdjointFlavor::Torus) {
                        errs.push(format!("place {} has no torus quotient for flavor {:?}", v.label, v.flavor));
                    }
                }
            }
        }
        TaskSpec::Star { representation, top, .. } => {
            top_at_least(*top, 2, &mut errs);
            if let Some(h) = hom(representation, &mut errs) {
                places_ok(&h, &mut errs);
            }
        }
        TaskSpec::Deform { representation, ring: a, ordinary, .. } => {
            let h = field_hom(representation, &mut errs);
            let a = ring(a, &mut errs);
            if let (Some(h), Some(a)) = (&h, &a) {
                if h.ring().p() != a.p() {
                    errs.push("the coefficient ring has a different residue characteristic".into());
                }
                if *ordinary {
                    let n = h.dim();
                    for v in &s.places {
                        let Some(m) = &v.gbar else { continue };
                        match parse_matrix(h.ring(), m) {
                            Ok(g) if g.rows() == n && g.cols() == n && g.is_invertible(h.ring()) => {}
                            Ok(_) => errs.push(format!("place {}: gbar must be an invertible {n}x{n} matrix", v.label)),
                            Err(e) => errs.push(format!("place {}: gbar: {e}", v.label)),
                        }
                    }
                }
            }
        }
        TaskSpec::Tangent { representation, .. } => {
            field_hom(representation, &mut errs);
        }
        TaskSpec::Obstruction { representation, source, images, .. } => {
            let h = hom(representation, &mut errs);
            let a1 = ring(source, &mut errs);
            if let (Some(h), Some(a1)) = (h, a1) {
                if let Err(e) = tasks::surjection(&a1, h.ring(), images.as_deref()) {
                    errs.push(e.to_string());
                }
            }
        }
        TaskSpec::DoldkanRoundtrip { p, e, count, max_degree, .. } => {
            if let Err(err) = crate::algebra::Zpe::new(*p, *e) {
                errs.push(err.to_string());
            }
            if *count == 0 {
                errs.push("count must be positive".into());
            }
            if *max_degree == 0 {
                errs.push("max_degree must be positive".into());
            }
        }
        TaskSpec::HomotopyRing { ring: name, j, level } => {
            ring(name, &mut errs);
            if *j == 0 {
                errs.push("j must be positive".into());
            }
            if level.is_some_and(|l| l <= *j || l < 2) {
                errs.push("level must exceed j and be at least 2".into());
            }
        }
        TaskSpec::PseudocharVerify { representation, max_tuple, .. }
        | TaskSpec::PseudocharReflect { representation, max_tuple, .. } => {
            rep(representation, &mut errs);
            if *max_tuple == 0 {
                errs.push("max_tuple must be positive".into());
            }
        }
        TaskSpec::PseudocharReconstruct { representation, residual, max_tuple, .. } => {
            let lift = rep(representation, &mut errs);
            let res = field_hom(residual, &mut errs);
            if let (Some(lift), Some(res)) = (lift, res) {
                let a = &s.rings[&lift.ring];
                if a.p() != res.ring().p() {
                    errs.push("lift and residual representation have different characteristic".into());
                } else if lift.images.iter().zip(res.images()).any(|(x, y)| x.residue(a) != y.residue(res.ring())) {
                    errs.push(format!("`{representation}` does not reduce to `{residual}`"));
                }
            }
            if *max_tuple < group.generators().len() + 1 {
                errs.push(format!("max_tuple must be at least {} (generators + 1)", group.generators().len() + 1));
            }
        }
    }
    errs
}
