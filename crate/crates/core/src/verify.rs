//! Named checks over generated instances.
//!
//! Each check records, per instance, either an asserted outcome (pass or
//! failure with observed and expected values) or an observation for instances
//! outside the hypotheses of the statement being checked. Checks whose
//! hypotheses never apply are reported as vacuous rather than as passes.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::constructions::{
    cross_polytope_boundary, simplex_boundary, stack_auto, stellar_subdivide, swartz_demo, symmetric_stack, BaseKind,
    StackMode, StackingScript,
};
use crate::enumerative::{binomial, f_vector, g_number, h_polynomial, SubdivisionMap};
use crate::error::{Error, Result};
use crate::geometry::{project_orthogonal, realize_script, RealizedPolytope};
use crate::graph::Graph;
use crate::io::{ComplexDocument, ComplexFile};
use crate::polynomial::IntPolynomial;
use crate::rigidity::{
    g2_framework, is_infinitesimally_rigid, motions_basis, rigidity_matrix, stress_basis, stress_through_edge,
    symmetric_stress_dim_direct, symmetric_stress_subspace, StressBasis, SymmetricStresses,
};
use crate::symmetry::{validate_cs, CsComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    G2CrossPolytope,
    HCrossPolytope,
    GrCrossPolytope,
    HandshakeIdentity,
    CommonNeighbors,
    MainTheoremForward,
    MissingFaceGraphLemma,
    LbtEquality,
    SymmStressBound,
    ChordlessCycleStress,
    SwartzBookkeeping,
    EllhIdentity,
    ConeLemma,
    RigidityInvariants,
}

impl CheckName {
    pub const ALL: [CheckName; 14] = [
        CheckName::G2CrossPolytope,
        CheckName::HCrossPolytope,
        CheckName::GrCrossPolytope,
        CheckName::HandshakeIdentity,
        CheckName::CommonNeighbors,
        CheckName::MainTheoremForward,
        CheckName::MissingFaceGraphLemma,
        CheckName::LbtEquality,
        CheckName::SymmStressBound,
        CheckName::ChordlessCycleStress,
        CheckName::SwartzBookkeeping,
        CheckName::EllhIdentity,
        CheckName::ConeLemma,
        CheckName::RigidityInvariants,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::G2CrossPolytope => "g2_cross_polytope",
            CheckName::HCrossPolytope => "h_cross_polytope",
            CheckName::GrCrossPolytope => "g_r_cross_polytope",
            CheckName::HandshakeIdentity => "handshake_identity",
            CheckName::CommonNeighbors => "common_neighbors",
            CheckName::MainTheoremForward => "main_theorem_forward",
            CheckName::MissingFaceGraphLemma => "missing_face_graph_lemma",
            CheckName::LbtEquality => "lbt_equality",
            CheckName::SymmStressBound => "symm_stress_bound",
            CheckName::ChordlessCycleStress => "chordless_cycle_stress",
            CheckName::SwartzBookkeeping => "swartz_bookkeeping",
            CheckName::EllhIdentity => "ellh_identity",
            CheckName::ConeLemma => "cone_lemma",
            CheckName::RigidityInvariants => "rigidity_invariants",
        }
    }

    fn needs_symmetric_family(self) -> bool {
        matches!(
            self,
            CheckName::MainTheoremForward
                | CheckName::MissingFaceGraphLemma
                | CheckName::SymmStressBound
                | CheckName::ChordlessCycleStress
                | CheckName::ConeLemma
                | CheckName::RigidityInvariants
                | CheckName::LbtEquality
        )
    }

    fn needs_stacked_family(self) -> bool {
        matches!(self, CheckName::LbtEquality | CheckName::RigidityInvariants)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub observed: String,
    pub expected: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<ComplexDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub instance: String,
    pub note: String,
}

/// Outcome of one named check. `passed + failures.len() == instances`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    /// Instances outside the hypotheses; recorded, not asserted.
    pub observations: Vec<Observation>,
    /// Asserted instances that held only because nothing qualified.
    pub vacuous: usize,
    pub wall_time: f64,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            instances: 0,
            passed: 0,
            failures: Vec::new(),
            observations: Vec::new(),
            vacuous: 0,
            wall_time: 0.0,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, instance: &str, ok: bool, observed: impl fmt::Display, expected: impl fmt::Display) -> bool {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(Failure {
                instance: instance.to_string(),
                observed: observed.to_string(),
                expected: expected.to_string(),
                reproducer: None,
            });
        }
        ok
    }

    fn fail_with(&mut self, instance: &str, err: &Error) {
        self.record(instance, false, format!("error: {err}"), "no error");
    }

    fn attach(&mut self, since: usize, file: impl FnOnce() -> ComplexFile) {
        if self.failures.len() > since {
            let doc = file().to_document();
            for f in &mut self.failures[since..] {
                f.reproducer.get_or_insert_with(|| doc.clone());
            }
        }
    }

    fn observe(&mut self, instance: &str, note: impl Into<String>) {
        self.observations.push(Observation {
            instance: instance.to_string(),
            note: note.into(),
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.passed += other.passed;
        self.failures.extend(other.failures);
        self.observations.extend(other.observations);
        self.vacuous += other.vacuous;
        self.wall_time += other.wall_time;
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed().as_secs_f64();
        self
    }
}

fn expected_g2_cross(d: usize) -> i64 {
    binomial(d as i64, 2) - d as i64
}

/// `g_2(C*_d) = C(d,2) - d`.
pub fn check_g2_cross_polytope(ds: RangeInclusive<usize>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::G2CrossPolytope.as_str());
    for d in ds {
        let label = format!("C*_{d}");
        match cross_polytope_boundary(d).and_then(|c| g_number(c.complex(), 2)) {
            Ok(g2) => {
                r.record(&label, g2 == expected_g2_cross(d), g2, expected_g2_cross(d));
            }
            Err(e) => r.fail_with(&label, &e),
        }
    }
    r.timed(start)
}

/// `h(C*_d, x) = (1 + x)^d`.
pub fn check_h_cross_polytope(ds: RangeInclusive<usize>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::HCrossPolytope.as_str());
    for d in ds {
        let label = format!("C*_{d}");
        let expected = IntPolynomial::binomial_power(1, 1, d);
        match cross_polytope_boundary(d).and_then(|c| h_polynomial(c.complex())) {
            Ok(h) => {
                r.record(&label, h == expected, &h, &expected);
            }
            Err(e) => r.fail_with(&label, &e),
        }
    }
    r.timed(start)
}

/// `g_r(C*_d) = C(d,r) - C(d,r-1)` for `1 ≤ r ≤ ⌊d/2⌋`.
pub fn check_g_r_cross_polytope(ds: RangeInclusive<usize>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::GrCrossPolytope.as_str());
    for d in ds {
        let Ok(c) = cross_polytope_boundary(d) else {
            r.fail_with(&format!("C*_{d}"), &Error::InvalidParameter(format!("d = {d}")));
            continue;
        };
        for k in 1..=d / 2 {
            let label = format!("C*_{d}, r={k}");
            let expected = binomial(d as i64, k as i64) - binomial(d as i64, k as i64 - 1);
            match g_number(c.complex(), k) {
                Ok(g) => {
                    r.record(&label, g == expected, g, expected);
                }
                Err(e) => r.fail_with(&label, &e),
            }
        }
    }
    r.timed(start)
}

/// Whether every vertex other than `±u` is adjacent to `u` or `-u` and
/// `lk(u) ∩ lk(-u)` has `2d - 2` vertices, for every `u`.
fn degree_premise(c: &CsComplex, d: usize) -> Result<std::result::Result<(), String>> {
    let g = c.complex().graph();
    for &u in c.complex().vertices() {
        let neg = c.antipode_vertex(u)?;
        for &w in c.complex().vertices() {
            if w != u && w != neg && !g.has_edge(u, w) && !g.has_edge(neg, w) {
                return Ok(Err(format!("vertex {w} is adjacent to neither {u} nor {neg}")));
            }
        }
        let common = c.common_link_vertices(u)?.len();
        if common != 2 * d - 2 {
            return Ok(Err(format!(
                "lk({u}) and lk({neg}) share {common} vertices, not {}",
                2 * d - 2
            )));
        }
    }
    Ok(Ok(()))
}

/// `4 f_1 = f_0 (f_0 + 2d - 4)` whenever the degree premise holds.
pub fn check_handshake_identity(label: &str, c: &CsComplex, d: usize) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::HandshakeIdentity.as_str());
    match degree_premise(c, d) {
        Err(e) => r.fail_with(label, &e),
        Ok(Err(why)) => r.observe(label, format!("premise fails, identity not asserted: {why}")),
        Ok(Ok(())) => {
            let f0 = c.complex().num_vertices() as i64;
            let f1 = c.complex().faces(1).len() as i64;
            let rhs = f0 * (f0 + 2 * d as i64 - 4);
            r.record(
                label,
                4 * f1 == rhs,
                format!("4f1 = {}", 4 * f1),
                format!("f0(f0+2d-4) = {rhs}"),
            );
        }
    }
    r.timed(start)
}

/// `|lk(u) ∩ lk(-u)| = 2d - 2` for every vertex, asserted only when `assert`
/// is set (the cross-polytope); otherwise the counts are recorded.
pub fn check_common_neighbors(label: &str, c: &CsComplex, d: usize, assert: bool) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::CommonNeighbors.as_str());
    let mut counts = Vec::new();
    for &u in c.complex().vertices() {
        let inst = format!("{label}, u={u}");
        match c.common_link_vertices(u) {
            Ok(common) if assert => {
                r.record(&inst, common.len() == 2 * d - 2, common.len(), 2 * d - 2);
            }
            Ok(common) => counts.push(format!("{u}:{}", common.len())),
            Err(e) => r.fail_with(&inst, &e),
        }
    }
    if !assert {
        r.observe(label, format!("not prime, counts recorded only: {}", counts.join(" ")));
    }
    r.timed(start)
}

/// Rigidity data of a realized framework, computed once.
#[derive(Clone, Debug)]
pub struct FrameworkFacts {
    pub graph: Graph,
    pub d: usize,
    pub rank: usize,
    pub rigid: bool,
    pub stresses: StressBasis,
    pub motions: usize,
    pub symmetric: Option<SymmetricStresses>,
    pub symmetric_direct: Option<usize>,
}

impl FrameworkFacts {
    pub fn g2(&self) -> i64 {
        g2_framework(&self.graph, self.d)
    }
}

/// A realized member of the stacking family.
#[derive(Debug)]
pub struct Instance {
    pub label: String,
    pub seed: u64,
    pub script: StackingScript,
    pub polytope: RealizedPolytope,
    facts: OnceLock<std::result::Result<FrameworkFacts, Error>>,
}

impl Instance {
    pub fn realize(label: impl Into<String>, script: StackingScript, seed: u64) -> Result<Self> {
        let polytope = realize_script(&script, seed)?;
        Ok(Instance {
            label: label.into(),
            seed,
            script,
            polytope,
            facts: OnceLock::new(),
        })
    }

    pub fn d(&self) -> usize {
        self.polytope.d()
    }

    pub fn facts(&self) -> Result<&FrameworkFacts> {
        self.facts
            .get_or_init(|| {
                let graph = self.polytope.complex.graph();
                let e = &self.polytope.embedding;
                let m = rigidity_matrix(&graph, e)?;
                let rigid = is_infinitesimally_rigid(&graph, e)?;
                let stresses = stress_basis(&m);
                let cs = self.polytope.cs().ok();
                let (symmetric, symmetric_direct) = match cs {
                    Some(cs) => (
                        Some(symmetric_stress_subspace(&stresses, cs.involution())?),
                        Some(symmetric_stress_dim_direct(&m, cs.involution())?),
                    ),
                    None => (None, None),
                };
                Ok(FrameworkFacts {
                    d: e.d(),
                    rank: m.rank(),
                    rigid,
                    motions: motions_basis(&m).len(),
                    stresses,
                    symmetric,
                    symmetric_direct,
                    graph,
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn file(&self) -> ComplexFile {
        let mut f = ComplexFile::new(self.polytope.complex.clone())
            .with_name(self.label.clone())
            .with_embedding(self.polytope.embedding.clone());
        if let Some(a) = &self.polytope.involution {
            f = f.with_involution(a.clone());
        }
        f
    }
}

fn script_rng(kind: u64, d: usize, k: usize, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d) ^ (kind << 56) ^ ((d as u64) << 32) ^ k as u64)
}

/// `k` symmetric stackings of `C*_d` at facets drawn from `seed`.
pub fn symmetric_script(d: usize, k: usize, seed: u64) -> Result<StackingScript> {
    let mut rng = script_rng(1, d, k, seed);
    let mut cs = cross_polytope_boundary(d)?;
    let mut script = StackingScript::cross(d);
    for _ in 0..k {
        let facets = cs.complex().facets();
        let facet = facets[rng.random_range(0..facets.len())].clone();
        cs = symmetric_stack(&cs, &facet)?;
        script = script.then(facet, StackMode::Symmetric);
    }
    Ok(script)
}

/// `k` stackings of `∂Δ^d` at facets drawn from `seed`.
pub fn stacked_script(d: usize, k: usize, seed: u64) -> Result<StackingScript> {
    let mut rng = script_rng(2, d, k, seed);
    let mut c = simplex_boundary(d)?;
    let mut script = StackingScript::simplex(d);
    for _ in 0..k {
        let facet = c.facets()[rng.random_range(0..c.num_facets())].clone();
        c = stack_auto(&c, &facet)?;
        script = script.then(facet, StackMode::Single);
    }
    Ok(script)
}

/// Main theorem, easy direction: a symmetric stacking of `C*_d` has
/// `g_2 = C(d,2) - d`, a rigid framework, only symmetric stresses, and is cs.
pub fn check_main_theorem_forward(script: &StackingScript, seed: u64) -> Result<CheckReport> {
    if script.base.kind != BaseKind::Cross {
        return Err(Error::InvalidParameter(
            "main theorem check needs a cross-polytope base".into(),
        ));
    }
    let start = Instant::now();
    let label = format!("script d={} steps={} seed={seed}", script.base.d, script.steps.len());
    let inst = Instance::realize(label, script.clone(), seed)?;
    Ok(main_theorem_on(&inst).timed(start))
}

fn main_theorem_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::MainTheoremForward.as_str());
    let before = r.failures.len();
    let d = inst.d();
    let label = &inst.label;
    let cs = inst.polytope.cs();
    r.record(
        &format!("{label}: cs-valid"),
        cs.is_ok(),
        cs.as_ref().err().map_or("valid".to_string(), ToString::to_string),
        "valid",
    );
    match g_number(&inst.polytope.complex, 2) {
        Ok(g2) => {
            r.record(
                &format!("{label}: g2"),
                g2 == expected_g2_cross(d),
                g2,
                expected_g2_cross(d),
            );
        }
        Err(e) => r.fail_with(label, &e),
    }
    match inst.facts() {
        Ok(f) => {
            r.record(&format!("{label}: rigid"), f.rigid, f.rigid, true);
            if cs.is_ok() {
                let all = f.symmetric.is_some_and(|s| s.all_symmetric);
                r.record(
                    &format!("{label}: all stresses symmetric"),
                    all,
                    format!("{:?}", f.symmetric),
                    "dim_sym = dim",
                );
            }
        }
        Err(e) => r.fail_with(label, &e),
    }
    r.attach(before, || inst.file());
    r
}

/// For every missing face `τ` with `3 ≤ |τ| ≤ d-1` and edge `e ⊆ τ`,
/// `(τ \ e) ∪ (-e)` is a face; only on cs spheres at the lower bound with a
/// rigid framework.
pub fn check_missing_face_graph_lemma(label: &str, c: &CsComplex, d: usize, rigid: bool) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::MissingFaceGraphLemma.as_str());
    let g2 = match g_number(c.complex(), 2) {
        Ok(g) => g,
        Err(e) => {
            r.fail_with(label, &e);
            return r.timed(start);
        }
    };
    if g2 != expected_g2_cross(d) || !rigid {
        r.observe(
            label,
            format!("out of hypothesis (g2 = {g2}, rigid = {rigid}), not asserted"),
        );
        return r.timed(start);
    }
    let mut qualifying = 0;
    let mut bad = Vec::new();
    for tau in c.complex().missing_faces(d.saturating_sub(1)) {
        if tau.len() < 3 {
            continue;
        }
        qualifying += 1;
        for e in tau.subsets(2) {
            let image = match c.antipode(&e) {
                Ok(img) => tau.difference(&e).union(&img),
                Err(err) => {
                    r.fail_with(label, &err);
                    return r.timed(start);
                }
            };
            if !c.complex().contains(&image) {
                bad.push(format!("τ={tau} e={e}: {image} is not a face"));
            }
        }
    }
    let ok = r.record(label, bad.is_empty(), bad.join("; "), "every (τ\\e) ∪ (-e) is a face");
    if ok && qualifying == 0 {
        r.vacuous += 1;
        r.observe(label, "vacuous: no missing face of size 3..d-1");
    }
    r.timed(start)
}

/// Realized stacked polytopes have no stresses and `g_2 = 0`.
pub fn check_lbt_equality(script: &StackingScript, seed: u64) -> Result<CheckReport> {
    if script.base.kind != BaseKind::Simplex || script.steps.iter().any(|s| s.mode != StackMode::Single) {
        return Err(Error::InvalidParameter(
            "stacked-polytope check needs a simplex base and single steps".into(),
        ));
    }
    let start = Instant::now();
    let label = format!("stacked d={} steps={} seed={seed}", script.base.d, script.steps.len());
    let inst = Instance::realize(label, script.clone(), seed)?;
    Ok(lbt_on(&inst).timed(start))
}

fn lbt_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::LbtEquality.as_str());
    let before = r.failures.len();
    match (inst.facts(), g_number(&inst.polytope.complex, 2)) {
        (Ok(f), Ok(g2)) => {
            r.record(
                &inst.label,
                f.stresses.dim() == 0 && g2 == 0,
                format!("dim S = {}, g2 = {g2}", f.stresses.dim()),
                "dim S = 0, g2 = 0",
            );
        }
        (Err(e), _) | (_, Err(e)) => r.fail_with(&inst.label, &e),
    }
    r.attach(before, || inst.file());
    r
}

fn lbt_non_example(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::LbtEquality.as_str());
    match inst.facts() {
        Ok(f) => r.observe(&inst.label, format!("not stacked: dim S = {}", f.stresses.dim())),
        Err(e) => r.fail_with(&inst.label, &e),
    }
    r
}

/// `2 dim S_sym ≥ f_1 - d f_0 + 2 C(d,2)` on a cs framework, both routes to
/// `dim S_sym` agreeing, and `g_2 ≥ C(d,2) - d` when the framework is rigid.
fn symm_bound_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::SymmStressBound.as_str());
    let before = r.failures.len();
    let label = &inst.label;
    let f = match inst.facts() {
        Ok(f) => f,
        Err(e) => {
            r.fail_with(label, &e);
            return r;
        }
    };
    let (Some(sym), Some(direct)) = (f.symmetric, f.symmetric_direct) else {
        r.observe(label, "not centrally symmetric, not asserted");
        return r;
    };
    let d = f.d as i64;
    let bound = f.graph.num_edges() as i64 - d * f.graph.num_vertices() as i64 + 2 * binomial(d, 2);
    r.record(
        &format!("{label}: bound"),
        2 * sym.dim_sym as i64 >= bound,
        format!("2 dim S_sym = {}", 2 * sym.dim_sym),
        format!(">= {bound}"),
    );
    r.record(
        &format!("{label}: routes agree"),
        sym.dim_sym == direct,
        direct,
        sym.dim_sym,
    );
    if f.rigid {
        r.record(
            &format!("{label}: g2 lower bound"),
            f.g2() >= expected_g2_cross(f.d),
            f.g2(),
            format!(">= {}", expected_g2_cross(f.d)),
        );
    }
    r.attach(before, || inst.file());
    r
}

/// On realized `C*_4`-type instances: for every edge `{u, v}` with `v ≠ ±u`,
/// the chordless cycle `u, v, -u, -v` yields a stress on
/// `st(-u) ∪ st(-v) ∪ {uv}` that is non-zero on `uv`.
fn chordless_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::ChordlessCycleStress.as_str());
    let before = r.failures.len();
    let Ok(cs) = inst.polytope.cs() else {
        r.observe(&inst.label, "not centrally symmetric");
        return r;
    };
    let complex = cs.complex();
    let g = complex.graph();
    let e = &inst.polytope.embedding;
    for &(u, v) in g.edges() {
        let label = format!("{}, e={{{u},{v}}}", inst.label);
        let attempt = (|| -> Result<Option<bool>> {
            let (nu, nv) = (cs.antipode_vertex(u)?, cs.antipode_vertex(v)?);
            let chordless = g.has_edge(v, nu)
                && g.has_edge(nu, nv)
                && g.has_edge(nv, u)
                && !g.has_edge(u, nu)
                && !g.has_edge(v, nv);
            if !chordless {
                return Ok(None);
            }
            let star = |w: VertexId| complex.star(&Face::from_sorted(vec![w])).map(|s| s.graph());
            let sub = star(nu)?.union(&star(nv)?);
            let s = stress_through_edge(&sub, e, (u, v))?;
            Ok(Some(match s {
                Some(s) => !s.weight(u, v).is_zero() && s.is_equilibrium(e)?,
                None => false,
            }))
        })();
        match attempt {
            Ok(Some(ok)) => {
                r.record(&label, ok, ok, "stress with ω_e ≠ 0");
            }
            Ok(None) => r.observe(&label, "u, v, -u, -v is not a chordless 4-cycle"),
            Err(err) => r.fail_with(&label, &err),
        }
    }
    r.attach(before, || inst.file());
    r
}

/// Swartz's operation on the stellar subdivision of a `(d-2)`-face of
/// `C*_d`, `d ≥ 4`: prime input, non-prime link, `Δf_0 = 1`, `Δf_1 = d - 1`,
/// `Δg_2 = -1`, output passes sphere checks.
pub fn check_swartz_bookkeeping(d: usize) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::SwartzBookkeeping.as_str());
    let label = format!("swartz demo d={d}");
    if d < 4 {
        r.observe(&label, "operation is stated for d >= 4, not asserted");
        return r.timed(start);
    }
    let attempt = (|| -> Result<Vec<(String, bool, String, String)>> {
        let demo = swartz_demo(d)?;
        let link = demo.before.link(&Face::from_sorted(vec![demo.vertex]))?;
        let (fb, fa) = (f_vector(&demo.before), f_vector(&demo.after));
        let dg2 = g_number(&demo.after, 2)? - g_number(&demo.before, 2)?;
        let df0 = fa.f(0) - fb.f(0);
        let df1 = fa.f(1) - fb.f(1);
        Ok(vec![
            (
                "input prime".into(),
                demo.before.is_prime()?,
                String::new(),
                String::new(),
            ),
            (
                "link not prime".into(),
                !link.is_prime()? && !link.contains(&demo.missing_facet),
                String::new(),
                String::new(),
            ),
            ("Δf0".into(), df0 == 1, df0.to_string(), "1".into()),
            ("Δf1".into(), df1 == d as i64 - 1, df1.to_string(), (d - 1).to_string()),
            ("Δg2".into(), dg2 == -1, dg2.to_string(), "-1".into()),
            (
                "sphere checks".into(),
                demo.after.passes_sphere_checks(),
                String::new(),
                String::new(),
            ),
        ])
    })();
    match attempt {
        Ok(items) => {
            for (what, ok, obs, exp) in items {
                let (obs, exp) = if obs.is_empty() {
                    (ok.to_string(), "true".to_string())
                } else {
                    (obs, exp)
                };
                r.record(&format!("{label}: {what}"), ok, obs, exp);
            }
        }
        Err(e) => r.fail_with(&label, &e),
    }
    r.timed(start)
}

/// Decomposition of `h(Δ')` by local h-polynomials on identity and stellar
/// subdivisions of facets and ridges of `∂Δ^d` and `C*_d`; local h of the
/// stellar subdivision of a simplex is non-negative and symmetric.
pub fn check_ellh_identity(ds: RangeInclusive<usize>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(CheckName::EllhIdentity.as_str());
    for d in ds {
        let bases: Vec<(String, Result<SimplicialComplex>)> = vec![
            (format!("∂Δ^{d}"), simplex_boundary(d)),
            (
                format!("C*_{d}"),
                cross_polytope_boundary(d).map(|c| c.complex().clone()),
            ),
        ];
        for (name, base) in bases {
            let base = match base {
                Ok(b) => b,
                Err(e) => {
                    r.fail_with(&name, &e);
                    continue;
                }
            };
            let apex = base.fresh_vertex();
            let facet = base.facets()[0].clone();
            let ridge = facet.without(*facet.vertices().last().expect("non-empty facet"));
            let maps = [
                ("identity".to_string(), Ok(SubdivisionMap::identity(&base))),
                (
                    format!("stellar at facet {facet}"),
                    SubdivisionMap::stellar(&base, &facet, apex),
                ),
                (
                    format!("stellar at ridge {ridge}"),
                    SubdivisionMap::stellar(&base, &ridge, apex),
                ),
                (
                    format!("stellar at {facet} then {ridge}"),
                    SubdivisionMap::stellar(&base, &facet, apex).and_then(|s| s.refine_stellar(&ridge, apex + 1)),
                ),
            ];
            for (what, map) in maps {
                let label = format!("{name}, {what}");
                match map.and_then(|s| s.ellh_sides()) {
                    Ok((lhs, rhs)) => {
                        r.record(&label, lhs == rhs, &rhs, &lhs);
                    }
                    Err(e) => r.fail_with(&label, &e),
                }
            }
        }
        let simplex = Face::from_sorted((0..d as VertexId).collect());
        let label = format!("stellar Δ^{}", d - 1);
        let ell = SubdivisionMap::stellar(&SimplicialComplex::simplex(&simplex), &simplex, d as VertexId)
            .and_then(|s| s.local_h(&simplex));
        match ell {
            Ok(ell) => {
                let ok = ell.coefficients().iter().all(|&c| c >= 0) && ell.is_symmetric_about(d);
                r.record(&label, ok, &ell, "non-negative and symmetric");
            }
            Err(e) => r.fail_with(&label, &e),
        }
    }
    r.timed(start)
}

/// `st(u)` is rigid in `R^d` iff the projection of `lk(u)` along `p(u)` is
/// rigid in `R^{d-1}`.
fn cone_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::ConeLemma.as_str());
    let before = r.failures.len();
    let c = &inst.polytope.complex;
    let e = &inst.polytope.embedding;
    for &u in c.vertices() {
        let label = format!("{}, u={u}", inst.label);
        let attempt = (|| -> Result<(bool, bool)> {
            let vu = Face::from_sorted(vec![u]);
            let star = c.star(&vu)?.graph();
            let link = c.link(&vu)?.graph();
            let keep: BTreeSet<VertexId> = link.vertices().iter().copied().collect();
            let projected = project_orthogonal(e, e.get(u)?, &keep)?;
            Ok((
                is_infinitesimally_rigid(&star, e)?,
                is_infinitesimally_rigid(&link, &projected)?,
            ))
        })();
        match attempt {
            Ok((s, l)) => {
                r.record(
                    &label,
                    s == l,
                    format!("star {s}, projected link {l}"),
                    "equal verdicts",
                );
                if !s {
                    r.observe(&label, "both sides flexible");
                }
            }
            Err(err) => r.fail_with(&label, &err),
        }
    }
    r.attach(before, || inst.file());
    r
}

/// Rank-nullity on both kernels, `dim S = g_2` for rigid frameworks,
/// symmetrized stresses are stresses, and on `C*_d` with `d ≥ 4` the gluing
/// of `st(u)` and `st(-u)`.
fn rigidity_invariants_on(inst: &Instance) -> CheckReport {
    let mut r = CheckReport::new(CheckName::RigidityInvariants.as_str());
    let before = r.failures.len();
    let label = &inst.label;
    let f = match inst.facts() {
        Ok(f) => f,
        Err(e) => {
            r.fail_with(label, &e);
            return r;
        }
    };
    let (f0, f1) = (f.graph.num_vertices(), f.graph.num_edges());
    r.record(
        &format!("{label}: stress rank-nullity"),
        f.stresses.dim() + f.rank == f1,
        f.stresses.dim() + f.rank,
        f1,
    );
    r.record(
        &format!("{label}: motion rank-nullity"),
        f.motions + f.rank == f.d * f0,
        f.motions + f.rank,
        f.d * f0,
    );
    if f.rigid {
        r.record(
            &format!("{label}: dim S = g2"),
            f.stresses.dim() as i64 == f.g2(),
            f.stresses.dim(),
            f.g2(),
        );
    } else {
        r.observe(label, "framework not rigid, dim S = g2 not asserted");
    }
    if let Ok(cs) = inst.polytope.cs() {
        let e = &inst.polytope.embedding;
        let ok = f.stresses.vectors.iter().all(|s| {
            s.symmetrized(cs.involution())
                .and_then(|t| t.is_equilibrium(e))
                .unwrap_or(false)
        });
        r.record(&format!("{label}: symmetrization"), ok, ok, true);
        if inst.script.steps.is_empty() && inst.d() >= 4 {
            gluing(&mut r, inst, &cs, f);
        }
    }
    r.attach(before, || inst.file());
    r
}

fn gluing(r: &mut CheckReport, inst: &Instance, cs: &CsComplex, f: &FrameworkFacts) {
    let e = &inst.polytope.embedding;
    for (u, _) in cs.involution().pairs() {
        let label = format!("{}: gluing at ±{u}", inst.label);
        let attempt = (|| -> Result<(bool, bool, bool, bool)> {
            let neg = cs.antipode_vertex(u)?;
            let su = cs.complex().star(&Face::from_sorted(vec![u]))?.graph();
            let sn = cs.complex().star(&Face::from_sorted(vec![neg]))?.graph();
            let union = su.union(&sn);
            let same = stress_basis(&rigidity_matrix(&union, e)?).spans_same(&f.stresses);
            Ok((
                is_infinitesimally_rigid(&su, e)?,
                is_infinitesimally_rigid(&sn, e)?,
                is_infinitesimally_rigid(&union, e)?,
                same,
            ))
        })();
        match attempt {
            Ok(t) => {
                r.record(
                    &label,
                    t == (true, true, true, true),
                    format!("{t:?}"),
                    "(true, true, true, true)",
                );
            }
            Err(err) => r.fail_with(&label, &err),
        }
    }
}

/// Configuration for [`run_all`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    /// Checks to run; empty means all.
    pub checks: Vec<CheckName>,
    /// Dimensions for realized instances.
    pub d_min: usize,
    pub d_max: usize,
    /// Upper dimension for purely combinatorial checks.
    pub enum_d_max: usize,
    pub max_stackings: usize,
    pub seeds: Vec<u64>,
    /// Extra stacking scripts run through the matching checks.
    pub scripts: Vec<StackingScript>,
    /// JSON file holding an array of further scripts.
    pub scripts_file: Option<PathBuf>,
    /// Where failing instances are written.
    pub failure_dir: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            checks: Vec::new(),
            d_min: 3,
            d_max: 5,
            enum_d_max: 8,
            max_stackings: 4,
            seeds: vec![0, 1, 2],
            scripts: Vec::new(),
            scripts_file: None,
            failure_dir: None,
            jobs: 1,
        }
    }
}

impl VerifyConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: VerifyConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Config(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.d_min < 3 {
            return bad(format!("d_min must be at least 3, got {}", self.d_min));
        }
        if self.d_max < self.d_min || self.enum_d_max < self.d_min {
            return bad("d_max and enum_d_max must be at least d_min".into());
        }
        if self.enum_d_max > 12 {
            return bad(format!("enum_d_max {} is out of range (at most 12)", self.enum_d_max));
        }
        if self.seeds.is_empty() {
            return bad("seeds must not be empty".into());
        }
        if self.jobs == 0 {
            return bad("jobs must be positive".into());
        }
        Ok(())
    }

    pub fn selected(&self) -> Vec<CheckName> {
        if self.checks.is_empty() {
            CheckName::ALL.to_vec()
        } else {
            let set: BTreeSet<CheckName> = self.checks.iter().copied().collect();
            CheckName::ALL.into_iter().filter(|c| set.contains(c)).collect()
        }
    }

    fn all_scripts(&self) -> Result<Vec<StackingScript>> {
        let mut out = self.scripts.clone();
        if let Some(path) = &self.scripts_file {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            let extra: Vec<StackingScript> =
                serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            out.extend(extra);
        }
        for s in &out {
            s.run().map_err(|e| Error::Config(format!("invalid script: {e}")))?;
        }
        Ok(out)
    }
}

struct Pool {
    symmetric: Vec<Instance>,
    stacked: Vec<Instance>,
    extra: Vec<Instance>,
}

fn build_pool(cfg: &VerifyConfig, scripts: &[StackingScript], sym: bool, stacked: bool) -> Result<Pool> {
    let mut jobs: Vec<(u8, String, StackingScript, u64)> = Vec::new();
    for d in cfg.d_min..=cfg.d_max {
        for &seed in &cfg.seeds {
            for k in 0..=cfg.max_stackings {
                if sym {
                    jobs.push((
                        0,
                        format!("C*_{d} + {k} symmetric stackings, seed {seed}"),
                        symmetric_script(d, k, seed)?,
                        seed,
                    ));
                }
                if stacked {
                    jobs.push((
                        1,
                        format!("∂Δ^{d} + {} stackings, seed {seed}", k + 1),
                        stacked_script(d, k + 1, seed)?,
                        seed,
                    ));
                }
            }
        }
    }
    for (i, s) in scripts.iter().enumerate() {
        jobs.push((2, format!("config script {i}"), s.clone(), cfg.seeds[0]));
    }
    let built: Vec<(u8, Instance)> = jobs
        .into_par_iter()
        .map(|(kind, label, script, seed)| Instance::realize(label, script, seed).map(|i| (kind, i)))
        .collect::<Result<_>>()?;
    let mut pool = Pool {
        symmetric: Vec::new(),
        stacked: Vec::new(),
        extra: Vec::new(),
    };
    for (kind, inst) in built {
        match kind {
            0 => pool.symmetric.push(inst),
            1 => pool.stacked.push(inst),
            _ => pool.extra.push(inst),
        }
    }
    Ok(pool)
}

fn run_one(name: CheckName, cfg: &VerifyConfig, pool: &Pool) -> CheckReport {
    let start = Instant::now();
    let enum_range = cfg.d_min..=cfg.enum_d_max;
    let mut report = CheckReport::new(name.as_str());
    let cross_family = || pool.symmetric.iter().filter(|i| i.script.steps.is_empty());
    let seed0 = cfg.seeds[0];
    match name {
        CheckName::G2CrossPolytope => report.merge(check_g2_cross_polytope(enum_range)),
        CheckName::HCrossPolytope => report.merge(check_h_cross_polytope(enum_range)),
        CheckName::GrCrossPolytope => report.merge(check_g_r_cross_polytope(enum_range)),
        CheckName::HandshakeIdentity | CheckName::CommonNeighbors => {
            for d in enum_range {
                let Ok(c) = cross_polytope_boundary(d) else { continue };
                let label = format!("C*_{d}");
                report.merge(if name == CheckName::HandshakeIdentity {
                    check_handshake_identity(&label, &c, d)
                } else {
                    check_common_neighbors(&label, &c, d, true)
                });
            }
            for d in cfg.d_min..=cfg.d_max {
                for k in 1..=cfg.max_stackings {
                    let label = format!("C*_{d} + {k} symmetric stackings, seed {seed0}");
                    match symmetric_script(d, k, seed0)
                        .and_then(|s| s.run())
                        .and_then(|s| s.validate_cs())
                    {
                        Ok(c) => report.merge(if name == CheckName::HandshakeIdentity {
                            check_handshake_identity(&label, &c, d)
                        } else {
                            check_common_neighbors(&label, &c, d, false)
                        }),
                        Err(e) => report.fail_with(&label, &e),
                    }
                }
            }
        }
        CheckName::MainTheoremForward => {
            for inst in pool
                .symmetric
                .iter()
                .chain(pool.extra.iter().filter(|i| i.script.base.kind == BaseKind::Cross))
            {
                report.merge(main_theorem_on(inst));
            }
        }
        CheckName::MissingFaceGraphLemma => {
            for inst in &pool.symmetric {
                match (inst.polytope.cs(), inst.facts()) {
                    (Ok(cs), Ok(f)) => {
                        let before = report.failures.len();
                        report.merge(check_missing_face_graph_lemma(&inst.label, &cs, inst.d(), f.rigid));
                        report.attach(before, || inst.file());
                    }
                    (Err(e), _) | (_, Err(e)) => report.fail_with(&inst.label, &e),
                }
            }
            for d in cfg.d_min.max(4)..=cfg.d_max {
                let label = format!("C*_{d} with a symmetric pair of edge subdivisions");
                match symmetric_edge_subdivision(d) {
                    Ok(c) => report.merge(check_missing_face_graph_lemma(&label, &c, d, true)),
                    Err(e) => report.fail_with(&label, &e),
                }
            }
        }
        CheckName::LbtEquality => {
            let stacked = pool.extra.iter().filter(|i| i.script.base.kind == BaseKind::Simplex);
            for inst in pool.stacked.iter().chain(stacked) {
                report.merge(lbt_on(inst));
            }
            for inst in cross_family().filter(|i| i.seed == seed0) {
                report.merge(lbt_non_example(inst));
            }
        }
        CheckName::SymmStressBound => {
            for inst in pool.symmetric.iter().chain(&pool.extra) {
                report.merge(symm_bound_on(inst));
            }
        }
        CheckName::ChordlessCycleStress => {
            for inst in cross_family().filter(|i| i.d() == 4) {
                report.merge(chordless_on(inst));
            }
        }
        CheckName::SwartzBookkeeping => {
            for d in cfg.d_min.max(3)..=cfg.d_max.max(5) {
                report.merge(check_swartz_bookkeeping(d));
            }
        }
        CheckName::EllhIdentity => report.merge(check_ellh_identity(cfg.d_min..=cfg.enum_d_max.min(5))),
        CheckName::ConeLemma => {
            for inst in cross_family().filter(|i| i.d() <= 5) {
                report.merge(cone_on(inst));
            }
        }
        CheckName::RigidityInvariants => {
            for inst in pool.symmetric.iter().chain(&pool.stacked).chain(&pool.extra) {
                report.merge(rigidity_invariants_on(inst));
            }
        }
    }
    report.timed(start)
}

/// `C*_d` with an edge and its antipode stellarly subdivided; cs with
/// `g_2` above the lower bound for `d ≥ 4`.
pub fn symmetric_edge_subdivision(d: usize) -> Result<CsComplex> {
    let (c, alpha) = cross_polytope_boundary(d)?.into_parts();
    let e = Face::from([0, 2]);
    let v = c.fresh_vertex();
    let once = stellar_subdivide(&c, &e, v)?;
    let neg = alpha.apply(&e)?;
    let twice = stellar_subdivide(&once, &neg, v + 1)?;
    validate_cs(&twice, &alpha.extended(v, v + 1)?)
}

/// Runs the selected checks. Instance realization failures are reported as
/// errors; check failures are in the reports.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let scripts = cfg.all_scripts()?;
    let names = cfg.selected();
    let sym = names.iter().any(|n| n.needs_symmetric_family());
    let stacked = names.iter().any(|n| n.needs_stacked_family());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let reports = pool.install(|| -> Result<Vec<CheckReport>> {
        let instances = build_pool(cfg, &scripts, sym, stacked)?;
        Ok(names.par_iter().map(|&n| run_one(n, cfg, &instances)).collect())
    })?;
    if let Some(dir) = &cfg.failure_dir {
        write_failures(dir, &reports)?;
    }
    Ok(reports)
}

/// Writes each failure with a reproducing instance to `dir`.
pub fn write_failures(dir: &Path, reports: &[CheckReport]) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for r in reports {
        for (i, f) in r.failures.iter().enumerate() {
            if written.is_empty() {
                std::fs::create_dir_all(dir)?;
            }
            let path = dir.join(format!("{}-{i}.json", r.name));
            std::fs::write(&path, crate::io::to_canonical_json(f))?;
            written.push(path);
        }
    }
    Ok(written)
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::ok)
}

/// One line per check.
pub fn summary(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.ok() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {:<26} {:>4}/{:<4} passed  {:>3} observed  {:>3} vacuous  {:>7.3}s\n",
            r.name,
            r.passed,
            r.instances,
            r.observations.len(),
            r.vacuous,
            r.wall_time
        ));
        for f in r.failures.iter().take(5) {
            out.push_str(&format!(
                "     {}: observed {}, expected {}\n",
                f.instance, f.observed, f.expected
            ));
        }
    }
    out
}
