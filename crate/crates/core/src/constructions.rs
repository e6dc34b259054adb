//! Generators and surgeries on simplicial spheres.
//!
//! Every operation returns a new complex; inputs are never mutated. Fresh
//! vertex labels are supplied by the caller, or by `fresh_vertex` (max + 1)
//! in the `*_auto` variants.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::symmetry::{validate_cs, CsComplex, Involution};

/// Boundary of the `n`-simplex on vertices `0..=n`.
pub fn simplex_boundary(n: usize) -> Result<SimplicialComplex> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "simplex boundary needs n >= 1, got {n}"
        )));
    }
    Ok(SimplicialComplex::simplex_boundary_on(&Face::from_sorted(
        (0..=n as VertexId).collect(),
    )))
}

/// Label of `+e_i` (0-based axis) in the cross-polytope; `-e_i` is this plus one.
pub fn cross_vertex(axis: usize, negative: bool) -> VertexId {
    2 * axis as VertexId + negative as VertexId
}

/// Boundary of the `d`-dimensional cross-polytope with its antipodal pairing.
///
/// Vertex `2i` stands for `+e_{i+1}` and `2i+1` for `-e_{i+1}`; facets pick
/// one vertex from each pair.
pub fn cross_polytope_boundary(d: usize) -> Result<CsComplex> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!("cross-polytope needs d >= 1, got {d}")));
    }
    let facets =
        (0..1u64 << d).map(|mask| Face::from_sorted((0..d).map(|i| cross_vertex(i, mask >> i & 1 == 1)).collect()));
    let complex = SimplicialComplex::from_faces(facets);
    let alpha = Involution::from_pairs((0..d).map(|i| (cross_vertex(i, false), cross_vertex(i, true))))?;
    validate_cs(&complex, &alpha)
}

fn require_facet(complex: &SimplicialComplex, tau: &Face) -> Result<()> {
    if complex.is_facet(tau) {
        Ok(())
    } else {
        Err(Error::NotAFacet(tau.clone()))
    }
}

fn require_fresh(complex: &SimplicialComplex, v: VertexId) -> Result<()> {
    if complex.has_vertex(v) {
        Err(Error::VertexInUse(v))
    } else {
        Ok(())
    }
}

/// Glues `Δ₁` and `Δ₂` along the facets `τ₁`, `τ₂` and removes the glued facet.
///
/// `identify` maps each vertex of `τ₂` to a vertex of `τ₁`. All other
/// vertices of `Δ₂` must be disjoint from `Δ₁`.
pub fn connected_sum(
    first: &SimplicialComplex,
    tau1: &Face,
    second: &SimplicialComplex,
    tau2: &Face,
    identify: &BTreeMap<VertexId, VertexId>,
) -> Result<SimplicialComplex> {
    require_facet(first, tau1)?;
    require_facet(second, tau2)?;
    let keys: BTreeSet<VertexId> = identify.keys().copied().collect();
    let values: BTreeSet<VertexId> = identify.values().copied().collect();
    if keys.len() != tau2.len()
        || keys.iter().ne(tau2.vertices().iter())
        || values.len() != tau1.len()
        || values.iter().ne(tau1.vertices().iter())
    {
        return Err(Error::BadIdentification(format!(
            "identification must be a bijection from {tau2} onto {tau1}"
        )));
    }
    let clashes: Vec<VertexId> = second
        .vertices()
        .iter()
        .copied()
        .filter(|v| !tau2.contains(*v) && first.has_vertex(*v))
        .collect();
    if !clashes.is_empty() {
        return Err(Error::BadIdentification(format!(
            "vertices {clashes:?} of the second complex already occur in the first"
        )));
    }
    let relabeled = second.relabel(identify)?;
    let mut faces: Vec<Face> = first.facets().iter().filter(|f| *f != tau1).cloned().collect();
    faces.extend(relabeled.facets().iter().filter(|f| *f != tau1).cloned());
    Ok(SimplicialComplex::from_faces(faces))
}

/// Attaches a simplex over the facet `τ` with apex `apex`.
pub fn stack(complex: &SimplicialComplex, tau: &Face, apex: VertexId) -> Result<SimplicialComplex> {
    require_facet(complex, tau)?;
    require_fresh(complex, apex)?;
    let mut faces: Vec<Face> = complex.facets().iter().filter(|f| *f != tau).cloned().collect();
    faces.extend(tau.vertices().iter().map(|&w| tau.without(w).with(apex)));
    let out = SimplicialComplex::from_faces(faces);
    debug_assert_eq!(
        out.faces(1).len(),
        complex.faces(1).len() + tau.len(),
        "stacking must add exactly d edges, leaving g2 unchanged"
    );
    Ok(out)
}

pub fn stack_auto(complex: &SimplicialComplex, tau: &Face) -> Result<SimplicialComplex> {
    stack(complex, tau, complex.fresh_vertex())
}

/// Stacks over `τ` and `-τ` at once, pairing the two new apexes.
pub fn symmetric_stack_with(cs: &CsComplex, tau: &Face, apex: VertexId, neg_apex: VertexId) -> Result<CsComplex> {
    let complex = cs.complex();
    require_facet(complex, tau)?;
    let neg_tau = cs.antipode(tau)?;
    if apex == neg_apex {
        return Err(Error::FixedPoint(apex));
    }
    let once = stack(complex, tau, apex)?;
    let twice = stack(&once, &neg_tau, neg_apex)?;
    let alpha = cs.involution().extended(apex, neg_apex)?;
    validate_cs(&twice, &alpha)
}

/// Symmetric stacking with apexes labeled `max + 1` and `max + 2`.
pub fn symmetric_stack(cs: &CsComplex, tau: &Face) -> Result<CsComplex> {
    let v = cs.complex().fresh_vertex();
    symmetric_stack_with(cs, tau, v, v + 1)
}

/// Replaces `st(τ)` with `apex * ∂τ * lk(τ)`.
pub fn stellar_subdivide(complex: &SimplicialComplex, tau: &Face, apex: VertexId) -> Result<SimplicialComplex> {
    if !complex.contains(tau) {
        return Err(Error::NotAFace(tau.clone()));
    }
    if tau.len() < 2 {
        return Err(Error::InvalidFace(format!(
            "stellar subdivision needs a face of dimension >= 1, got {tau}"
        )));
    }
    require_fresh(complex, apex)?;
    let mut faces = Vec::new();
    for f in complex.facets() {
        if tau.is_subset(f) {
            faces.extend(tau.vertices().iter().map(|&w| f.without(w).with(apex)));
        } else {
            faces.push(f.clone());
        }
    }
    Ok(SimplicialComplex::from_faces(faces))
}

/// Inverse of [`stellar_subdivide`]: if `lk(v) = ∂σ * L` and `σ ∉ Δ`, replaces
/// `st(v)` with `σ * L`.
pub fn stellar_weld(complex: &SimplicialComplex, v: VertexId, sigma: &Face) -> Result<SimplicialComplex> {
    if !complex.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    if complex.contains(sigma) {
        return Err(Error::AlreadyAFace(sigma.clone()));
    }
    let not_join = || Error::NotJoinForm {
        vertex: v,
        face: sigma.clone(),
    };
    if sigma.len() < 2 || sigma.contains(v) {
        return Err(not_join());
    }
    let link = complex.link(&Face::from_sorted(vec![v]))?;
    let mut rest: BTreeSet<Face> = BTreeSet::new();
    for g in link.facets() {
        if g.intersection(sigma).len() != sigma.len() - 1 {
            return Err(not_join());
        }
        rest.insert(g.difference(sigma));
    }
    let expected: BTreeSet<Face> = rest
        .iter()
        .flat_map(|h| sigma.vertices().iter().map(move |&w| sigma.without(w).union(h)))
        .collect();
    let actual: BTreeSet<Face> = link.facets().iter().cloned().collect();
    if expected != actual {
        return Err(not_join());
    }
    let mut faces: Vec<Face> = complex.facets().iter().filter(|f| !f.contains(v)).cloned().collect();
    faces.extend(rest.iter().map(|h| sigma.union(h)));
    Ok(SimplicialComplex::from_faces(faces))
}

/// Splits `lk(v₀) = S₁ #_{∂τ} S₂` along the missing facet `τ`.
///
/// Facets of the link are adjacent when they share a ridge that is not
/// contained in `τ`; the two adjacency classes are returned, without `τ`,
/// the class holding the smallest facet first.
pub fn swartz_split(link: &SimplicialComplex, tau: &Face) -> Result<(Vec<Face>, Vec<Face>)> {
    let facets = link.facets();
    let n = facets.len();
    let mut ridge_owner: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary_faces() {
            if !r.is_subset(tau) {
                ridge_owner.entry(r).or_default().push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for owners in ridge_owner.values() {
        for w in owners.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(f.clone());
    }
    if classes.len() != 2 {
        return Err(Error::BadSplit(classes.len()));
    }
    let mut it = classes.into_values();
    Ok((it.next().unwrap(), it.next().unwrap()))
}

fn check_swartz_input(
    complex: &SimplicialComplex,
    v0: VertexId,
    tau: &Face,
    fresh: &[VertexId],
) -> Result<SimplicialComplex> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    if !complex.has_vertex(v0) {
        return Err(Error::UnknownVertex(v0));
    }
    if complex.contains(tau) {
        return Err(Error::AlreadyAFace(tau.clone()));
    }
    for (i, &x) in fresh.iter().enumerate() {
        require_fresh(complex, x)?;
        if fresh[..i].contains(&x) {
            return Err(Error::VertexInUse(x));
        }
    }
    let link = complex.link(&Face::from_sorted(vec![v0]))?;
    let missing_facet =
        tau.len() == link.rank() && !link.contains(tau) && tau.boundary_faces().iter().all(|r| link.contains(r));
    if !missing_facet {
        return Err(Error::InvalidFace(format!(
            "{tau} is not a missing facet of the link of {v0}"
        )));
    }
    Ok(link)
}

fn swartz_with_split(
    complex: &SimplicialComplex,
    v0: VertexId,
    tau: &Face,
    parts: (&[Face], &[Face]),
    x: VertexId,
    y: VertexId,
) -> SimplicialComplex {
    let mut faces: Vec<Face> = complex.facets().iter().filter(|f| !f.contains(v0)).cloned().collect();
    for (apex, part) in [(x, parts.0), (y, parts.1)] {
        faces.extend(part.iter().chain(std::iter::once(tau)).map(|f| f.with(apex)));
    }
    SimplicialComplex::from_faces(faces)
}

/// Swartz's vertex split: removes `v₀`, adds `τ` and the cones `x * S₁`, `y * S₂`.
pub fn swartz_operation(
    complex: &SimplicialComplex,
    v0: VertexId,
    tau: &Face,
    x: VertexId,
    y: VertexId,
) -> Result<SimplicialComplex> {
    let link = check_swartz_input(complex, v0, tau, &[x, y])?;
    let (s1, s2) = swartz_split(&link, tau)?;
    Ok(swartz_with_split(complex, v0, tau, (&s1, &s2), x, y))
}

/// Applies Swartz's operation at `v₀` and then at `-v₀` with the antipodal
/// split, pairing `x ↔ neg_x` and `y ↔ neg_y`.
pub fn symmetric_swartz(
    cs: &CsComplex,
    v0: VertexId,
    tau: &Face,
    (x, y): (VertexId, VertexId),
    (neg_x, neg_y): (VertexId, VertexId),
) -> Result<CsComplex> {
    let complex = cs.complex();
    let link = check_swartz_input(complex, v0, tau, &[x, y, neg_x, neg_y])?;
    let (s1, s2) = swartz_split(&link, tau)?;
    let first = swartz_with_split(complex, v0, tau, (&s1, &s2), x, y);

    let alpha = cs.involution();
    let neg_v0 = cs.antipode_vertex(v0)?;
    let neg_tau = alpha.apply(tau)?;
    let mirror = |part: &[Face]| part.iter().map(|f| alpha.apply(f)).collect::<Result<Vec<_>>>();
    let (n1, n2) = (mirror(&s1)?, mirror(&s2)?);
    check_swartz_input(&first, neg_v0, &neg_tau, &[neg_x, neg_y])?;
    let second = swartz_with_split(&first, neg_v0, &neg_tau, (&n1, &n2), neg_x, neg_y);

    let alpha = alpha.without(&[v0]).extended(x, neg_x)?.extended(y, neg_y)?;
    validate_cs(&second, &alpha)
}

/// A prime sphere with a vertex whose link is not prime, and the result of
/// splitting that vertex.
#[derive(Clone, Debug)]
pub struct SwartzDemo {
    pub before: SimplicialComplex,
    pub vertex: VertexId,
    pub missing_facet: Face,
    pub after: SimplicialComplex,
}

/// Stellar subdivision of a `(d-2)`-face of the cross-polytope boundary,
/// followed by Swartz's operation at the new vertex.
pub fn swartz_demo(d: usize) -> Result<SwartzDemo> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("swartz demo needs d >= 3, got {d}")));
    }
    let cross = cross_polytope_boundary(d)?;
    let tau = Face::from_sorted((0..d - 1).map(|i| cross_vertex(i, false)).collect());
    let v = cross.complex().fresh_vertex();
    let before = stellar_subdivide(cross.complex(), &tau, v)?;
    let after = swartz_operation(&before, v, &tau, v + 1, v + 2)?;
    Ok(SwartzDemo {
        before,
        vertex: v,
        missing_facet: tau,
        after,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Cross,
    Simplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptBase {
    pub kind: BaseKind,
    pub d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StackMode {
    Symmetric,
    Single,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackStep {
    pub facet: Face,
    pub mode: StackMode,
}

/// A base polytope followed by a sequence of (symmetric) stackings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackingScript {
    pub base: ScriptBase,
    #[serde(default)]
    pub steps: Vec<StackStep>,
}

/// Outcome of running a script combinatorially.
///
/// `involution` is the pairing carried along from a cross-polytope base; after
/// a single stacking it no longer covers every vertex.
#[derive(Clone, Debug)]
pub struct ScriptResult {
    pub complex: SimplicialComplex,
    pub involution: Option<Involution>,
}

impl ScriptResult {
    pub fn validate_cs(&self) -> Result<CsComplex> {
        let alpha = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::NotCentrallySymmetric("no involution".into()))?;
        validate_cs(&self.complex, alpha)
    }
}

impl StackingScript {
    pub fn cross(d: usize) -> Self {
        StackingScript {
            base: ScriptBase {
                kind: BaseKind::Cross,
                d,
            },
            steps: Vec::new(),
        }
    }

    pub fn simplex(d: usize) -> Self {
        StackingScript {
            base: ScriptBase {
                kind: BaseKind::Simplex,
                d,
            },
            steps: Vec::new(),
        }
    }

    pub fn then(mut self, facet: Face, mode: StackMode) -> Self {
        self.steps.push(StackStep { facet, mode });
        self
    }

    pub fn is_symmetric(&self) -> bool {
        self.base.kind == BaseKind::Cross && self.steps.iter().all(|s| s.mode == StackMode::Symmetric)
    }

    pub fn base_complex(&self) -> Result<ScriptResult> {
        Ok(match self.base.kind {
            BaseKind::Cross => {
                let (complex, alpha) = cross_polytope_boundary(self.base.d)?.into_parts();
                ScriptResult {
                    complex,
                    involution: Some(alpha),
                }
            }
            BaseKind::Simplex => ScriptResult {
                complex: simplex_boundary(self.base.d)?,
                involution: None,
            },
        })
    }

    /// Runs every step on the abstract complex.
    pub fn run(&self) -> Result<ScriptResult> {
        let mut state = self.base_complex()?;
        for step in &self.steps {
            let fresh = state.complex.fresh_vertex();
            state = match step.mode {
                StackMode::Single => ScriptResult {
                    complex: stack(&state.complex, &step.facet, fresh)?,
                    involution: state.involution,
                },
                StackMode::Symmetric => {
                    let cs = state
                        .validate_cs()
                        .map_err(|e| Error::InvalidParameter(format!("symmetric step on a non-cs complex: {e}")))?;
                    let (complex, alpha) = symmetric_stack_with(&cs, &step.facet, fresh, fresh + 1)?.into_parts();
                    ScriptResult {
                        complex,
                        involution: Some(alpha),
                    }
                }
            };
        }
        Ok(state)
    }
}
