//! Abstract simplicial complexes stored by their facets.
//!
//! A [`SimplicialComplex`] keeps the inclusion-maximal faces in canonical
//! (lexicographic) order. Every other face is implied by closure under
//! subsets and is enumerated on demand; the full face lattice is computed
//! once, lazily, and shared by every later query.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex label. Labels are unique within a complex.
pub type VertexId = u32;

/// A face: a strictly increasing list of vertex labels.
///
/// The empty face is allowed and has dimension `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Builds a face from arbitrary vertex labels, rejecting repeats.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        let raw = v.clone();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(Face(raw)));
        }
        Ok(Face(v))
    }

    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let set: BTreeSet<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        Face(set.into_iter().collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn with(&self, v: VertexId) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Faces of codimension one inside this face, in canonical order.
    pub fn boundary_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self.0.iter().map(|&v| self.without(v)).collect();
        out.sort();
        out
    }

    /// All subsets of the given size, in lexicographic order.
    pub fn subsets(&self, size: usize) -> Vec<Face> {
        let n = self.0.len();
        if size > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Panics on repeated labels; intended for literals.
impl<const N: usize> From<[VertexId; N]> for Face {
    fn from(v: [VertexId; N]) -> Self {
        Face::new(v).expect("face literal with repeated vertex")
    }
}

impl From<Face> for Vec<VertexId> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl TryFrom<Vec<VertexId>> for Face {
    type Error = Error;

    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Face::new(v)
    }
}

/// A finite abstract simplicial complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertices: Vec<VertexId>,
    faces_by_dim: OnceLock<Vec<Vec<Face>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from generating faces. Dominated faces are dropped.
    ///
    /// An empty input, or an input made only of empty faces, yields the
    /// complex `{∅}`.
    pub fn from_facets<I, F>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexId>,
    {
        let faces = faces.into_iter().map(Face::new).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_faces(faces))
    }

    /// Same as [`from_facets`](Self::from_facets) for already validated faces.
    pub fn from_faces(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|k| f.is_subset(k)) {
                kept.push(f);
            }
        }
        if kept.is_empty() {
            kept.push(Face::empty());
        }
        kept.sort();
        let vertices: BTreeSet<VertexId> = kept.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        SimplicialComplex {
            facets: kept,
            vertices: vertices.into_iter().collect(),
            faces_by_dim: OnceLock::new(),
        }
    }

    /// The complex `{∅}` of dimension `-1`.
    pub fn empty() -> Self {
        Self::from_faces([Face::empty()])
    }

    /// The full simplex on a face (all of its subsets).
    pub fn simplex(face: &Face) -> Self {
        Self::from_faces([face.clone()])
    }

    /// Boundary of the simplex on `face`: every proper subset.
    pub fn simplex_boundary_on(face: &Face) -> Self {
        if face.is_empty() {
            // ∂ of the empty simplex has no faces at all; the closest value
            // representable here is `{∅}`.
            return Self::empty();
        }
        Self::from_faces(face.boundary_faces())
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn vertex_face(&self) -> Face {
        Face::from_sorted(self.vertices.clone())
    }

    /// Maximum facet dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    /// One more than the dimension (the `d` of a `(d-1)`-complex).
    pub fn rank(&self) -> usize {
        (self.dim() + 1) as usize
    }

    /// Next unused vertex label.
    pub fn fresh_vertex(&self) -> VertexId {
        self.vertices.last().map_or(0, |v| v + 1)
    }

    fn face_table(&self) -> &Vec<Vec<Face>> {
        self.faces_by_dim.get_or_init(|| {
            let top = self.rank();
            let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); top + 1];
            for facet in &self.facets {
                for size in 0..=facet.len() {
                    for s in facet.subsets(size) {
                        sets[size].insert(s);
                    }
                }
            }
            sets.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    /// All faces of dimension `i` in canonical order; empty when out of range.
    pub fn faces(&self, i: isize) -> &[Face] {
        let table = self.face_table();
        let idx = i + 1;
        if idx < 0 || idx as usize >= table.len() {
            return &[];
        }
        &table[idx as usize]
    }

    /// Every face, grouped by increasing dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.face_table().iter().flatten()
    }

    /// Number of faces of each dimension, starting with the empty face.
    pub fn face_counts(&self) -> Vec<usize> {
        self.face_table().iter().map(Vec::len).collect()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.faces(face.dim()).binary_search(face).is_ok()
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        self.facets.binary_search(face).is_ok()
    }

    fn require_face(&self, face: &Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::NotAFace(face.clone()))
        }
    }

    /// Faces `σ` disjoint from `τ` with `σ ∪ τ` a face.
    pub fn link(&self, tau: &Face) -> Result<SimplicialComplex> {
        self.require_face(tau)?;
        Ok(Self::from_faces(
            self.facets
                .iter()
                .filter(|f| tau.is_subset(f))
                .map(|f| f.difference(tau)),
        ))
    }

    /// The closed star of `τ`: all faces whose union with `τ` is a face.
    pub fn star(&self, tau: &Face) -> Result<SimplicialComplex> {
        self.require_face(tau)?;
        Ok(Self::from_faces(
            self.facets.iter().filter(|f| tau.is_subset(f)).cloned(),
        ))
    }

    /// Faces not containing `τ` as a subset; the complement of the open star.
    pub fn antistar(&self, tau: &Face) -> SimplicialComplex {
        let mut faces: Vec<Face> = Vec::new();
        for f in &self.facets {
            if tau.is_subset(f) {
                faces.extend(tau.vertices().iter().map(|&w| f.without(w)));
            } else {
                faces.push(f.clone());
            }
        }
        Self::from_faces(faces)
    }

    /// Join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let shared: Vec<VertexId> = self.vertices.iter().copied().filter(|v| other.has_vertex(*v)).collect();
        if !shared.is_empty() {
            return Err(Error::OverlappingVertices(shared));
        }
        let mut faces = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                faces.push(a.union(b));
            }
        }
        Ok(Self::from_faces(faces))
    }

    /// Induced subcomplex on a vertex subset.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimplicialComplex {
        Self::from_faces(
            self.facets
                .iter()
                .map(|f| Face::from_sorted(f.vertices().iter().copied().filter(|v| keep.contains(v)).collect())),
        )
    }

    /// Missing faces with at most `max_size` vertices, by increasing size.
    ///
    /// A candidate of size `k` is only formed from two `(k-1)`-faces sharing
    /// their first `k-2` vertices, and kept when every `(k-1)`-subset is a face.
    pub fn missing_faces(&self, max_size: usize) -> Vec<Face> {
        let mut out = Vec::new();
        let top = (self.dim() + 2).max(0) as usize;
        for k in 2..=max_size.min(top) {
            let smaller = self.faces(k as isize - 2);
            let mut by_prefix: BTreeMap<&[VertexId], Vec<VertexId>> = BTreeMap::new();
            for f in smaller {
                let (last, prefix) = f.vertices().split_last().expect("non-empty face");
                by_prefix.entry(prefix).or_default().push(*last);
            }
            for (prefix, tails) in by_prefix {
                for (i, &a) in tails.iter().enumerate() {
                    for &b in &tails[i + 1..] {
                        let mut v = prefix.to_vec();
                        v.push(a);
                        v.push(b);
                        let cand = Face::from_sorted(v);
                        if self.contains(&cand) {
                            continue;
                        }
                        if cand.boundary_faces().iter().all(|s| smaller.binary_search(s).is_ok()) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// True when the pure complex has no missing face of size `1 + dim`.
    pub fn is_prime(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let size = self.rank();
        Ok(!self.missing_faces(size).iter().any(|f| f.len() == size))
    }

    /// Whether this is `∂σ` for the simplex `σ` on its vertex set.
    pub fn is_simplex_boundary(&self) -> bool {
        let n = self.num_vertices();
        n >= 2 && self.num_facets() == n && self.facets.iter().all(|f| f.len() == n - 1)
    }

    /// Primality of a polytope boundary, which excludes the simplex.
    pub fn is_prime_polytope(&self) -> Result<bool> {
        Ok(!self.is_simplex_boundary() && self.is_prime()?)
    }

    /// The 1-skeleton as a graph.
    pub fn graph(&self) -> Graph {
        Graph::new(
            self.vertices.iter().copied(),
            self.faces(1).iter().map(|e| (e.vertices()[0], e.vertices()[1])),
        )
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        if i >= self.dim() {
            return self.clone();
        }
        if i < 0 {
            return Self::empty();
        }
        Self::from_faces(self.faces(i).iter().cloned())
    }

    /// Connected components of the graph after deleting `removed`.
    pub fn components_excluding(&self, removed: &BTreeSet<VertexId>) -> usize {
        self.graph().components_excluding(removed)
    }

    /// Reduced Euler characteristic `Σ_{i≥-1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(j, &n)| if j % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Every ridge of the pure complex lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() || self.dim() < 0 {
            return false;
        }
        let mut count: BTreeMap<Face, usize> = BTreeMap::new();
        for f in &self.facets {
            for r in f.boundary_faces() {
                *count.entry(r).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Necessary conditions for being a combinatorial sphere, applied
    /// recursively to vertex links.
    ///
    /// In dimension at most three these checks are also sufficient.
    pub fn passes_sphere_checks(&self) -> bool {
        let dim = self.dim();
        if dim < 0 {
            return true;
        }
        if dim == 0 {
            return self.facets.len() == 2;
        }
        if !self.is_pseudomanifold() || self.graph().components_excluding(&BTreeSet::new()) != 1 {
            return false;
        }
        let expected = if dim % 2 == 0 { 1 } else { -1 };
        if self.reduced_euler_characteristic() != expected {
            return false;
        }
        self.vertices.iter().all(|&v| {
            self.link(&Face::from_sorted(vec![v]))
                .map(|l| l.passes_sphere_checks())
                .unwrap_or(false)
        })
    }

    /// Renames vertices through `map`; unmapped labels are kept.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<SimplicialComplex> {
        let faces = self
            .facets
            .iter()
            .map(|f| Face::new(f.vertices().iter().map(|v| *map.get(v).unwrap_or(v))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_faces(faces))
    }

    /// Number of facets.
    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }
}
