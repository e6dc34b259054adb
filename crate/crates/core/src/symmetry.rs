//! Centrally symmetric complexes: a complex paired with a free involution
//! on its vertices that maps faces to distinct faces.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// A fixed-point-free vertex pairing, stored explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Involution {
    pairing: BTreeMap<VertexId, VertexId>,
}

impl Involution {
    /// Builds the pairing from unordered pairs, each listed once.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut pairing = BTreeMap::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::FixedPoint(a));
            }
            for (x, y) in [(a, b), (b, a)] {
                if let Some(prev) = pairing.insert(x, y) {
                    if prev != y {
                        return Err(Error::NotInvolutive(x));
                    }
                }
            }
        }
        Ok(Involution { pairing })
    }

    /// Builds from a full map, checking `α(α(v)) = v` and `α(v) ≠ v`.
    pub fn from_map(pairing: BTreeMap<VertexId, VertexId>) -> Result<Self> {
        for (&v, &w) in &pairing {
            if v == w {
                return Err(Error::FixedPoint(v));
            }
            if pairing.get(&w) != Some(&v) {
                return Err(Error::NotInvolutive(v));
            }
        }
        Ok(Involution { pairing })
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.pairing.get(&v).copied()
    }

    pub fn map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.pairing
    }

    /// Each pair once, as `(v, w)` with `v < w`.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.pairing
            .iter()
            .filter(|(v, w)| v < w)
            .map(|(&v, &w)| (v, w))
            .collect()
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.pairing.keys().copied()
    }

    pub fn apply(&self, face: &Face) -> Result<Face> {
        Face::new(
            face.vertices()
                .iter()
                .map(|&v| self.get(v).ok_or(Error::UnknownVertex(v)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Adds the pair `a ↔ b`; both must be new.
    pub fn extended(&self, a: VertexId, b: VertexId) -> Result<Self> {
        if a == b {
            return Err(Error::FixedPoint(a));
        }
        for v in [a, b] {
            if self.pairing.contains_key(&v) {
                return Err(Error::VertexInUse(v));
            }
        }
        let mut pairing = self.pairing.clone();
        pairing.insert(a, b);
        pairing.insert(b, a);
        Ok(Involution { pairing })
    }

    /// Drops the pairs of the given vertices.
    pub fn without(&self, vertices: &[VertexId]) -> Involution {
        let gone: BTreeSet<VertexId> = vertices
            .iter()
            .flat_map(|&v| [Some(v), self.get(v)])
            .flatten()
            .collect();
        Involution {
            pairing: self
                .pairing
                .iter()
                .filter(|(v, _)| !gone.contains(v))
                .map(|(&v, &w)| (v, w))
                .collect(),
        }
    }
}

/// A complex with a validated free involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsComplex {
    complex: SimplicialComplex,
    alpha: Involution,
}

impl CsComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn involution(&self) -> &Involution {
        &self.alpha
    }

    pub fn into_parts(self) -> (SimplicialComplex, Involution) {
        (self.complex, self.alpha)
    }

    pub fn antipode_vertex(&self, v: VertexId) -> Result<VertexId> {
        self.alpha.get(v).ok_or(Error::UnknownVertex(v))
    }

    /// `-τ`, canonicalized.
    pub fn antipode(&self, tau: &Face) -> Result<Face> {
        self.alpha.apply(tau)
    }

    /// Vertices of `lk(u) ∩ lk(-u)`.
    pub fn common_link_vertices(&self, u: VertexId) -> Result<BTreeSet<VertexId>> {
        let neg = self.antipode_vertex(u)?;
        let lu = self.complex.link(&Face::from_sorted(vec![u]))?;
        let ln = self.complex.link(&Face::from_sorted(vec![neg]))?;
        Ok(lu.vertices().iter().copied().filter(|v| ln.has_vertex(*v)).collect())
    }

    /// Number of pairs `{v, -v}` contained in `w`.
    pub fn antipodal_pairs_in(&self, w: &BTreeSet<VertexId>) -> usize {
        w.iter()
            .filter(|&&v| self.alpha.get(v).is_some_and(|n| v < n && w.contains(&n)))
            .count()
    }
}

/// Wraps `complex` with `alpha` after checking every non-empty face.
pub fn validate_cs(complex: &SimplicialComplex, alpha: &Involution) -> Result<CsComplex> {
    for &v in complex.vertices() {
        match alpha.get(v) {
            None => return Err(Error::UnknownVertex(v)),
            Some(w) if w == v => return Err(Error::FixedPoint(v)),
            Some(w) if alpha.get(w) != Some(v) => return Err(Error::NotInvolutive(v)),
            Some(w) if !complex.has_vertex(w) => return Err(Error::AntipodeNotAFace(Face::from_sorted(vec![v]))),
            Some(_) => {}
        }
    }
    if let Some(v) = alpha.domain().find(|v| !complex.has_vertex(*v)) {
        return Err(Error::NotCentrallySymmetric(format!(
            "involution is defined on vertex {v} outside the complex"
        )));
    }
    for face in complex.all_faces().filter(|f| !f.is_empty()) {
        let image = alpha.apply(face)?;
        if image == *face {
            return Err(Error::SelfAntipodal(face.clone()));
        }
        if !complex.contains(&image) {
            return Err(Error::AntipodeNotAFace(face.clone()));
        }
    }
    Ok(CsComplex {
        complex: complex.clone(),
        alpha: alpha.clone(),
    })
}
