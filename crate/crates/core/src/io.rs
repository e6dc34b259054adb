//! JSON documents for complexes, embeddings, subdivisions and stresses.
//!
//! Canonical output is compact JSON with facets in lexicographic order,
//! involution pairs listed once as `[v, w]` with `v < w`, coordinates keyed by
//! vertex in increasing order and every rational written as `num/den` in
//! lowest terms. A trailing newline ends each document.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::enumerative::SubdivisionMap;
use crate::error::{Error, Result};
use crate::geometry::{Embedding, RationalVector};
use crate::linalg::Rational;
use crate::rigidity::{StressBasis, StressVector};
use crate::symmetry::Involution;

/// `num/den`, always with an explicit denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Strict inverse of [`format_rational`]: optional leading `-`, digits, `/`,
/// positive digits, lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || {
        Error::Parse(format!(
            "malformed rational {s:?}; expected \"num/den\" in lowest terms"
        ))
    };
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let digits = num.strip_prefix('-').unwrap_or(num);
    let plain = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !plain(digits) || !plain(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() || !n.gcd(&d).is_one() || (n.is_zero() && !d.is_one()) || num == "-0" {
        return Err(bad());
    }
    Ok(Rational::new_raw(n, d))
}

/// Serialized form of a complex with optional symmetry and coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub facets: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<[VertexId; 2]>>,
    /// Ambient dimension of the coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<BTreeMap<VertexId, Vec<String>>>,
}

/// A parsed and validated [`ComplexDocument`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub name: Option<String>,
    pub complex: SimplicialComplex,
    pub involution: Option<Involution>,
    pub embedding: Option<Embedding>,
}

impl ComplexFile {
    pub fn new(complex: SimplicialComplex) -> Self {
        ComplexFile {
            name: None,
            complex,
            involution: None,
            embedding: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_involution(mut self, alpha: Involution) -> Self {
        self.involution = Some(alpha);
        self
    }

    pub fn with_embedding(mut self, e: Embedding) -> Self {
        self.embedding = Some(e);
        self
    }

    pub fn from_document(doc: ComplexDocument) -> Result<Self> {
        let complex = SimplicialComplex::from_facets(doc.facets)?;
        let involution = doc
            .involution
            .map(|pairs| Involution::from_pairs(pairs.into_iter().map(|[a, b]| (a, b))))
            .transpose()?;
        let embedding = match (doc.dimension, doc.coordinates) {
            (None, None) => None,
            (Some(_), None) => return Err(Error::Parse("\"dimension\" given without \"coordinates\"".into())),
            (dim, Some(coords)) => {
                let d = match dim {
                    Some(d) => d,
                    None => coords
                        .values()
                        .next()
                        .map(Vec::len)
                        .ok_or_else(|| Error::Parse("empty \"coordinates\" needs \"dimension\"".into()))?,
                };
                let mut e = Embedding::new(d);
                for (v, xs) in coords {
                    let p = xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                    e.insert(v, RationalVector::new(p))?;
                }
                Some(e)
            }
        };
        Ok(ComplexFile {
            name: doc.name,
            complex,
            involution,
            embedding,
        })
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            name: self.name.clone(),
            facets: self.complex.facets().iter().map(|f| f.vertices().to_vec()).collect(),
            involution: self
                .involution
                .as_ref()
                .map(|a| a.pairs().into_iter().map(|(v, w)| [v, w]).collect()),
            dimension: self.embedding.as_ref().map(Embedding::d),
            coordinates: self.embedding.as_ref().map(|e| {
                e.coords()
                    .iter()
                    .map(|(&v, p)| (v, p.entries().iter().map(format_rational).collect()))
                    .collect()
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Compact canonical JSON plus a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        to_canonical_json(&self.to_document())
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_canonical_string())?;
        Ok(())
    }
}

/// Compact JSON plus a trailing newline.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory documents serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetsOnly {
    facets: Vec<Vec<VertexId>>,
}

impl FacetsOnly {
    fn of(c: &SimplicialComplex) -> Self {
        FacetsOnly {
            facets: c.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }

    fn complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.facets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubdivisionDocument {
    base: FacetsOnly,
    refinement: FacetsOnly,
    carrier: BTreeMap<VertexId, Vec<VertexId>>,
}

pub fn subdivision_to_json(s: &SubdivisionMap) -> String {
    to_canonical_json(&SubdivisionDocument {
        base: FacetsOnly::of(&s.base),
        refinement: FacetsOnly::of(&s.refinement),
        carrier: s.carrier.iter().map(|(&v, f)| (v, f.vertices().to_vec())).collect(),
    })
}

/// Parses and validates a subdivision.
pub fn subdivision_from_json(text: &str) -> Result<SubdivisionMap> {
    let doc: SubdivisionDocument = serde_json::from_str(text)?;
    let s = SubdivisionMap {
        base: doc.base.complex()?,
        refinement: doc.refinement.complex()?,
        carrier: doc
            .carrier
            .into_iter()
            .map(|(v, f)| Ok((v, Face::new(f)?)))
            .collect::<Result<_>>()?,
    };
    s.validate()?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StressEntry {
    pub edge: [VertexId; 2],
    pub weight: String,
}

pub fn stress_entries(s: &StressVector) -> Vec<StressEntry> {
    s.weights
        .iter()
        .map(|(&(u, v), w)| StressEntry {
            edge: [u, v],
            weight: format_rational(w),
        })
        .collect()
}

pub fn stress_from_entries(entries: &[StressEntry]) -> Result<StressVector> {
    let mut weights = BTreeMap::new();
    for e in entries {
        let [a, b] = e.edge;
        if a == b {
            return Err(Error::Parse(format!("loop edge [{a},{b}]")));
        }
        let key = (a.min(b), a.max(b));
        if weights.insert(key, parse_rational(&e.weight)?).is_some() {
            return Err(Error::Parse(format!("edge [{},{}] listed twice", key.0, key.1)));
        }
    }
    Ok(StressVector { weights })
}

pub fn stress_basis_to_json(b: &StressBasis) -> String {
    let all: Vec<Vec<StressEntry>> = b.vectors.iter().map(stress_entries).collect();
    to_canonical_json(&all)
}

pub fn stress_basis_from_json(text: &str) -> Result<Vec<StressVector>> {
    let all: Vec<Vec<StressEntry>> = serde_json::from_str(text)?;
    all.iter().map(|e| stress_from_entries(e)).collect()
}
