//! Face numbers: f-vectors, h-polynomials, g-numbers and local h-polynomials.
//!
//! Polynomials use the ascending convention `h(Δ, x) = Σ h_i x^i`, computed as
//! `Σ_j f_{j-1} x^j (1 - x)^{d-j}`. For spheres this agrees with the
//! descending form since the h-vector is symmetric; for the balls that show up
//! as restrictions of subdivisions the ascending form is the one in which
//! local h-polynomials are symmetric.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::constructions;
use crate::error::{Error, Result};
use crate::polynomial::IntPolynomial;

/// `counts[j] = f_{j-1}`, for `j = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    counts: Vec<i64>,
}

impl FVector {
    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// `d`, one more than the dimension of the complex.
    pub fn d(&self) -> usize {
        self.counts.len() - 1
    }

    /// `f_i`, the number of `i`-dimensional faces; `f_{-1} = 1`.
    pub fn f(&self, i: isize) -> i64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|j| self.counts.get(j).copied())
            .unwrap_or(0)
    }
}

pub fn f_vector(complex: &SimplicialComplex) -> FVector {
    FVector {
        counts: complex.face_counts().into_iter().map(|c| c as i64).collect(),
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// h-polynomial with an explicit `d`; faces above dimension `d-1` are ignored.
pub fn h_polynomial_with_d(complex: &SimplicialComplex, d: usize) -> IntPolynomial {
    let counts = complex.face_counts();
    let mut total = IntPolynomial::zero();
    for j in 0..=d {
        let f = counts.get(j).copied().unwrap_or(0) as i64;
        if f == 0 {
            continue;
        }
        let term = &IntPolynomial::monomial(f, j) * &IntPolynomial::binomial_power(1, -1, d - j);
        total = &total + &term;
    }
    total
}

/// h-polynomial of a pure complex; `h({∅}) = 1`.
pub fn h_polynomial(complex: &SimplicialComplex) -> Result<IntPolynomial> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(h_polynomial_with_d(complex, complex.rank()))
}

/// `g_r = h_r - h_{r-1}` for `0 ≤ r ≤ d`.
pub fn g_number(complex: &SimplicialComplex, r: usize) -> Result<i64> {
    let h = h_polynomial(complex)?;
    let d = complex.rank();
    if r > d {
        return Err(Error::OutOfRange {
            index: r as i64,
            max: d as i64,
        });
    }
    Ok(h.coeff(r) - if r == 0 { 0 } else { h.coeff(r - 1) })
}

/// `g_2 = f_1 - d f_0 + C(d+1, 2)`.
pub fn g2_from_counts(f0: i64, f1: i64, d: i64) -> i64 {
    f1 - d * f0 + binomial(d + 1, 2)
}

/// A subdivision `Δ'` of `Δ` together with the carrier of each vertex of `Δ'`.
///
/// Vertices of `Δ` that survive in `Δ'` carry themselves; a new vertex
/// carries the face of `Δ` in whose restriction it is interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub base: SimplicialComplex,
    pub refinement: SimplicialComplex,
    pub carrier: BTreeMap<VertexId, Face>,
}

impl SubdivisionMap {
    pub fn identity(base: &SimplicialComplex) -> Self {
        SubdivisionMap {
            base: base.clone(),
            refinement: base.clone(),
            carrier: base
                .vertices()
                .iter()
                .map(|&v| (v, Face::from_sorted(vec![v])))
                .collect(),
        }
    }

    /// Stellar subdivision of the base at `tau`, a face of dimension ≥ 1.
    pub fn stellar(base: &SimplicialComplex, tau: &Face, apex: VertexId) -> Result<Self> {
        Self::identity(base).refine_stellar(tau, apex)
    }

    /// Further stellar subdivision of the refinement at one of its faces.
    ///
    /// The new vertex is carried by the union of the carriers of the face's
    /// vertices, which must itself be a face of the base.
    pub fn refine_stellar(&self, face: &Face, apex: VertexId) -> Result<Self> {
        let refinement = constructions::stellar_subdivide(&self.refinement, face, apex)?;
        let carried = self.carrier_of_face(face)?;
        if !self.base.contains(&carried) {
            return Err(Error::InvalidSubdivision(format!(
                "carriers of {face} span {carried}, which is not a face of the base"
            )));
        }
        let mut carrier = self.carrier.clone();
        carrier.insert(apex, carried);
        Ok(SubdivisionMap {
            base: self.base.clone(),
            refinement,
            carrier,
        })
    }

    fn carrier_of_face(&self, face: &Face) -> Result<Face> {
        face.vertices().iter().try_fold(Face::empty(), |acc, v| {
            self.carrier
                .get(v)
                .map(|c| acc.union(c))
                .ok_or(Error::UnknownVertex(*v))
        })
    }

    /// Checks the carrier map against both complexes.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSubdivision(msg));
        for &v in self.refinement.vertices() {
            let Some(c) = self.carrier.get(&v) else {
                return bad(format!("vertex {v} has no carrier"));
            };
            if c.is_empty() || !self.base.contains(c) {
                return bad(format!("carrier {c} of vertex {v} is not a face of the base"));
            }
            if self.base.has_vertex(v) && c.vertices() != [v] {
                return bad(format!("original vertex {v} must carry itself, found {c}"));
            }
            if !self.base.has_vertex(v) && c.len() < 2 {
                return bad(format!("new vertex {v} has a vertex carrier {c}"));
            }
        }
        if let Some(v) = self.carrier.keys().find(|v| !self.refinement.has_vertex(**v)) {
            return bad(format!("carrier given for vertex {v} outside the refinement"));
        }
        for &v in self.base.vertices() {
            if !self.refinement.has_vertex(v) {
                return bad(format!("base vertex {v} is missing from the refinement"));
            }
        }
        for facet in self.refinement.facets() {
            let c = self.carrier_of_face(facet)?;
            if !self.base.contains(&c) {
                return bad(format!("facet {facet} is carried by the non-face {c}"));
            }
        }
        for face in self.base.all_faces() {
            let r = self.restrict_unchecked(face);
            if !r.is_pure() || r.dim() != face.dim() {
                return bad(format!(
                    "restriction to {face} is not a ball of dimension {}",
                    face.dim()
                ));
            }
        }
        Ok(())
    }

    fn restrict_unchecked(&self, w: &Face) -> SimplicialComplex {
        let keep: BTreeSet<VertexId> = self
            .carrier
            .iter()
            .filter(|(_, c)| c.is_subset(w))
            .map(|(v, _)| *v)
            .collect();
        self.refinement.induced(&keep)
    }

    /// The induced subdivision of the simplex on `w`: the subcomplex of the
    /// refinement on vertices carried inside `w`.
    pub fn restrict(&self, w: &Face) -> Result<SimplicialComplex> {
        if !self.base.contains(w) {
            return Err(Error::NotAFace(w.clone()));
        }
        Ok(self.restrict_unchecked(w))
    }

    /// Local h-polynomial `ℓ_V = Σ_{W ⊆ V} (-1)^{|V \ W|} h(Δ'_W, x)`.
    pub fn local_h(&self, v: &Face) -> Result<IntPolynomial> {
        if !self.base.contains(v) {
            return Err(Error::NotAFace(v.clone()));
        }
        let mut total = IntPolynomial::zero();
        for size in 0..=v.len() {
            let sign = if (v.len() - size) % 2 == 0 { 1 } else { -1 };
            for w in v.subsets(size) {
                let h = h_polynomial_with_d(&self.restrict_unchecked(&w), size);
                total = &total + &h.scale(sign);
            }
        }
        Ok(total)
    }

    /// Both sides of `h(Δ') = Σ_{τ ∈ Δ} ℓ_τ(Δ'_τ) h(lk τ)`.
    pub fn ellh_sides(&self) -> Result<(IntPolynomial, IntPolynomial)> {
        self.validate()?;
        if !self.base.is_pure() {
            return Err(Error::NotPure);
        }
        let d = self.base.rank();
        let lhs = h_polynomial_with_d(&self.refinement, d);
        let mut rhs = IntPolynomial::zero();
        for tau in self.base.all_faces() {
            let ell = self.local_h(tau)?;
            if ell.is_zero() {
                continue;
            }
            let link = self.base.link(tau)?;
            let h_link = h_polynomial_with_d(&link, d - tau.len());
            rhs = &rhs + &(&ell * &h_link);
        }
        Ok((lhs, rhs))
    }

    /// Whether the decomposition identity holds exactly; invalid maps fail it.
    pub fn check_ellh_identity(&self) -> bool {
        matches!(self.ellh_sides(), Ok((l, r)) if l == r)
    }
}

pub fn restrict(s: &SubdivisionMap, w: &Face) -> Result<SimplicialComplex> {
    s.restrict(w)
}

pub fn local_h(s: &SubdivisionMap, v: &Face) -> Result<IntPolynomial> {
    s.local_h(v)
}

pub fn check_ellh_identity(s: &SubdivisionMap) -> bool {
    s.check_ellh_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cross_polytope_boundary, simplex_boundary};

    /// Descending-form oracle: `Σ_j f_{j-1} (x-1)^{d-j}`, returned with
    /// coefficient `i` equal to the coefficient of `x^{d-i}`.
    fn h_descending(f: &[i64]) -> Vec<i64> {
        let d = f.len() - 1;
        let mut out = vec![0i64; d + 1];
        for (j, &fj) in f.iter().enumerate() {
            let n = d - j;
            // (x-1)^n = Σ_k C(n,k) x^k (-1)^{n-k}
            for k in 0..=n {
                let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                out[d - k] += fj * sign * binomial(n as i64, k as i64);
            }
        }
        out
    }

    fn g_alternating(f: &[i64], r: usize) -> i64 {
        let d = f.len() as i64 - 1;
        (0..=r as i64)
            .map(|j| {
                let sign = if (r as i64 - j) % 2 == 0 { 1 } else { -1 };
                sign * f[j as usize] * binomial(d - j + 1, r as i64 - j)
            })
            .sum()
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(&simplex_boundary(3).unwrap()).counts(), &[1, 4, 6, 4]);
        let c3 = cross_polytope_boundary(3).unwrap();
        assert_eq!(f_vector(c3.complex()).counts(), &[1, 6, 12, 8]);
        let c4 = cross_polytope_boundary(4).unwrap();
        assert_eq!(f_vector(c4.complex()).counts(), &[1, 8, 24, 32, 16]);
        assert_eq!(f_vector(c4.complex()).f(-1), 1);
        assert_eq!(f_vector(c4.complex()).f(7), 0);
    }

    #[test]
    fn h_of_cross_polytopes_and_simplices() {
        for d in 3..=6 {
            let c = cross_polytope_boundary(d).unwrap();
            assert_eq!(
                h_polynomial(c.complex()).unwrap(),
                IntPolynomial::binomial_power(1, 1, d)
            );
            let s = simplex_boundary(d).unwrap();
            assert_eq!(h_polynomial(&s).unwrap(), IntPolynomial::new(vec![1; d + 1]));
        }
        assert_eq!(h_polynomial(&SimplicialComplex::empty()).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn h_agrees_with_descending_oracle() {
        let a = simplex_boundary(4).unwrap();
        let sum = constructions::stack(&a, &a.facets()[0].clone(), 9).unwrap();
        let f = f_vector(&sum);
        assert_eq!(f.counts(), &[1, 6, 14, 16, 8]);
        let oracle = h_descending(f.counts());
        assert_eq!(oracle, vec![1, 2, 2, 2, 1]);
        assert_eq!(h_polynomial(&sum).unwrap().padded(5), oracle);
    }

    #[test]
    fn non_pure_rejected() {
        let c = SimplicialComplex::from_facets([vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(h_polynomial(&c), Err(Error::NotPure));
    }

    #[test]
    fn g_numbers() {
        let c4 = cross_polytope_boundary(4).unwrap();
        assert_eq!(g_number(c4.complex(), 2).unwrap(), 2);
        assert_eq!(g_number(c4.complex(), 0).unwrap(), 1);
        assert!(matches!(g_number(c4.complex(), 5), Err(Error::OutOfRange { .. })));
        for d in 2..=7usize {
            let c = cross_polytope_boundary(d).unwrap();
            let f = f_vector(c.complex());
            for r in 0..=d {
                let g = g_number(c.complex(), r).unwrap();
                assert_eq!(g, g_alternating(f.counts(), r), "d={d} r={r}");
                if r >= 1 {
                    assert_eq!(g, binomial(d as i64, r as i64) - binomial(d as i64, r as i64 - 1));
                }
            }
        }
    }

    #[test]
    fn g2_counts() {
        assert_eq!(g2_from_counts(8, 24, 4), 2);
        for d in 1..8 {
            assert_eq!(g2_from_counts(d + 1, binomial(d + 1, 2), d), 0);
            assert_eq!(g2_from_counts(2 * d, 2 * d * (d - 1), d), binomial(d, 2) - d);
        }
    }

    fn triangle_barycentric() -> SubdivisionMap {
        let tri = SimplicialComplex::simplex(&Face::from([0, 1, 2]));
        SubdivisionMap::stellar(&tri, &Face::from([0, 1, 2]), 3).unwrap()
    }

    #[test]
    fn restrictions() {
        let s = triangle_barycentric();
        assert_eq!(s.restrict(&Face::from([1])).unwrap().vertices(), &[1]);
        let whole = s.restrict(&Face::from([0, 1, 2])).unwrap();
        let cone = SimplicialComplex::from_facets([vec![3]])
            .unwrap()
            .join(&SimplicialComplex::simplex_boundary_on(&Face::from([0, 1, 2])))
            .unwrap();
        assert_eq!(whole, cone);
        let id = SubdivisionMap::identity(&simplex_boundary(3).unwrap());
        assert_eq!(
            id.restrict(&Face::from([0, 2])).unwrap(),
            SimplicialComplex::simplex(&Face::from([0, 2]))
        );
        assert!(matches!(
            id.restrict(&Face::from([0, 1, 2, 3])),
            Err(Error::NotAFace(_))
        ));
    }

    #[test]
    fn local_h_values() {
        let s = triangle_barycentric();
        // inclusion–exclusion by hand: (1 + x + x^2) - 3 + 3 - 1
        let ell = s.local_h(&Face::from([0, 1, 2])).unwrap();
        assert_eq!(ell, IntPolynomial::new(vec![0, 1, 1]));
        assert!(ell.is_symmetric_about(3));
        assert_eq!(s.local_h(&Face::empty()).unwrap(), IntPolynomial::one());
        assert!(s.local_h(&Face::from([0, 1])).unwrap().is_zero());

        let id = SubdivisionMap::identity(&SimplicialComplex::simplex(&Face::from([0, 1, 2, 3])));
        for size in 1..=4 {
            for w in Face::from([0, 1, 2, 3]).subsets(size) {
                assert!(id.local_h(&w).unwrap().is_zero());
            }
        }
        assert!(matches!(id.local_h(&Face::from([7])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn ellh_identity() {
        let c3 = cross_polytope_boundary(3).unwrap();
        assert!(SubdivisionMap::identity(c3.complex()).check_ellh_identity());
        let facet = c3.complex().facets()[0].clone();
        let s = SubdivisionMap::stellar(c3.complex(), &facet, 100).unwrap();
        assert!(s.check_ellh_identity());
        let (lhs, rhs) = s.ellh_sides().unwrap();
        assert_eq!(lhs, rhs);

        let mut broken = s.clone();
        broken
            .carrier
            .insert(100, Face::from([facet.vertices()[0], facet.vertices()[1]]));
        assert!(!broken.check_ellh_identity());
    }

    #[test]
    fn iterated_stellar_refinement() {
        let tri = SimplicialComplex::simplex(&Face::from([0, 1, 2]));
        let s = SubdivisionMap::stellar(&tri, &Face::from([0, 1]), 3)
            .unwrap()
            .refine_stellar(&Face::from([1, 2, 3]), 4)
            .unwrap();
        assert_eq!(s.carrier[&3], Face::from([0, 1]));
        assert_eq!(s.carrier[&4], Face::from([0, 1, 2]));
        assert!(s.validate().is_ok());
        assert!(s.check_ellh_identity());
        let ell = s.local_h(&Face::from([0, 1, 2])).unwrap();
        assert!(ell.coeff(0) == 0 && ell.coeff(1) >= 1);
        assert!(ell.is_symmetric_about(3));
    }
}
