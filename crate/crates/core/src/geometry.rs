//! Exact rational realizations of the cross-polytope and stacking family.
//!
//! A [`RealizedPolytope`] carries its facet hyperplanes so that stacking can
//! certify convex position incrementally: a new apex must lie strictly beyond
//! the stacked facet and strictly beneath every other facet.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::constructions::{
    cross_polytope_boundary, cross_vertex, simplex_boundary, BaseKind, StackMode, StackingScript,
};
use crate::error::{Error, Result};
use crate::linalg::{dot, rat, Matrix, Rational};
use crate::symmetry::{validate_cs, CsComplex, Involution};

/// Perturbation numerators are drawn from `[-PERTURB_RANGE, PERTURB_RANGE]`.
pub const PERTURB_RANGE: i64 = 1 << 12;
/// Perturbation denominator.
pub const PERTURB_DENOM: i64 = 1 << 20;
const MAX_RETRIES: u64 = 16;
const MAX_HALVINGS: usize = 64;
const MAX_GRID_BITS: u64 = 256;

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zero(d: usize) -> Self {
        RationalVector(vec![Rational::zero(); d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn centroid(points: &[&RationalVector]) -> RationalVector {
        let d = points[0].dim();
        let sum = points.iter().fold(Self::zero(d), |acc, p| &acc + *p);
        sum.scale(&Rational::new(BigInt::one(), BigInt::from(points.len())))
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;

    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;

    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Vertex coordinates in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    d: usize,
    coords: BTreeMap<VertexId, RationalVector>,
}

impl Embedding {
    pub fn new(d: usize) -> Self {
        Embedding {
            d,
            coords: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn insert(&mut self, v: VertexId, p: RationalVector) -> Result<()> {
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: p.dim(),
            });
        }
        self.coords.insert(v, p);
        Ok(())
    }

    pub fn with(mut self, v: VertexId, p: RationalVector) -> Result<Self> {
        self.insert(v, p)?;
        Ok(self)
    }

    pub fn get(&self, v: VertexId) -> Result<&RationalVector> {
        self.coords.get(&v).ok_or(Error::MissingCoordinates(v))
    }

    pub fn coords(&self) -> &BTreeMap<VertexId, RationalVector> {
        &self.coords
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.coords.keys().copied()
    }

    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Result<Embedding> {
        let mut out = Embedding::new(self.d);
        for &v in keep {
            out.coords.insert(v, self.get(v)?.clone());
        }
        Ok(out)
    }

    /// `p(α(v)) = -p(v)` wherever both sides are embedded.
    pub fn respects(&self, alpha: &Involution) -> bool {
        self.coords
            .iter()
            .all(|(&v, p)| match alpha.get(v).and_then(|w| self.coords.get(&w)) {
                Some(q) => *q == -p,
                None => true,
            })
    }

    /// Dimension of the affine hull of the given vertices.
    pub fn affine_span_dim(&self, vertices: &[VertexId]) -> Result<usize> {
        let pts = vertices.iter().map(|&v| self.get(v)).collect::<Result<Vec<_>>>()?;
        Ok(affine_rank(&pts))
    }
}

/// Dimension of the affine hull of `points` (0 for a single point).
pub fn affine_rank(points: &[&RationalVector]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = rest.iter().map(|p| (*p - *first).0).collect();
    Matrix::from_rows(rows, first.dim()).rank()
}

pub fn affinely_independent(points: &[&RationalVector]) -> bool {
    !points.is_empty() && affine_rank(points) == points.len() - 1
}

/// Oriented hyperplane `normal · x = offset` with the interior on the `<` side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: RationalVector,
    pub offset: Rational,
}

impl Hyperplane {
    /// Hyperplane through `d` affinely independent points of `Q^d`, oriented
    /// so that `interior` lies strictly beneath it.
    pub fn through(points: &[&RationalVector], interior: &RationalVector) -> Result<Hyperplane> {
        let d = interior.dim();
        if points.len() != d || !affinely_independent(points) {
            return Err(Error::Geometry("facet points are not affinely independent".into()));
        }
        let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| (*p - points[0]).0).collect();
        let kernel = Matrix::from_rows(rows, d).nullspace();
        let normal = RationalVector(kernel.into_iter().next().expect("corank one"));
        let offset = normal.dot(points[0]);
        let plane = Hyperplane { normal, offset };
        match plane.side(interior) {
            std::cmp::Ordering::Less => Ok(plane),
            std::cmp::Ordering::Greater => Ok(plane.flipped()),
            std::cmp::Ordering::Equal => Err(Error::Geometry("interior point lies on a facet hyperplane".into())),
        }
    }

    fn flipped(self) -> Hyperplane {
        Hyperplane {
            normal: -&self.normal,
            offset: -self.offset,
        }
    }

    /// `Greater` means beyond (outside), `Less` beneath.
    pub fn side(&self, x: &RationalVector) -> std::cmp::Ordering {
        self.normal.dot(x).cmp(&self.offset)
    }

    pub fn negated(&self) -> Hyperplane {
        Hyperplane {
            normal: -&self.normal,
            offset: self.offset.clone(),
        }
    }
}

/// Every `d`-subset without an antipodal pair is affinely independent.
pub fn is_symmetrically_generic(e: &Embedding, alpha: &Involution) -> bool {
    symmetric_genericity_witness(e, alpha).is_none()
}

/// A `d`-subset with no antipodal pair that is affinely dependent, if any.
pub fn symmetric_genericity_witness(e: &Embedding, alpha: &Involution) -> Option<Vec<VertexId>> {
    let vs: Vec<VertexId> = e.vertices().collect();
    let d = e.d();
    let mut chosen = Vec::with_capacity(d);
    fn rec(
        e: &Embedding,
        alpha: &Involution,
        vs: &[VertexId],
        start: usize,
        d: usize,
        chosen: &mut Vec<VertexId>,
    ) -> Option<Vec<VertexId>> {
        if chosen.len() == d {
            let pts: Vec<&RationalVector> = chosen.iter().map(|v| &e.coords[v]).collect();
            return (!affinely_independent(&pts)).then(|| chosen.clone());
        }
        for i in start..vs.len() {
            let v = vs[i];
            if alpha.get(v).is_some_and(|w| chosen.contains(&w)) {
                continue;
            }
            chosen.push(v);
            if let Some(w) = rec(e, alpha, vs, i + 1, d, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }
    rec(e, alpha, &vs, 0, d, &mut chosen)
}

/// Nearest point of the grid `2^-bits · Z^d`.
pub fn round_dyadic(v: &RationalVector, bits: u64) -> RationalVector {
    let scale = BigInt::one() << bits;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    RationalVector(
        v.entries()
            .iter()
            .map(|x| Rational::new((x * &scale + &half).floor().to_integer(), scale.clone()))
            .collect(),
    )
}

/// `p` rounded to successively finer dyadic grids, then `p` itself.
fn dyadic_candidates(p: &RationalVector) -> impl Iterator<Item = RationalVector> + '_ {
    (1..=MAX_GRID_BITS / 4)
        .map(move |k| round_dyadic(p, 4 * k))
        .chain(std::iter::once(p.clone()))
}

/// Apex over a facet: `centroid + ε·normal`, with `ε` halved until a point
/// near it with small dyadic coordinates is strictly beyond `facet_plane`
/// and strictly beneath all `others`.
pub fn stacking_apex(
    facet_points: &[&RationalVector],
    facet_plane: &Hyperplane,
    others: &[&Hyperplane],
) -> Result<RationalVector> {
    let c = RationalVector::centroid(facet_points);
    let mut eps = Rational::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let admissible = |p: &RationalVector| facet_plane.side(p).is_gt() && others.iter().all(|h| h.side(p).is_lt());
    for _ in 0..MAX_HALVINGS {
        let exact = &c + &facet_plane.normal.scale(&eps);
        if admissible(&exact) {
            let snapped = dyadic_candidates(&exact).find(|p| admissible(p));
            return Ok(snapped.unwrap_or(exact));
        }
        eps *= &half;
    }
    Err(Error::Geometry("no admissible apex height found".into()))
}

/// Orthogonal projection of the vertices `keep` onto `normal^⊥`.
///
/// Coordinates are taken against an orthogonal (unnormalized) basis of the
/// complement obtained by exact Gram–Schmidt; this is a linear isomorphism of
/// the hyperplane, which does not affect infinitesimal rigidity.
pub fn project_orthogonal(e: &Embedding, normal: &RationalVector, keep: &BTreeSet<VertexId>) -> Result<Embedding> {
    let d = e.d();
    if normal.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: normal.dim(),
        });
    }
    if normal.is_zero() {
        return Err(Error::Geometry("projection normal is zero".into()));
    }
    let mut basis: Vec<RationalVector> = vec![normal.clone()];
    for i in 0..d {
        if basis.len() == d {
            break;
        }
        let mut w = RationalVector::unit(d, i);
        for b in &basis {
            let coef = w.dot(b) / b.dot(b);
            w = &w - &b.scale(&coef);
        }
        if !w.is_zero() {
            basis.push(w);
        }
    }
    let complement = &basis[1..];
    let mut out = Embedding::new(d - 1);
    let mut seen: BTreeMap<RationalVector, VertexId> = BTreeMap::new();
    for &v in keep {
        let p = e.get(v)?;
        let image = RationalVector(complement.iter().map(|b| p.dot(b) / b.dot(b)).collect());
        if let Some(&u) = seen.get(&image) {
            return Err(Error::NonInjectiveProjection(u, v));
        }
        seen.insert(image.clone(), v);
        out.coords.insert(v, image);
    }
    Ok(out)
}

impl PartialOrd for RationalVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

fn perturbation(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.random_range(-PERTURB_RANGE..=PERTURB_RANGE)),
        BigInt::from(PERTURB_DENOM),
    )
}

fn seeded_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(attempt))
}

/// A simplicial polytope: its boundary complex, vertex coordinates and the
/// oriented hyperplane of every facet.
#[derive(Clone, Debug)]
pub struct RealizedPolytope {
    pub complex: SimplicialComplex,
    pub involution: Option<Involution>,
    pub embedding: Embedding,
    pub planes: BTreeMap<Face, Hyperplane>,
    pub interior: RationalVector,
}

impl RealizedPolytope {
    fn from_parts(
        complex: SimplicialComplex,
        involution: Option<Involution>,
        embedding: Embedding,
        interior: RationalVector,
    ) -> Result<Self> {
        let mut planes = BTreeMap::new();
        for f in complex.facets() {
            let pts = f
                .vertices()
                .iter()
                .map(|&v| embedding.get(v))
                .collect::<Result<Vec<_>>>()?;
            planes.insert(f.clone(), Hyperplane::through(&pts, &interior)?);
        }
        let out = RealizedPolytope {
            complex,
            involution,
            embedding,
            planes,
            interior,
        };
        out.verify_convex_position()?;
        Ok(out)
    }

    /// Perturbed `±(e_i + δ_i)`; resamples until symmetrically generic and in
    /// convex position with the combinatorial facets.
    pub fn cross_polytope(d: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("realization needs d >= 2, got {d}")));
        }
        let (complex, alpha) = cross_polytope_boundary(d)?.into_parts();
        for attempt in 0..MAX_RETRIES {
            let mut rng = seeded_rng(seed, attempt);
            let mut e = Embedding::new(d);
            for i in 0..d {
                let mut p = RationalVector::unit(d, i);
                for x in p.0.iter_mut() {
                    *x += perturbation(&mut rng);
                }
                e.insert(cross_vertex(i, true), -&p)?;
                e.insert(cross_vertex(i, false), p)?;
            }
            if !is_symmetrically_generic(&e, &alpha) {
                continue;
            }
            if let Ok(p) = Self::from_parts(complex.clone(), Some(alpha.clone()), e, RationalVector::zero(d)) {
                return Ok(p);
            }
        }
        Err(Error::Geometry(format!(
            "no generic cross-polytope realization for seed {seed}"
        )))
    }

    /// Perturbed simplex `e_1, …, e_d, -(1, …, 1)` on vertices `1..=d`, `0`.
    pub fn simplex(d: usize, seed: u64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter(format!("realization needs d >= 1, got {d}")));
        }
        let complex = simplex_boundary(d)?;
        for attempt in 0..MAX_RETRIES {
            let mut rng = seeded_rng(seed, attempt);
            let mut e = Embedding::new(d);
            let mut pts = vec![RationalVector(vec![rat(-1); d])];
            pts.extend((0..d).map(|i| RationalVector::unit(d, i)));
            for (v, mut p) in pts.into_iter().enumerate() {
                for x in p.0.iter_mut() {
                    *x += perturbation(&mut rng);
                }
                e.insert(v as VertexId, p)?;
            }
            let all: Vec<&RationalVector> = e.coords.values().collect();
            if !affinely_independent(&all) {
                continue;
            }
            let interior = RationalVector::centroid(&all);
            if let Ok(p) = Self::from_parts(complex.clone(), None, e, interior) {
                return Ok(p);
            }
        }
        Err(Error::Geometry(format!("no simplex realization for seed {seed}")))
    }

    pub fn d(&self) -> usize {
        self.embedding.d()
    }

    /// Every vertex lies on the hyperplanes of its facets and strictly beneath
    /// all others.
    pub fn verify_convex_position(&self) -> Result<()> {
        for (facet, plane) in &self.planes {
            for (&v, p) in self.embedding.coords() {
                let side = plane.side(p);
                let ok = if facet.contains(v) { side.is_eq() } else { side.is_lt() };
                if !ok {
                    return Err(Error::Geometry(format!(
                        "vertex {v} violates the hyperplane of facet {facet}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn cs(&self) -> Result<CsComplex> {
        let alpha = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::NotCentrallySymmetric("no involution".into()))?;
        if !self.embedding.respects(alpha) {
            return Err(Error::NotCentrallySymmetric("embedding is not antipodal".into()));
        }
        validate_cs(&self.complex, alpha)
    }

    fn facet_points(&self, facet: &Face) -> Result<Vec<&RationalVector>> {
        facet.vertices().iter().map(|&v| self.embedding.get(v)).collect()
    }

    /// Stacks `apex` at `point` over `facet`, which must be the only facet
    /// the point is beyond.
    fn stack_at(&self, facet: &Face, apex: VertexId, point: RationalVector) -> Result<Self> {
        let plane = self.planes.get(facet).ok_or_else(|| Error::NotAFacet(facet.clone()))?;
        if !plane.side(&point).is_gt() {
            return Err(Error::Geometry("apex is not beyond the stacked facet".into()));
        }
        if self.planes.iter().any(|(f, h)| f != facet && !h.side(&point).is_lt()) {
            return Err(Error::Geometry("apex is not beneath the other facets".into()));
        }
        let complex = crate::constructions::stack(&self.complex, facet, apex)?;
        let mut embedding = self.embedding.clone();
        embedding.insert(apex, point)?;
        let mut planes = self.planes.clone();
        planes.remove(facet);
        for &w in facet.vertices() {
            let f = facet.without(w).with(apex);
            let pts = f
                .vertices()
                .iter()
                .map(|&v| embedding.get(v))
                .collect::<Result<Vec<_>>>()?;
            planes.insert(f, Hyperplane::through(&pts, &self.interior)?);
        }
        Ok(RealizedPolytope {
            complex,
            involution: self.involution.clone(),
            embedding,
            planes,
            interior: self.interior.clone(),
        })
    }

    /// Stacks a shallow simplex over `facet`.
    pub fn stack(&self, facet: &Face) -> Result<Self> {
        let plane = self.planes.get(facet).ok_or_else(|| Error::NotAFacet(facet.clone()))?;
        let others: Vec<&Hyperplane> = self
            .planes
            .iter()
            .filter(|(f, _)| *f != facet)
            .map(|(_, h)| h)
            .collect();
        let point = stacking_apex(&self.facet_points(facet)?, plane, &others)?;
        self.stack_at(facet, self.complex.fresh_vertex(), point)
    }

    /// Stacks over `facet` and its antipode, placing the second apex at the
    /// negated coordinates of the first.
    pub fn symmetric_stack(&self, facet: &Face) -> Result<Self> {
        let cs = self.cs()?;
        let neg_facet = cs.antipode(facet)?;
        let plane = self.planes.get(facet).ok_or_else(|| Error::NotAFacet(facet.clone()))?;
        let others: Vec<&Hyperplane> = self
            .planes
            .iter()
            .filter(|(f, _)| *f != facet)
            .map(|(_, h)| h)
            .collect();
        let point = stacking_apex(&self.facet_points(facet)?, plane, &others)?;
        let (apex, neg_apex) = (self.complex.fresh_vertex(), self.complex.fresh_vertex() + 1);
        let centroid = RationalVector::centroid(&self.facet_points(facet)?);
        let mut eps = Rational::one();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let first = std::iter::once(point);
        let rest = (0..MAX_HALVINGS).flat_map(|_| {
            let exact = &centroid + &plane.normal.scale(&eps);
            eps *= &half;
            dyadic_candidates(&exact).collect::<Vec<_>>()
        });
        for point in first.chain(rest) {
            let neg_point = -&point;
            let attempt = self
                .stack_at(facet, apex, point)
                .and_then(|p| p.stack_at(&neg_facet, neg_apex, neg_point));
            if let Ok(mut p) = attempt {
                p.involution = Some(cs.involution().extended(apex, neg_apex)?);
                return Ok(p);
            }
        }
        Err(Error::Geometry("no admissible symmetric apex height found".into()))
    }
}

/// Realized cross-polytope with its cs structure.
pub fn realize_cross_polytope(d: usize, seed: u64) -> Result<(CsComplex, Embedding)> {
    let p = RealizedPolytope::cross_polytope(d, seed)?;
    Ok((p.cs()?, p.embedding))
}

/// Runs a stacking script geometrically.
pub fn realize_script(script: &StackingScript, seed: u64) -> Result<RealizedPolytope> {
    let mut p = match script.base.kind {
        BaseKind::Cross => RealizedPolytope::cross_polytope(script.base.d, seed)?,
        BaseKind::Simplex => RealizedPolytope::simplex(script.base.d, seed)?,
    };
    for step in &script.steps {
        p = match step.mode {
            StackMode::Single => {
                let mut q = p.stack(&step.facet)?;
                // the old pairing no longer covers the new apex
                q.involution = p.involution.clone();
                q
            }
            StackMode::Symmetric => p.symmetric_stack(&step.facet)?,
        };
    }
    Ok(p)
}

/// Largest absolute numerator or denominator bit length, for diagnostics.
pub fn coordinate_height(e: &Embedding) -> u64 {
    e.coords()
        .values()
        .flat_map(|p| p.entries().iter())
        .map(|x| x.numer().abs().bits().max(x.denom().bits()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: affine dependence via the determinant of the
    /// homogenized `d × d` point matrix restricted to a generic projection is
    /// awkward, so use the `(d+1) × (d+1)` determinant of `[p; 1]` padded with
    /// a random extra point instead: `d` points are affinely independent iff
    /// the `d × (d+1)` homogenized matrix has full row rank, checked here by
    /// brute-force minor enumeration.
    fn independent_by_minors(points: &[&RationalVector]) -> bool {
        let d = points[0].dim();
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                let mut r = p.entries().to_vec();
                r.push(Rational::one());
                r
            })
            .collect();
        let k = rows.len();
        // some k × k minor is nonzero
        let cols: Vec<usize> = (0..=d).collect();
        fn det(m: Vec<Vec<Rational>>) -> Rational {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut total = Rational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(minor);
                if j % 2 == 0 {
                    total += term
                } else {
                    total -= term
                }
            }
            total
        }
        let face = Face::from_sorted(cols.iter().map(|&c| c as u32).collect());
        face.subsets(k).iter().any(|s| {
            let m: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| s.vertices().iter().map(|&c| r[c as usize].clone()).collect())
                .collect();
            !det(m).is_zero()
        })
    }

    #[test]
    fn cross_polytope_realization_is_generic_and_antipodal() {
        for d in 2..=5 {
            for seed in 0..3 {
                let (cs, e) = realize_cross_polytope(d, seed).unwrap();
                assert!(e.respects(cs.involution()));
                assert!(is_symmetrically_generic(&e, cs.involution()));
            }
        }
        let (_, a) = realize_cross_polytope(4, 7).unwrap();
        let (_, b) = realize_cross_polytope(4, 7).unwrap();
        assert_eq!(a, b);
        let (_, c) = realize_cross_polytope(4, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn triples_of_octahedron_match_minor_oracle() {
        let (cs, e) = realize_cross_polytope(3, 0).unwrap();
        let vs: Vec<u32> = cs.complex().vertices().to_vec();
        let all = Face::from_sorted(vs);
        let mut non_antipodal = 0;
        for t in all.subsets(3) {
            let pts: Vec<&RationalVector> = t.vertices().iter().map(|&v| e.get(v).unwrap()).collect();
            assert_eq!(affinely_independent(&pts), independent_by_minors(&pts), "{t}");
            if cs.antipodal_pairs_in(&t.vertices().iter().copied().collect()) == 0 {
                non_antipodal += 1;
                assert!(independent_by_minors(&pts));
            }
        }
        assert_eq!(non_antipodal, 8);
    }

    #[test]
    fn unperturbed_cross_polytope_genericity() {
        // With exact ±e_i, the subsets free of antipodal pairs are the facets,
        // and each spans a hyperplane; the oracle finds no dependent subset.
        for d in 3..=5 {
            let (complex, alpha) = cross_polytope_boundary(d).unwrap().into_parts();
            let mut e = Embedding::new(d);
            for i in 0..d {
                e.insert(cross_vertex(i, false), RationalVector::unit(d, i)).unwrap();
                e.insert(cross_vertex(i, true), -&RationalVector::unit(d, i)).unwrap();
            }
            assert_eq!(symmetric_genericity_witness(&e, &alpha), None);
            for f in complex.facets() {
                let pts: Vec<&RationalVector> = f.vertices().iter().map(|&v| e.get(v).unwrap()).collect();
                assert!(independent_by_minors(&pts));
            }
        }
    }

    #[test]
    fn repeated_point_is_not_generic() {
        let (cs, mut e) = realize_cross_polytope(3, 1).unwrap();
        let p = e.get(0).unwrap().clone();
        e.insert(2, p.clone()).unwrap();
        e.insert(3, -&p).unwrap();
        assert!(!is_symmetrically_generic(&e, cs.involution()));
    }

    #[test]
    fn stacking_keeps_convex_position() {
        let p = RealizedPolytope::cross_polytope(3, 2).unwrap();
        let facet = p.complex.facets()[0].clone();
        let q = p.stack(&facet).unwrap();
        assert_eq!(q.planes.len(), 8 - 1 + 3);
        q.verify_convex_position().unwrap();
        let apex = q.embedding.get(6).unwrap();
        assert!(p.planes[&facet].side(apex).is_gt());

        let s = p.symmetric_stack(&facet).unwrap();
        s.verify_convex_position().unwrap();
        assert_eq!(s.embedding.get(7).unwrap(), &-s.embedding.get(6).unwrap());
        assert!(s.cs().is_ok());
        assert!(matches!(p.stack(&Face::from([0, 2])), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn apex_search_fails_when_boxed_in() {
        let pts = [RationalVector::from_ints(&[0, 0]), RationalVector::from_ints(&[1, 0])];
        let refs: Vec<&RationalVector> = pts.iter().collect();
        let plane = Hyperplane {
            normal: RationalVector::from_ints(&[0, 1]),
            offset: rat(0),
        };
        let lid = Hyperplane {
            normal: RationalVector::from_ints(&[0, 1]),
            offset: rat(0),
        };
        assert!(stacking_apex(&refs, &plane, &[&lid]).is_err());
    }

    #[test]
    fn projections() {
        let e = Embedding::new(3)
            .with(0, RationalVector::from_ints(&[1, 2, 3]))
            .unwrap()
            .with(1, RationalVector::from_ints(&[2, 4, 6]))
            .unwrap()
            .with(2, RationalVector::from_ints(&[0, 1, 0]))
            .unwrap();
        let n = RationalVector::from_ints(&[1, 2, 3]);
        let single = project_orthogonal(&e, &n, &BTreeSet::from([0])).unwrap();
        assert!(single.get(0).unwrap().is_zero());
        assert_eq!(single.d(), 2);
        assert!(matches!(
            project_orthogonal(&e, &n, &BTreeSet::from([0, 1])),
            Err(Error::NonInjectiveProjection(0, 1))
        ));
        assert!(project_orthogonal(&e, &RationalVector::zero(3), &BTreeSet::from([0])).is_err());
        let two = project_orthogonal(&e, &n, &BTreeSet::from([0, 2])).unwrap();
        assert!(!two.get(2).unwrap().is_zero());
    }
}
