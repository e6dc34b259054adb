//! Rigidity matrices, stresses and infinitesimal motions of bar-and-joint
//! frameworks.
//!
//! Verdicts (rank, rigidity) come from fraction-free elimination; kernels come
//! from rational reduced echelon form and are returned in reduced echelon
//! form so that bases compare deterministically.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};

use crate::complex::VertexId;
use crate::enumerative::binomial;
use crate::error::{Error, Result};
use crate::geometry::{Embedding, RationalVector};
use crate::graph::Graph;
use crate::linalg::{rat, Matrix, Rational};
use crate::symmetry::Involution;

pub type Edge = (VertexId, VertexId);

fn canonical(a: VertexId, b: VertexId) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The `f1 × d·f0` rigidity matrix. Row `i` belongs to `edges[i]`; columns
/// `d·j .. d·j + d` to `vertices[j]`.
#[derive(Clone, Debug)]
pub struct RigidityMatrix {
    d: usize,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    matrix: Matrix,
}

impl RigidityMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank_bareiss()
    }

    fn edge_row(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }
}

/// Builds the rigidity matrix of `g` under `e`.
pub fn rigidity_matrix(g: &Graph, e: &Embedding) -> Result<RigidityMatrix> {
    let d = e.d();
    let vertices = g.vertices().to_vec();
    let mut matrix = Matrix::zeros(g.num_edges(), d * vertices.len());
    for &v in &vertices {
        e.get(v)?;
    }
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        let diff = e.get(u)? - e.get(v)?;
        let (iu, iv) = (g.vertex_index(u).unwrap(), g.vertex_index(v).unwrap());
        for (k, x) in diff.entries().iter().enumerate() {
            matrix.set(row, d * iu + k, x.clone());
            matrix.set(row, d * iv + k, -x);
        }
    }
    Ok(RigidityMatrix {
        d,
        vertices,
        edges: g.edges().to_vec(),
        matrix,
    })
}

pub fn rank(m: &RigidityMatrix) -> usize {
    m.rank()
}

/// Edge weights in equilibrium at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressVector {
    pub weights: BTreeMap<Edge, Rational>,
}

impl StressVector {
    pub fn weight(&self, a: VertexId, b: VertexId) -> Rational {
        self.weights
            .get(&canonical(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.values().all(Zero::is_zero)
    }

    /// `Σ_u ω_uv (p(v) − p(u)) = 0` at every vertex.
    pub fn is_equilibrium(&self, e: &Embedding) -> Result<bool> {
        let mut force: BTreeMap<VertexId, RationalVector> = BTreeMap::new();
        for (&(u, v), w) in &self.weights {
            if w.is_zero() {
                continue;
            }
            let diff = (e.get(v)? - e.get(u)?).scale(w);
            let zero = RationalVector::zero(e.d());
            let fv = force.entry(v).or_insert_with(|| zero.clone());
            *fv = &*fv + &diff;
            let fu = force.entry(u).or_insert(zero);
            *fu = &*fu - &diff;
        }
        Ok(force.values().all(RationalVector::is_zero))
    }

    fn to_vec(&self, edges: &[Edge]) -> Vec<Rational> {
        edges.iter().map(|&(a, b)| self.weight(a, b)).collect()
    }

    fn from_vec(edges: &[Edge], values: Vec<Rational>) -> StressVector {
        StressVector {
            weights: edges.iter().copied().zip(values).collect(),
        }
    }

    /// `(ω + α·ω) / 2`, where `(α·ω)_e = ω_{α(e)}`.
    pub fn symmetrized(&self, alpha: &Involution) -> Result<StressVector> {
        let half = Rational::new(1.into(), 2.into());
        let mut weights = BTreeMap::new();
        for (&(u, v), w) in &self.weights {
            let image = antipodal_edge(alpha, (u, v))?;
            let other = self.weights.get(&image).ok_or(Error::NotCentrallySymmetric(format!(
                "edge {{{u},{v}}} has no antipodal edge"
            )))?;
            weights.insert((u, v), (w + other) * &half);
        }
        Ok(StressVector { weights })
    }

    pub fn is_symmetric(&self, alpha: &Involution) -> Result<bool> {
        Ok(self.symmetrized(alpha)? == *self)
    }
}

/// A basis of the stress space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressBasis {
    pub edges: Vec<Edge>,
    pub vectors: Vec<StressVector>,
}

impl StressBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.vectors.iter().map(|s| s.to_vec(&self.edges)).collect()
    }

    /// Same span, compared as subspaces of `Q^edges`.
    pub fn spans_same(&self, other: &StressBasis) -> bool {
        self.edges == other.edges && crate::linalg::spans_equal(&self.rows(), &other.rows(), self.edges.len())
    }
}

fn echelon_basis(vectors: Vec<Vec<Rational>>, len: usize) -> Vec<Vec<Rational>> {
    let r = Matrix::from_rows(vectors, len).rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Left kernel of the rigidity matrix.
pub fn stress_basis(m: &RigidityMatrix) -> StressBasis {
    let kernel = echelon_basis(m.matrix.left_nullspace(), m.edges.len());
    StressBasis {
        edges: m.edges.clone(),
        vectors: kernel
            .into_iter()
            .map(|v| StressVector::from_vec(&m.edges, v))
            .collect(),
    }
}

/// Velocities with `(p(u) − p(v))·(m(u) − m(v)) = 0` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionVector {
    pub velocities: BTreeMap<VertexId, RationalVector>,
}

/// Right kernel of the rigidity matrix.
pub fn motions_basis(m: &RigidityMatrix) -> Vec<MotionVector> {
    let cols = m.matrix.cols();
    echelon_basis(m.matrix.nullspace(), cols)
        .into_iter()
        .map(|x| MotionVector {
            velocities: m
                .vertices
                .iter()
                .enumerate()
                .map(|(j, &v)| (v, RationalVector::new(x[m.d * j..m.d * (j + 1)].to_vec())))
                .collect(),
        })
        .collect()
}

impl MotionVector {
    pub fn is_infinitesimal_motion(&self, g: &Graph, e: &Embedding) -> Result<bool> {
        for &(u, v) in g.edges() {
            let (mu, mv) = match (self.velocities.get(&u), self.velocities.get(&v)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::MissingCoordinates(u)),
            };
            if !(e.get(u)? - e.get(v)?).dot(&(mu - mv)).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f1 − d·f0 + C(d+1, 2)`.
pub fn g2_framework(g: &Graph, d: usize) -> i64 {
    g.num_edges() as i64 - (d * g.num_vertices()) as i64 + binomial(d as i64 + 1, 2)
}

/// Rank equals `d·f0 − C(d+1, 2)`. The vertices must affinely span `R^d`.
pub fn is_infinitesimally_rigid(g: &Graph, e: &Embedding) -> Result<bool> {
    let d = e.d();
    if e.affine_span_dim(g.vertices())? < d {
        return Err(Error::DegenerateSpan(d));
    }
    let m = rigidity_matrix(g, e)?;
    Ok(m.rank() as i64 == (d * g.num_vertices()) as i64 - binomial(d as i64 + 1, 2))
}

fn antipodal_edge(alpha: &Involution, (u, v): Edge) -> Result<Edge> {
    let a = alpha.get(u).ok_or(Error::UnknownVertex(u))?;
    let b = alpha.get(v).ok_or(Error::UnknownVertex(v))?;
    Ok(canonical(a, b))
}

/// Dimension of the symmetric part of a stress space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricStresses {
    pub dim: usize,
    pub dim_sym: usize,
    pub all_symmetric: bool,
}

fn edge_pairing(edges: &[Edge], alpha: &Involution) -> Result<Vec<(usize, usize)>> {
    let index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let image = antipodal_edge(alpha, e)?;
        let &j = index
            .get(&image)
            .ok_or_else(|| Error::NotCentrallySymmetric(format!("edge {{{},{}}} has no antipodal edge", e.0, e.1)))?;
        if i < j {
            out.push((i, j));
        }
    }
    Ok(out)
}

/// `dim (S ∩ {ω_e = ω_{α(e)}})`, from the coefficients of the basis.
pub fn symmetric_stress_subspace(b: &StressBasis, alpha: &Involution) -> Result<SymmetricStresses> {
    let pairs = edge_pairing(&b.edges, alpha)?;
    let rows = b.rows();
    let k = rows.len();
    let constraints: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| (0..k).map(|c| &rows[c][i] - &rows[c][j]).collect())
        .collect();
    let dim_sym = k - Matrix::from_rows(constraints, k).rank();
    Ok(SymmetricStresses {
        dim: k,
        dim_sym,
        all_symmetric: dim_sym == k,
    })
}

/// The same dimension computed directly as the kernel of the equilibrium
/// equations stacked with the symmetry equations.
pub fn symmetric_stress_dim_direct(m: &RigidityMatrix, alpha: &Involution) -> Result<usize> {
    let pairs = edge_pairing(&m.edges, alpha)?;
    let f1 = m.edges.len();
    let mut sym = Matrix::zeros(pairs.len(), f1);
    for (r, &(i, j)) in pairs.iter().enumerate() {
        sym.set(r, i, rat(1));
        sym.set(r, j, rat(-1));
    }
    let stacked = m.matrix.transpose().vstack(&sym);
    Ok(f1 - stacked.rank_bareiss())
}

/// Whether `2·dim S_sym ≥ f1 − d·f0 + 2·C(d, 2)`.
pub fn symm_stress_lower_bound_check(g: &Graph, e: &Embedding, alpha: &Involution) -> Result<bool> {
    let (dim_sym, bound) = symm_stress_bound(g, e, alpha)?;
    Ok(2 * dim_sym as i64 >= bound)
}

/// `(dim S_sym, f1 − d·f0 + 2·C(d, 2))`.
pub fn symm_stress_bound(g: &Graph, e: &Embedding, alpha: &Involution) -> Result<(usize, i64)> {
    let d = e.d() as i64;
    let m = rigidity_matrix(g, e)?;
    let sym = symmetric_stress_subspace(&stress_basis(&m), alpha)?;
    let bound = g.num_edges() as i64 - d * g.num_vertices() as i64 + 2 * binomial(d, 2);
    Ok((sym.dim_sym, bound))
}

/// A stress of `subgraph ∪ {edge}` that is non-zero on `edge`, if one exists.
pub fn stress_through_edge(subgraph: &Graph, e: &Embedding, edge: Edge) -> Result<Option<StressVector>> {
    let edge = canonical(edge.0, edge.1);
    if subgraph.has_edge(edge.0, edge.1) {
        return Err(Error::InvalidParameter(format!(
            "{{{},{}}} is already an edge",
            edge.0, edge.1
        )));
    }
    for v in [edge.0, edge.1] {
        if !subgraph.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let without = rigidity_matrix(subgraph, e)?;
    let with = rigidity_matrix(&subgraph.with_edge(edge.0, edge.1), e)?;
    if with.rank() != without.rank() {
        return Ok(None);
    }
    let row = with.edge_row(edge).expect("edge was added");
    let found = with
        .matrix
        .left_nullspace()
        .into_iter()
        .find(|v| !v[row].is_zero())
        .expect("equal ranks force a dependence through the edge");
    Ok(Some(StressVector::from_vec(&with.edges, found)))
}

/// Floating-point rank with relative threshold, for quick cross-checks only.
pub fn float_rank(m: &Matrix, rel_tol: f64) -> usize {
    let mut a: Vec<Vec<f64>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let scale = a.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else {
            break;
        };
        if a[p][c].abs() <= tol {
            continue;
        }
        a.swap(p, rank);
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c] / pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Vertices of `g` as a set.
pub fn vertex_set(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices().iter().copied().collect()
}
