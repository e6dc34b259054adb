use std::collections::{BTreeMap, BTreeSet};

use crate::complex::VertexId;

/// A simple undirected graph with sorted vertex and edge lists.
///
/// Edges are stored as `(u, v)` with `u < v`, in lexicographic order; this
/// is the row order of every rigidity matrix built from the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Endpoints are added to the vertex set; loops are dropped.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let mut vs: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                continue;
            }
            vs.insert(a);
            vs.insert(b);
            es.insert((a.min(b), a.max(b)));
        }
        Graph {
            vertices: vs.into_iter().collect(),
            edges: es.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn edge_index(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn adjacency(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn union(&self, other: &Graph) -> Graph {
        Graph::new(
            self.vertices.iter().chain(other.vertices.iter()).copied(),
            self.edges.iter().chain(other.edges.iter()).copied(),
        )
    }

    pub fn with_edge(&self, a: VertexId, b: VertexId) -> Graph {
        Graph::new(
            self.vertices.iter().copied(),
            self.edges.iter().copied().chain([(a, b)]),
        )
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        Graph::new(
            self.vertices.iter().copied().filter(|v| keep.contains(v)),
            self.edges
                .iter()
                .copied()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b)),
        )
    }

    /// Connected components after deleting `removed` and incident edges.
    pub fn components_excluding(&self, removed: &BTreeSet<VertexId>) -> usize {
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = removed.clone();
        let mut components = 0;
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            components += 1;
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        components
    }
}
