//! Finite simple graphs on `u32` vertex ids.

use std::collections::{BTreeMap, BTreeSet};

use crate::mesh::VertexId;

/// Vertices are stored sorted; edges as index pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    ids: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build from vertex ids and id pairs. Endpoints missing from the vertex
    /// list are added; loops and repeated edges are dropped.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
        let mut ids: BTreeSet<VertexId> = vertices.into_iter().collect();
        for &(a, b) in &edges {
            ids.insert(a);
            ids.insert(b);
        }
        let ids: Vec<VertexId> = ids.into_iter().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a != b {
                let (i, j) = (index[&a], index[&b]);
                set.insert((i.min(j), i.max(j)));
            }
        }
        Self {
            ids,
            edges: set.into_iter().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> VertexId {
        self.ids[index]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Edges as index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as id pairs.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|&(i, j)| (self.ids[i], self.ids[j])).collect()
    }

    pub fn maxwell_count(&self) -> i64 {
        3 * self.ids.len() as i64 - self.edges.len() as i64
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.ids.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.edges.binary_search(&(i.min(j), i.max(j))).is_ok(),
            _ => false,
        }
    }

    /// Number of edges with both ends in `ids`.
    pub fn induced_edge_count(&self, ids: &BTreeSet<VertexId>) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| ids.contains(&self.ids[i]) && ids.contains(&self.ids[j]))
            .count()
    }

    pub fn with_edge(&self, a: VertexId, b: VertexId) -> Graph {
        let mut pairs = self.edge_pairs();
        pairs.push((a, b));
        Graph::new(self.ids.iter().copied(), pairs)
    }

    pub fn without_edge(&self, a: VertexId, b: VertexId) -> Graph {
        let pairs = self
            .edge_pairs()
            .into_iter()
            .filter(|&(x, y)| !((x == a && y == b) || (x == b && y == a)));
        Graph::new(self.ids.iter().copied(), pairs)
    }

    /// Relabel vertices through `f` (must be injective).
    pub fn relabeled(&self, f: impl Fn(VertexId) -> VertexId) -> Graph {
        Graph::new(
            self.ids.iter().map(|&v| f(v)),
            self.edge_pairs().into_iter().map(|(a, b)| (f(a), f(b))),
        )
    }

    /// Complete graph on `0..n`.
    pub fn complete(n: u32) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(0..n, edges)
    }

    /// Union of two graphs on shared ids.
    pub fn union(&self, other: &Graph) -> Graph {
        Graph::new(
            self.ids.iter().chain(other.ids.iter()).copied(),
            self.edge_pairs().into_iter().chain(other.edge_pairs()),
        )
    }
}
