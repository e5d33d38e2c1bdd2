//! Graphs cellularly embedded in surfaces via signed rotation systems.
//!
//! A [`SurfaceMesh`] stores every edge once with a sign, and at every vertex
//! the cyclic order of the incident edge-ends ("darts"). Faces are recovered
//! by tracing: leaving a vertex along a dart with a local orientation, the
//! orientation is multiplied by the edge sign on arrival and the next dart is
//! the rotation successor (orientation `+1`) or predecessor (`-1`).
//!
//! Bordered surfaces are represented by marking some traced faces as holes.

mod build;
mod invariants;
pub mod io;
mod trace;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use build::MeshBuilder;
pub use invariants::{twice_reduced_genus, ReducedGenus, SurfaceInvariants};
pub use trace::{FaceWalk, Step};
pub(crate) use trace::{RotationIndex, Tracing};

pub type VertexId = u32;
pub type EdgeId = u32;

/// An edge-end: `end == 0` sits at the edge's `u`, `end == 1` at its `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: u8,
}

impl Dart {
    pub const fn new(edge: EdgeId, end: u8) -> Self {
        Self { edge, end }
    }

    pub const fn opposite(self) -> Self {
        Self {
            edge: self.edge,
            end: self.end ^ 1,
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.edge, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    pub fn endpoint(&self, end: u8) -> VertexId {
        if end == 0 {
            self.u
        } else {
            self.v
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Reference errors: something points at an element that does not exist.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Malformed {
    #[error("edge {edge} has endpoint {vertex} which is not a vertex")]
    MissingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("rotation given for unknown vertex {0}")]
    UnknownRotationVertex(VertexId),
    #[error("vertex {0} has no rotation")]
    MissingRotation(VertexId),
    #[error("dart {dart} at vertex {vertex} refers to a missing edge")]
    DanglingDart { vertex: VertexId, dart: Dart },
    #[error("dart {0} has an end index other than 0 or 1")]
    BadEnd(Dart),
    #[error("hole dart {0} refers to a missing edge")]
    DanglingHole(Dart),
}

/// Semantic violations of the mesh invariants.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("mesh has no edges")]
    Empty,
    #[error("edge {0} is a loop")]
    Loop(EdgeId),
    #[error("edges {0} and {1} are parallel")]
    Parallel(EdgeId, EdgeId),
    #[error("dart {dart} is listed at vertex {vertex} but belongs to vertex {owner}")]
    MisplacedDart {
        dart: Dart,
        vertex: VertexId,
        owner: VertexId,
    },
    #[error("dart {0} appears more than once in the rotation system")]
    DuplicateDart(Dart),
    #[error("dart {0} is missing from the rotation system")]
    MissingDart(Dart),
    #[error("graph is disconnected (vertex {0} unreachable)")]
    Disconnected(VertexId),
    #[error("two hole markers {0} and {1} name the same face")]
    DuplicateHole(Dart, Dart),
    #[error("nontriangular face at {0}")]
    NontriangularFace(Dart),
    #[error("hole at {0} is not a cycle")]
    HoleNotCycle(Dart),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("malformed mesh: {0}")]
    Malformed(#[from] Malformed),
    #[error("invalid mesh: {0}")]
    Violation(#[from] Violation),
}

/// A connected simple graph with a signed rotation system and hole markers.
///
/// Values are immutable once built; moves return new meshes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceMesh {
    pub(crate) vertices: Vec<VertexId>,
    pub(crate) edges: BTreeMap<EdgeId, Edge>,
    pub(crate) rotation: BTreeMap<VertexId, Vec<Dart>>,
    pub(crate) holes: BTreeSet<Dart>,
}

impl SurfaceMesh {
    /// Assemble a mesh from raw parts without checking anything; call
    /// [`SurfaceMesh::validate`] before relying on it.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
        rotation: BTreeMap<VertexId, Vec<Dart>>,
        holes: impl IntoIterator<Item = Dart>,
    ) -> Self {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self {
            vertices,
            edges: edges.into_iter().map(|e| (e.id, e)).collect(),
            rotation,
            holes: holes.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[Dart]> {
        self.rotation.get(&v).map(Vec::as_slice)
    }

    pub fn hole_markers(&self) -> &BTreeSet<Dart> {
        &self.holes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Maxwell count `3V - E`.
    pub fn maxwell_count(&self) -> i64 {
        3 * self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Vertex a dart is attached to.
    pub fn tail(&self, d: Dart) -> VertexId {
        self.edges[&d.edge].endpoint(d.end)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation.get(&v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.rotation
            .get(&v)
            .map(|r| r.iter().map(|d| self.edges[&d.edge].other(v)).collect())
            .unwrap_or_default()
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let rot = self.rotation.get(&a)?;
        rot.iter()
            .map(|d| &self.edges[&d.edge])
            .find(|e| e.other(a) == b)
            .map(|e| e.id)
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.vertices.last().map_or(0, |v| v + 1)
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(0, |e| e + 1)
    }

    /// The abstract graph (mesh structure dropped).
    pub fn graph(&self) -> Graph {
        Graph::new(
            self.vertices.iter().copied(),
            self.edges.values().map(|e| (e.u, e.v)),
        )
    }

    /// Check every invariant, returning the first violation found.
    ///
    /// Reference errors are checked (and reported) before semantic ones.
    pub fn validate(&self) -> Result<(), ValidationError> {
        self.check_references()?;
        self.check_semantics()?;
        Ok(())
    }

    fn check_references(&self) -> Result<(), Malformed> {
        let vset: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        for e in self.edges.values() {
            for x in [e.u, e.v] {
                if !vset.contains(&x) {
                    return Err(Malformed::MissingEndpoint {
                        edge: e.id,
                        vertex: x,
                    });
                }
            }
        }
        for (&v, rot) in &self.rotation {
            if !vset.contains(&v) {
                return Err(Malformed::UnknownRotationVertex(v));
            }
            for &d in rot {
                if d.end > 1 {
                    return Err(Malformed::BadEnd(d));
                }
                if !self.edges.contains_key(&d.edge) {
                    return Err(Malformed::DanglingDart { vertex: v, dart: d });
                }
            }
        }
        for &v in &self.vertices {
            if !self.rotation.contains_key(&v) {
                return Err(Malformed::MissingRotation(v));
            }
        }
        for &h in &self.holes {
            if h.end > 1 {
                return Err(Malformed::BadEnd(h));
            }
            if !self.edges.contains_key(&h.edge) {
                return Err(Malformed::DanglingHole(h));
            }
        }
        Ok(())
    }

    fn check_semantics(&self) -> Result<(), Violation> {
        if self.edges.is_empty() {
            return Err(Violation::Empty);
        }
        let mut pairs: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for e in self.edges.values() {
            if e.u == e.v {
                return Err(Violation::Loop(e.id));
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if let Some(&other) = pairs.get(&key) {
                return Err(Violation::Parallel(other, e.id));
            }
            pairs.insert(key, e.id);
        }
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        for (&v, rot) in &self.rotation {
            for &d in rot {
                let owner = self.tail(d);
                if owner != v {
                    return Err(Violation::MisplacedDart {
                        dart: d,
                        vertex: v,
                        owner,
                    });
                }
                if !seen.insert(d) {
                    return Err(Violation::DuplicateDart(d));
                }
            }
        }
        for e in self.edges.values() {
            for end in 0..2 {
                let d = Dart::new(e.id, end);
                if !seen.contains(&d) {
                    return Err(Violation::MissingDart(d));
                }
            }
        }
        // connectivity
        let start = self.vertices[0];
        let mut reached: BTreeSet<VertexId> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if reached.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if let Some(&v) = self.vertices.iter().find(|v| !reached.contains(v)) {
            return Err(Violation::Disconnected(v));
        }
        let tracing = self.tracing();
        let mut hole_faces: BTreeMap<usize, Dart> = BTreeMap::new();
        for &h in &self.holes {
            let face = tracing.face_of(h, 1);
            if let Some(&prev) = hole_faces.get(&face) {
                return Err(Violation::DuplicateHole(prev, h));
            }
            hole_faces.insert(face, h);
        }
        for (i, walk) in tracing.faces.iter().enumerate() {
            let verts = walk.vertices();
            let distinct: BTreeSet<_> = verts.iter().collect();
            if hole_faces.contains_key(&i) {
                if distinct.len() != verts.len() || verts.len() < 3 {
                    return Err(Violation::HoleNotCycle(walk.canonical_dart()));
                }
            } else if verts.len() != 3 || distinct.len() != 3 {
                return Err(Violation::NontriangularFace(walk.canonical_dart()));
            }
        }
        Ok(())
    }

    /// Orientability by switching: look for `s: V -> ±1` with
    /// `sign(uv)·s(u)·s(v) = +1` on every edge.
    pub fn is_orientable(&self) -> bool {
        self.orientation_switching().is_some()
    }

    /// A switching that makes every edge positive, if one exists.
    pub fn orientation_switching(&self) -> Option<BTreeMap<VertexId, i8>> {
        let mut s: BTreeMap<VertexId, i8> = BTreeMap::new();
        for &root in &self.vertices {
            if s.contains_key(&root) {
                continue;
            }
            s.insert(root, 1);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for d in &self.rotation[&x] {
                    let e = &self.edges[&d.edge];
                    let y = e.other(x);
                    let want = s[&x] * e.sign.value();
                    match s.get(&y) {
                        Some(&sy) if sy != want => return None,
                        Some(_) => {}
                        None => {
                            s.insert(y, want);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        Some(s)
    }

    /// Orientability by cycles: every fundamental cycle of a BFS tree must
    /// have a positive sign product.
    pub fn is_orientable_by_cycles(&self) -> bool {
        let root = self.vertices[0];
        let mut parent: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
        let mut depth: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
        let mut tree_edges: BTreeSet<EdgeId> = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if !depth.contains_key(&y) {
                    let e = self.find_edge(x, y).expect("neighbor edge");
                    depth.insert(y, depth[&x] + 1);
                    parent.insert(y, (x, e));
                    tree_edges.insert(e);
                    queue.push_back(y);
                }
            }
        }
        let sign_of = |e: EdgeId| self.edges[&e].sign.value() as i64;
        for e in self.edges.values() {
            if tree_edges.contains(&e.id) {
                continue;
            }
            let mut product = sign_of(e.id);
            let (mut a, mut b) = (e.u, e.v);
            while a != b {
                if depth[&a] >= depth[&b] {
                    let (p, pe) = parent[&a];
                    product *= sign_of(pe);
                    a = p;
                } else {
                    let (p, pe) = parent[&b];
                    product *= sign_of(pe);
                    b = p;
                }
            }
            if product < 0 {
                return false;
            }
        }
        true
    }

    /// Apply a vertex switching (flip signs around `v` and reverse its
    /// rotation). The embedding is unchanged.
    pub fn switch_vertex(&self, v: VertexId) -> SurfaceMesh {
        let mut out = self.clone();
        if let Some(rot) = out.rotation.get_mut(&v) {
            rot.reverse();
            for d in rot.iter() {
                let e = out.edges.get_mut(&d.edge).expect("edge");
                e.sign = if e.sign == Sign::Positive {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
            }
        }
        // hole markers may now name different darts of the same faces
        out.remap_holes_from(self);
        out
    }

    /// Greedy switching to maximise the number of positive edges; exact
    /// (all positive) for orientable meshes. Never applied implicitly.
    pub fn normalize_signs(&self) -> SurfaceMesh {
        let mut out = self.clone();
        if let Some(s) = self.orientation_switching() {
            for (&v, &sv) in &s {
                if sv < 0 {
                    out = out.switch_vertex(v);
                }
            }
            return out;
        }
        loop {
            let mut improved = false;
            for &v in &self.vertices.clone() {
                let neg = out.rotation[&v]
                    .iter()
                    .filter(|d| out.edges[&d.edge].sign == Sign::Negative)
                    .count();
                if 2 * neg > out.degree(v) {
                    out = out.switch_vertex(v);
                    improved = true;
                }
            }
            if !improved {
                return out;
            }
        }
    }

    fn remap_holes_from(&mut self, before: &SurfaceMesh) {
        let old = before.tracing();
        let hole_vertex_sets: Vec<BTreeSet<VertexId>> = before
            .holes
            .iter()
            .map(|&h| old.faces[old.face_of(h, 1)].vertices().into_iter().collect())
            .collect();
        let new = self.tracing();
        self.holes = hole_vertex_sets
            .iter()
            .filter_map(|set| {
                new.faces
                    .iter()
                    .find(|w| {
                        let vs: BTreeSet<VertexId> = w.vertices().into_iter().collect();
                        &vs == set && w.len() == set.len()
                    })
                    .map(|w| w.canonical_dart())
            })
            .collect();
    }

    /// All traced faces, sorted by canonical dart.
    pub fn faces(&self) -> Vec<FaceWalk> {
        self.tracing().faces
    }

    /// The traced walks of the holes.
    pub fn hole_walks(&self) -> Vec<FaceWalk> {
        let t = self.tracing();
        self.holes
            .iter()
            .map(|&h| t.faces[t.face_of(h, 1)].clone())
            .collect()
    }

    pub fn hole_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.hole_walks().iter().map(FaceWalk::len).collect();
        v.sort_unstable();
        v
    }

    /// Canonical dart of the hole whose walk has exactly this vertex set.
    pub fn find_hole_by_vertices(&self, vertices: &BTreeSet<VertexId>) -> Option<Dart> {
        self.hole_walks()
            .into_iter()
            .find(|w| {
                let vs: BTreeSet<VertexId> = w.vertices().into_iter().collect();
                &vs == vertices
            })
            .map(|w| w.canonical_dart())
    }

    /// Walk of the face containing `dart` (traversed with orientation +1).
    pub fn face_walk(&self, dart: Dart) -> Option<FaceWalk> {
        if !self.edges.contains_key(&dart.edge) || dart.end > 1 {
            return None;
        }
        let t = self.tracing();
        Some(t.faces[t.face_of(dart, 1)].clone())
    }

    pub fn is_hole(&self, face: &FaceWalk) -> bool {
        self.holes.contains(&face.canonical_dart())
    }

    /// Same mesh with every hole capped (markers cleared).
    pub fn capped(&self) -> SurfaceMesh {
        let mut out = self.clone();
        out.holes.clear();
        out
    }

    /// Mark an existing face as a hole without any disjointness checks.
    pub(crate) fn with_hole_marked(&self, face_dart: Dart) -> SurfaceMesh {
        let mut out = self.clone();
        let canon = self.face_walk(face_dart).expect("face").canonical_dart();
        out.holes.insert(canon);
        out
    }

    /// Same mesh with the given hole marker removed.
    pub fn with_hole_cleared(&self, hole: Dart) -> SurfaceMesh {
        let mut out = self.clone();
        out.holes.remove(&hole);
        out
    }

    /// Canonical copy: hole markers canonical, rotations started at their
    /// least dart.
    pub fn canonicalized(&self) -> SurfaceMesh {
        let mut out = self.clone();
        for rot in out.rotation.values_mut() {
            if let Some(pos) = rot.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
                rot.rotate_left(pos);
            }
        }
        if self.check_references().is_ok() {
            let t = out.tracing();
            out.holes = self
                .holes
                .iter()
                .map(|&h| t.faces[t.face_of(h, 1)].canonical_dart())
                .collect();
        }
        out
    }

    /// Face cycles of an existing tracing, aligned with `t.faces`.
    pub(crate) fn cycles_of(&self, t: &Tracing) -> Vec<(Vec<VertexId>, bool)> {
        t.faces
            .iter()
            .map(|w| (w.verts.clone(), self.holes.contains(&w.canonical_dart())))
            .collect()
    }

    /// For each corner of `v` (corner `i` sits between rotation entries `i`
    /// and `i + 1`), the index in `t.faces` of the face occupying it.
    pub(crate) fn corner_faces(&self, t: &Tracing, v: VertexId) -> Vec<usize> {
        let rot = &self.rotation[&v];
        let n = rot.len();
        let pos = |d: Dart| rot.iter().position(|&x| x == d).expect("dart at vertex");
        let mut out = vec![usize::MAX; n];
        for (fi, w) in t.faces.iter().enumerate() {
            let len = w.steps.len();
            for k in 0..len {
                if w.verts[k] != v {
                    continue;
                }
                let arrive = w.steps[(k + len - 1) % len].dart.opposite();
                let leave = w.steps[k];
                let corner = if leave.orientation > 0 {
                    pos(arrive)
                } else {
                    pos(leave.dart)
                };
                out[corner] = fi;
            }
        }
        out
    }
}
