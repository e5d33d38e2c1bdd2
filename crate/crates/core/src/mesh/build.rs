use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::trace::RotationIndex;
use super::{Dart, Edge, EdgeId, Sign, SurfaceMesh, VertexId};
use crate::error::MeshError;

type Key = (VertexId, VertexId);

fn key(a: VertexId, b: VertexId) -> Key {
    (a.min(b), a.max(b))
}

/// Assembles a [`SurfaceMesh`] from polygonal faces given as vertex cycles.
///
/// Rotations are read off the corners around each vertex and edge signs
/// follow from the local orientations the faces induce. Edge ids and the
/// direction of existing rotations are kept when supplied, so untouched parts
/// of a rebuilt mesh serialize identically.
pub struct MeshBuilder {
    faces: Vec<(Vec<VertexId>, bool)>,
    preset: HashMap<Key, (EdgeId, VertexId, VertexId)>,
    hints: HashMap<VertexId, Vec<VertexId>>,
    next_edge: EdgeId,
}

impl Default for MeshBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl MeshBuilder {
    pub fn new() -> Self {
        Self {
            faces: Vec::new(),
            preset: HashMap::new(),
            hints: HashMap::new(),
            next_edge: 0,
        }
    }

    /// Start from an existing mesh: its edge ids and rotation directions are
    /// used wherever the rebuilt mesh still has them.
    pub fn from_mesh(mesh: &SurfaceMesh) -> Self {
        let mut b = Self::new();
        b.inherit(mesh, &|v| v, true);
        b
    }

    /// Inherit ids/hints from `mesh` with vertices relabelled by `map`.
    /// With `keep_ids == false` the edges get fresh ids (in id order).
    pub fn inherit(&mut self, mesh: &SurfaceMesh, map: &dyn Fn(VertexId) -> VertexId, keep_ids: bool) {
        for e in mesh.edges.values() {
            let (u, v) = (map(e.u), map(e.v));
            let k = key(u, v);
            if self.preset.contains_key(&k) {
                continue;
            }
            let id = if keep_ids {
                e.id
            } else {
                let id = self.next_edge;
                self.next_edge += 1;
                id
            };
            self.next_edge = self.next_edge.max(id + 1);
            self.preset.insert(k, (id, u, v));
        }
        for &v in mesh.rotation.keys() {
            let mv = map(v);
            self.hints
                .entry(mv)
                .or_insert_with(|| mesh.neighbors(v).into_iter().map(map).collect());
        }
    }

    /// Move edge `a-b` to `c-b`, keeping its id.
    pub fn transfer_edge(&mut self, a: VertexId, b: VertexId, c: VertexId) {
        if let Some((id, u, v)) = self.preset.remove(&key(a, b)) {
            let (u, v) = if u == a { (c, v) } else { (u, c) };
            self.preset.insert(key(c, b), (id, u, v));
        }
    }

    pub fn add_face(&mut self, verts: Vec<VertexId>, hole: bool) {
        self.faces.push((verts, hole));
    }

    pub fn build(self) -> Result<SurfaceMesh, MeshError> {
        let MeshBuilder {
            faces,
            mut preset,
            hints,
            mut next_edge,
        } = self;

        // face sides per edge
        let mut sides: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, (verts, _)) in faces.iter().enumerate() {
            if verts.len() < 3 {
                return Err(MeshError::Construction(format!("face {fi} has fewer than 3 sides")));
            }
            let n = verts.len();
            for i in 0..n {
                let (a, b) = (verts[i], verts[(i + 1) % n]);
                if a == b {
                    return Err(MeshError::Construction(format!("loop at vertex {a}")));
                }
                sides.entry(key(a, b)).or_default().push((fi, i));
            }
        }
        for (k, s) in &sides {
            if s.len() != 2 {
                return Err(MeshError::Construction(format!(
                    "edge {}-{} lies on {} face sides (simplicity or manifold violation)",
                    k.0,
                    k.1,
                    s.len()
                )));
            }
        }

        // corners: at vertex v, face fi enters along `a-v` and leaves along `v-b`
        let mut corners: BTreeMap<VertexId, Vec<(usize, VertexId, VertexId)>> = BTreeMap::new();
        for (fi, (verts, _)) in faces.iter().enumerate() {
            let n = verts.len();
            for i in 0..n {
                let prev = verts[(i + n - 1) % n];
                let next = verts[(i + 1) % n];
                corners.entry(verts[i]).or_default().push((fi, prev, next));
            }
        }

        // rotation as neighbour order, and the local orientation each face
        // corner has relative to it
        let mut order: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let mut lambda: HashMap<(usize, VertexId), i8> = HashMap::new();
        for (&v, cs) in &corners {
            let mut by_nbr: HashMap<VertexId, Vec<usize>> = HashMap::new();
            for (ci, &(_, p, n)) in cs.iter().enumerate() {
                by_nbr.entry(p).or_default().push(ci);
                by_nbr.entry(n).or_default().push(ci);
            }
            let mut used = vec![false; cs.len()];
            let mut seq: Vec<VertexId> = Vec::new();
            let mut signs: Vec<(usize, i8)> = Vec::new();
            let (mut ci, mut from) = (0usize, cs[0].1);
            loop {
                used[ci] = true;
                let (fi, p, n) = cs[ci];
                let (to, s) = if p == from { (n, 1) } else { (p, -1) };
                seq.push(from);
                signs.push((fi, s));
                let cands = &by_nbr[&to];
                let next = cands.iter().copied().find(|&c| c != ci && !used[c]);
                match next {
                    Some(c) => {
                        ci = c;
                        from = to;
                    }
                    None => {
                        if to != seq[0] {
                            return Err(MeshError::Construction(format!(
                                "corners at vertex {v} do not close up"
                            )));
                        }
                        break;
                    }
                }
            }
            if used.iter().any(|u| !u) {
                return Err(MeshError::Construction(format!(
                    "vertex {v} is not a manifold point (link is not one cycle)"
                )));
            }
            let mut flip = false;
            if let Some(h) = hints.get(&v) {
                flip = reversed_against(&seq, h);
            }
            if flip {
                seq.reverse();
            }
            for (fi, s) in signs {
                lambda.insert((fi, v), if flip { -s } else { s });
            }
            order.insert(v, seq);
        }

        // edges
        let mut edges: BTreeMap<EdgeId, Edge> = BTreeMap::new();
        let mut edge_of: HashMap<Key, EdgeId> = HashMap::new();
        let mut fresh: Vec<Key> = Vec::new();
        for k in sides.keys() {
            if !preset.contains_key(k) {
                fresh.push(*k);
            }
        }
        for k in fresh {
            preset.insert(k, (next_edge, k.0, k.1));
            next_edge += 1;
        }
        for (k, s) in &sides {
            let (id, u, v) = preset[k];
            let sign_of = |&(fi, i): &(usize, usize)| {
                let verts = &faces[fi].0;
                let a = verts[i];
                let b = verts[(i + 1) % verts.len()];
                lambda[&(fi, a)] * lambda[&(fi, b)]
            };
            let s0 = sign_of(&s[0]);
            if s0 != sign_of(&s[1]) {
                return Err(MeshError::Construction(format!(
                    "inconsistent sign on edge {}-{}",
                    k.0, k.1
                )));
            }
            edges.insert(
                id,
                Edge {
                    id,
                    u,
                    v,
                    sign: if s0 > 0 { Sign::Positive } else { Sign::Negative },
                },
            );
            edge_of.insert(*k, id);
        }

        let mut rotation: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
        for (&v, seq) in &order {
            let darts = seq
                .iter()
                .map(|&w| {
                    let id = edge_of[&key(v, w)];
                    let end = if edges[&id].u == v { 0 } else { 1 };
                    Dart::new(id, end)
                })
                .collect();
            rotation.insert(v, darts);
        }
        let vertices: BTreeSet<VertexId> = order.keys().copied().collect();
        let mut mesh = SurfaceMesh::from_parts(vertices, edges.into_values(), rotation, []);

        // hole markers: the state leaving verts[0] towards verts[1]
        let idx = RotationIndex::full(&mesh);
        let tracing = idx.trace();
        let mut holes = BTreeSet::new();
        for (fi, (verts, hole)) in faces.iter().enumerate() {
            if !*hole {
                continue;
            }
            let id = edge_of[&key(verts[0], verts[1])];
            let end = if mesh.edges[&id].u == verts[0] { 0 } else { 1 };
            let face = tracing.face_of(Dart::new(id, end), lambda[&(fi, verts[0])]);
            holes.insert(tracing.faces[face].canonical_dart());
        }
        mesh.holes = holes;
        Ok(mesh)
    }
}

/// True when `seq` runs against the cyclic order `hint` on their common
/// elements (needs at least three in common to decide).
fn reversed_against(seq: &[VertexId], hint: &[VertexId]) -> bool {
    let common: BTreeSet<VertexId> = seq.iter().copied().filter(|x| hint.contains(x)).collect();
    if common.len() < 3 {
        return false;
    }
    let a: Vec<VertexId> = seq.iter().copied().filter(|x| common.contains(x)).collect();
    let b: Vec<VertexId> = hint.iter().copied().filter(|x| common.contains(x)).collect();
    let start = b.iter().position(|&x| x == a[0]).expect("common element");
    let n = b.len();
    let forward = (0..n).all(|i| a[i] == b[(start + i) % n]);
    if forward {
        return false;
    }
    (0..n).all(|i| a[i] == b[(start + n - i) % n])
}
