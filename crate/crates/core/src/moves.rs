//! Moves on embedded graphs.
//!
//! Every move rewrites the face list of a mesh and rebuilds it, so validity
//! follows from the rebuild. Untouched edges keep their ids; new vertices
//! and edges take the next free ids.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{MeshError, MoveError};
use crate::mesh::{io, Dart, EdgeId, FaceWalk, MeshBuilder, SurfaceMesh, Tracing, VertexId};

pub const LOG_FORMAT: &str = "moves/1";

/// Which of the two rotation arcs between `v-a` and `v-b` moves to the new
/// vertex in a split: `Forward` runs from `a` to `b` in rotation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Forward,
    Backward,
}

/// How two holes are matched in a join.
///
/// The walks are read from `first_start` / `second_start` (default: their
/// least vertices). Untwisted gluing pairs the walks in opposite traced
/// directions when that is orientation-compatible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_start: Option<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_start: Option<VertexId>,
    #[serde(default)]
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum MoveRecord {
    ZeroExtension {
        face: Dart,
        anchors: [VertexId; 3],
    },
    VertexSplit {
        vertex: VertexId,
        a: VertexId,
        b: VertexId,
        side: Side,
    },
    CarveHole {
        face: Dart,
    },
    Collar {
        hole: Dart,
    },
    Barycentric {
        edge: EdgeId,
    },
    Subdivide {
        edge: EdgeId,
    },
    /// `other` is an `srs-mesh/1` document
    Join {
        hole: Dart,
        other: serde_json::Value,
        other_hole: Dart,
        alignment: Alignment,
    },
    SelfGlue {
        first: Dart,
        second: Dart,
        alignment: Alignment,
    },
    Excise {
        boundary: Vec<VertexId>,
        interior: Vec<VertexId>,
    },
    /// mark an existing face as a hole, no disjointness requirement
    MarkHole {
        face: Dart,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MoveLog {
    pub format: String,
    pub moves: Vec<MoveRecord>,
}

impl MoveLog {
    pub fn new(moves: Vec<MoveRecord>) -> Self {
        Self {
            format: LOG_FORMAT.to_string(),
            moves,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, crate::FormatError> {
        let log: MoveLog = serde_json::from_str(text)?;
        if log.format != LOG_FORMAT {
            return Err(crate::FormatError::UnknownFormat(log.format));
        }
        Ok(log)
    }
}

pub fn apply(mesh: &SurfaceMesh, record: &MoveRecord) -> Result<SurfaceMesh, MoveError> {
    match record {
        MoveRecord::ZeroExtension { face, anchors } => zero_extension(mesh, *face, *anchors),
        MoveRecord::VertexSplit { vertex, a, b, side } => vertex_split(mesh, *vertex, *a, *b, *side),
        MoveRecord::CarveHole { face } => carve_hole(mesh, *face),
        MoveRecord::Collar { hole } => collar(mesh, *hole).map(|(m, _)| m),
        MoveRecord::Barycentric { edge } => barycentric_local(mesh, *edge),
        MoveRecord::Subdivide { edge } => subdivide_edge(mesh, *edge).map(|(m, _)| m),
        MoveRecord::Join {
            hole,
            other,
            other_hole,
            alignment,
        } => {
            let (other, _) = io::from_value(other).map_err(|e| MoveError::Parameter(e.to_string()))?;
            join(mesh, *hole, &other, *other_hole, *alignment)
        }
        MoveRecord::SelfGlue {
            first,
            second,
            alignment,
        } => glue_holes(mesh, *first, *second, *alignment),
        MoveRecord::Excise { boundary, interior } => {
            excise_region(mesh, boundary, &interior.iter().copied().collect())
        }
        MoveRecord::MarkHole { face } => mark_hole(mesh, *face),
    }
}

pub fn replay(initial: &SurfaceMesh, moves: &[MoveRecord]) -> Result<SurfaceMesh, MoveError> {
    moves.iter().try_fold(initial.clone(), |m, r| apply(&m, r))
}

/// A mesh together with the moves that produced it from some start.
#[derive(Clone, Debug)]
pub struct Logged {
    pub mesh: SurfaceMesh,
    pub log: Vec<MoveRecord>,
}

impl Logged {
    pub fn new(mesh: SurfaceMesh) -> Self {
        Self { mesh, log: Vec::new() }
    }

    pub fn apply(&mut self, record: MoveRecord) -> Result<(), MoveError> {
        self.mesh = apply(&self.mesh, &record)?;
        self.log.push(record);
        Ok(())
    }
}

fn finish(builder: MeshBuilder) -> Result<SurfaceMesh, MoveError> {
    let mesh = builder.build()?;
    mesh.validate().map_err(MeshError::from)?;
    Ok(mesh)
}

fn lookup_face(mesh: &SurfaceMesh, t: &Tracing, dart: Dart) -> Result<usize, MoveError> {
    if mesh.edge(dart.edge).is_none() || dart.end > 1 {
        return Err(MoveError::NoSuchFace(dart));
    }
    Ok(t.face_of(dart, 1))
}

fn lookup_hole(mesh: &SurfaceMesh, t: &Tracing, dart: Dart) -> Result<usize, MoveError> {
    let f = lookup_face(mesh, t, dart)?;
    if !mesh.is_hole(&t.faces[f]) {
        return Err(MoveError::NotAHole(dart));
    }
    Ok(f)
}

/// Add a vertex joined to three vertices of one face.
///
/// In a triangle this gives three triangles. In a hole each of the three
/// arcs between anchors closes up with the new vertex into a triangle (arc of
/// one edge) or a new hole (longer arcs).
pub fn zero_extension(mesh: &SurfaceMesh, face: Dart, anchors: [VertexId; 3]) -> Result<SurfaceMesh, MoveError> {
    zero_extension_keeping(mesh, face, anchors, &[]).map(|(m, _)| m)
}

/// As [`zero_extension`]; `keep` names endpoints of arcs that must stay
/// holes even when they are single edges. Also returns the new vertex.
pub(crate) fn zero_extension_keeping(
    mesh: &SurfaceMesh,
    face: Dart,
    anchors: [VertexId; 3],
    keep: &[(VertexId, VertexId)],
) -> Result<(SurfaceMesh, VertexId), MoveError> {
    let [x, y, z] = anchors;
    if x == y || y == z || x == z {
        return Err(MoveError::AnchorsNotDistinct);
    }
    let t = mesh.tracing();
    let fi = lookup_face(mesh, &t, face)?;
    let mut cycles = mesh.cycles_of(&t);
    let (walk, was_hole) = cycles.swap_remove(fi);
    let mut positions = Vec::with_capacity(3);
    for a in anchors {
        let p = walk.iter().position(|&w| w == a).ok_or(MoveError::AnchorNotOnFace(a))?;
        positions.push(p);
    }
    positions.sort_unstable();
    let n = walk.len();
    let u = mesh.next_vertex_id();
    let mut builder = MeshBuilder::from_mesh(mesh);
    for (&p, &q) in positions.iter().zip(positions.iter().cycle().skip(1)) {
        let len = (q + n - p) % n;
        let len = if len == 0 { n } else { len };
        let mut arc: Vec<VertexId> = (0..=len).map(|k| walk[(p + k) % n]).collect();
        let ends = (arc[0], arc[len]);
        let kept = keep.iter().any(|&(a, b)| (a, b) == ends || (b, a) == ends);
        let hole = was_hole && (len >= 2 || kept);
        arc.push(u);
        builder.add_face(arc, hole);
    }
    for (verts, hole) in cycles {
        builder.add_face(verts, hole);
    }
    Ok((finish(builder)?, u))
}

/// Split `v` into `v` and a new vertex `v'` joined to `v`, `a`, `b` and to the
/// neighbours of `v` strictly inside the chosen arc from `a` to `b`.
pub fn vertex_split(mesh: &SurfaceMesh, v: VertexId, a: VertexId, b: VertexId, side: Side) -> Result<SurfaceMesh, MoveError> {
    vertex_split_with_id(mesh, v, a, b, side).map(|(m, _)| m)
}

fn vertex_split_with_id(
    mesh: &SurfaceMesh,
    v: VertexId,
    a: VertexId,
    b: VertexId,
    side: Side,
) -> Result<(SurfaceMesh, VertexId), MoveError> {
    if mesh.rotation(v).is_none() {
        return Err(MoveError::NoSuchVertex(v));
    }
    if a == b {
        return Err(MoveError::AnchorsNotDistinct);
    }
    let nbrs = mesh.neighbors(v);
    let n = nbrs.len();
    let ia = nbrs.iter().position(|&x| x == a).ok_or(MoveError::NotAdjacent { v, a })?;
    let ib = nbrs.iter().position(|&x| x == b).ok_or(MoveError::NotAdjacent { v, a: b })?;
    let (from, to) = match side {
        Side::Forward => (ia, ib),
        Side::Backward => (ib, ia),
    };
    let span = (to + n - from) % n;
    let corners: Vec<usize> = (0..span).map(|k| (from + k) % n).collect();
    let moved: Vec<VertexId> = (1..span).map(|k| nbrs[(from + k) % n]).collect();

    let t = mesh.tracing();
    let at_corner = mesh.corner_faces(&t, v);
    let arc_faces: BTreeSet<usize> = corners.iter().map(|&c| at_corner[c]).collect();
    let split = mesh.next_vertex_id();
    let mut builder = MeshBuilder::from_mesh(mesh);
    for x in &moved {
        builder.transfer_edge(*x, v, split);
    }
    for (fi, (mut verts, hole)) in mesh.cycles_of(&t).into_iter().enumerate() {
        if arc_faces.contains(&fi) {
            for w in verts.iter_mut() {
                if *w == v {
                    *w = split;
                }
            }
        }
        builder.add_face(verts, hole);
    }
    builder.add_face(vec![v, a, split], false);
    builder.add_face(vec![v, split, b], false);
    Ok((finish(builder)?, split))
}

/// Mark a triangle as a hole; it may not touch an existing hole.
pub fn carve_hole(mesh: &SurfaceMesh, face: Dart) -> Result<SurfaceMesh, MoveError> {
    let t = mesh.tracing();
    let fi = lookup_face(mesh, &t, face)?;
    let walk = &t.faces[fi];
    if mesh.is_hole(walk) {
        return Err(MoveError::AlreadyHole(face));
    }
    if walk.len() != 3 {
        return Err(MoveError::NotATriangle);
    }
    let on_holes: BTreeSet<VertexId> = mesh
        .hole_markers()
        .iter()
        .flat_map(|&h| t.faces[t.face_of(h, 1)].verts.clone())
        .collect();
    if let Some(&v) = walk.verts.iter().find(|v| on_holes.contains(v)) {
        return Err(MoveError::TouchesHole(v));
    }
    Ok(mesh.with_hole_marked(face))
}

/// Mark any non-hole face as a hole without disjointness checks.
pub fn mark_hole(mesh: &SurfaceMesh, face: Dart) -> Result<SurfaceMesh, MoveError> {
    let t = mesh.tracing();
    let fi = lookup_face(mesh, &t, face)?;
    if mesh.is_hole(&t.faces[fi]) {
        return Err(MoveError::AlreadyHole(face));
    }
    let out = mesh.with_hole_marked(face);
    out.validate().map_err(MeshError::from)?;
    Ok(out)
}

/// Surround a hole with a ring of new vertices.
///
/// Runs `m` 0-extensions inside the hole `w_1..w_m`; the new hole
/// `u_1..u_m` is vertex-disjoint from the old one. Returns the mesh and the
/// new hole's marker.
pub fn collar(mesh: &SurfaceMesh, hole: Dart) -> Result<(SurfaceMesh, Dart), MoveError> {
    let t = mesh.tracing();
    let fi = lookup_hole(mesh, &t, hole)?;
    let w = t.faces[fi].verts.clone();
    if !t.faces[fi].is_cycle() {
        return Err(MoveError::HoleNotCycle);
    }
    let m = w.len();
    let wi = |i: usize| w[(i - 1) % m];
    let mut cur = mesh.clone();
    let mut cur_hole = hole;
    let mut ring: Vec<VertexId> = Vec::with_capacity(m);
    for i in 1..=m {
        let (anchors, keep) = if i == 1 {
            ([wi(1), wi(2), wi(3)], (wi(3), wi(1)))
        } else if i < m {
            let prev = ring[i - 2];
            ([wi(i + 1), wi(i + 2), prev], (wi(i + 2), prev))
        } else {
            let prev = ring[m - 2];
            ([wi(1), prev, ring[0]], (ring[0], prev))
        };
        let (next, u) = zero_extension_keeping(&cur, cur_hole, anchors, &[keep])?;
        ring.push(u);
        cur_hole = hole_through(&next, u).ok_or_else(|| MeshError::Internal("collar lost its hole".into()))?;
        cur = next;
    }
    Ok((cur, cur_hole))
}

/// Marker of the hole whose walk passes through `v`, if any.
pub fn hole_through(mesh: &SurfaceMesh, v: VertexId) -> Option<Dart> {
    mesh.hole_walks()
        .into_iter()
        .find(|w| w.verts.contains(&v))
        .map(|w| w.canonical_dart())
}

/// Replace an interior edge `uv` by a midpoint `m` and one barycentre in each
/// incident triangle: 3 new vertices, net 9 new edges.
pub fn barycentric_local(mesh: &SurfaceMesh, edge: EdgeId) -> Result<SurfaceMesh, MoveError> {
    if mesh.edge(edge).is_none() {
        return Err(MoveError::NoSuchEdge(edge));
    }
    let t = mesh.tracing();
    let d = Dart::new(edge, 0);
    let sides = [t.face_of(d, 1), t.face_of(d, -1)];
    if sides[0] == sides[1] || sides.iter().any(|&f| mesh.is_hole(&t.faces[f])) {
        return Err(MoveError::EdgeNotInterior(edge));
    }
    let e = *mesh.edge(edge).expect("checked");
    let mid = mesh.next_vertex_id();
    let mut builder = MeshBuilder::from_mesh(mesh);
    for (fi, (verts, hole)) in mesh.cycles_of(&t).into_iter().enumerate() {
        let Some(k) = sides.iter().position(|&f| f == fi) else {
            builder.add_face(verts, hole);
            continue;
        };
        let bary = mid + 1 + k as VertexId;
        let start = (0..3)
            .find(|&i| {
                let (p, q) = (verts[i], verts[(i + 1) % 3]);
                (p, q) == (e.u, e.v) || (p, q) == (e.v, e.u)
            })
            .expect("edge on its face");
        let (x, y, z) = (verts[start], verts[(start + 1) % 3], verts[(start + 2) % 3]);
        builder.add_face(vec![x, mid, bary], false);
        builder.add_face(vec![mid, y, bary], false);
        builder.add_face(vec![y, z, bary], false);
        builder.add_face(vec![z, x, bary], false);
    }
    finish(builder)
}

/// Put a new vertex on an edge whose two sides are both holes; each of
/// those holes gets one longer. Returns the mesh and the new vertex.
pub fn subdivide_edge(mesh: &SurfaceMesh, edge: EdgeId) -> Result<(SurfaceMesh, VertexId), MoveError> {
    let e = *mesh.edge(edge).ok_or(MoveError::NoSuchEdge(edge))?;
    let t = mesh.tracing();
    let d = Dart::new(edge, 0);
    let sides = [t.face_of(d, 1), t.face_of(d, -1)];
    if sides[0] == sides[1] || sides.iter().any(|&f| !mesh.is_hole(&t.faces[f])) {
        return Err(MoveError::Parameter(format!("edge {edge} is not shared by two holes")));
    }
    let mid = mesh.next_vertex_id();
    let mut builder = MeshBuilder::from_mesh(mesh);
    for (fi, (mut verts, hole)) in mesh.cycles_of(&t).into_iter().enumerate() {
        if sides.contains(&fi) {
            let n = verts.len();
            let i = (0..n)
                .find(|&i| {
                    let (p, q) = (verts[i], verts[(i + 1) % n]);
                    (p, q) == (e.u, e.v) || (p, q) == (e.v, e.u)
                })
                .expect("edge on its face");
            verts.insert(i + 1, mid);
        }
        builder.add_face(verts, hole);
    }
    Ok((finish(builder)?, mid))
}

/// Global traversal sense of a hole walk under an orientation switching.
fn walk_sense(mesh: &SurfaceMesh, switching: &Option<std::collections::BTreeMap<VertexId, i8>>, w: &FaceWalk) -> Option<i8> {
    let s = switching.as_ref()?;
    let first = w.steps[0];
    Some(first.orientation * s[&mesh.tail(first.dart)])
}

/// Vertex pairs `(first, second)` matched by an alignment.
fn matching(
    first: &[VertexId],
    second: &[VertexId],
    alignment: Alignment,
    opposite: bool,
) -> Result<Vec<(VertexId, VertexId)>, MoveError> {
    if first.len() != second.len() {
        return Err(MoveError::LengthMismatch(first.len(), second.len()));
    }
    let m = first.len();
    let fs = alignment.first_start.unwrap_or_else(|| *first.iter().min().expect("non-empty"));
    let ss = alignment.second_start.unwrap_or_else(|| *second.iter().min().expect("non-empty"));
    let pf = first.iter().position(|&x| x == fs).ok_or(MoveError::BadAlignment(fs))?;
    let ps = second.iter().position(|&x| x == ss).ok_or(MoveError::BadAlignment(ss))?;
    let reverse = opposite != alignment.twisted;
    Ok((0..m)
        .map(|i| {
            let j = if reverse { (ps + m - i) % m } else { (ps + i) % m };
            (first[(pf + i) % m], second[j])
        })
        .collect())
}

fn simplicity(err: MoveError) -> MoveError {
    match err {
        MoveError::Mesh(MeshError::Construction(msg)) => MoveError::Simplicity(msg),
        other => other,
    }
}

/// Glue `other` onto `mesh` by identifying hole `hole` with `other_hole`.
///
/// The second mesh is relabelled above the first one's vertex ids and its
/// edges get fresh ids. Both hole markers disappear and
/// `f = f(mesh) + f(other) - 2m`.
pub fn join(
    mesh: &SurfaceMesh,
    hole: Dart,
    other: &SurfaceMesh,
    other_hole: Dart,
    alignment: Alignment,
) -> Result<SurfaceMesh, MoveError> {
    let (ta, tb) = (mesh.tracing(), other.tracing());
    let fa = lookup_hole(mesh, &ta, hole)?;
    let fb = lookup_hole(other, &tb, other_hole)?;
    let (wa, wb) = (&ta.faces[fa], &tb.faces[fb]);
    let sense_a = walk_sense(mesh, &mesh.orientation_switching(), wa);
    let sense_b = walk_sense(other, &other.orientation_switching(), wb);
    let opposite = match (sense_a, sense_b) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let pairs = matching(&wa.verts, &wb.verts, alignment, opposite)?;
    let offset = mesh.next_vertex_id();
    let ident: HashMap<VertexId, VertexId> = pairs.iter().map(|&(x, y)| (y, x)).collect();
    let map_b = |v: VertexId| ident.get(&v).copied().unwrap_or(v + offset);

    let mut builder = MeshBuilder::from_mesh(mesh);
    builder.inherit(other, &map_b, false);
    for (fi, (verts, hole)) in mesh.cycles_of(&ta).into_iter().enumerate() {
        if fi != fa {
            builder.add_face(verts, hole);
        }
    }
    for (fi, (verts, hole)) in other.cycles_of(&tb).into_iter().enumerate() {
        if fi != fb {
            builder.add_face(verts.into_iter().map(map_b).collect(), hole);
        }
    }
    finish(builder).map_err(simplicity)
}

/// Identify two holes of the same mesh. The vertices of `second` disappear.
pub fn glue_holes(mesh: &SurfaceMesh, first: Dart, second: Dart, alignment: Alignment) -> Result<SurfaceMesh, MoveError> {
    let t = mesh.tracing();
    let fa = lookup_hole(mesh, &t, first)?;
    let fb = lookup_hole(mesh, &t, second)?;
    if fa == fb {
        return Err(MoveError::Parameter("cannot glue a hole to itself".into()));
    }
    let (wa, wb) = (&t.faces[fa], &t.faces[fb]);
    if wa.verts.iter().any(|v| wb.verts.contains(v)) {
        return Err(MoveError::Simplicity("holes share a vertex".into()));
    }
    let switching = mesh.orientation_switching();
    let opposite = match (walk_sense(mesh, &switching, wa), walk_sense(mesh, &switching, wb)) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let pairs = matching(&wa.verts, &wb.verts, alignment, opposite)?;
    let ident: HashMap<VertexId, VertexId> = pairs.iter().map(|&(x, y)| (y, x)).collect();
    let map = |v: VertexId| ident.get(&v).copied().unwrap_or(v);
    let mut builder = MeshBuilder::new();
    builder.inherit(mesh, &map, true);
    for (fi, (verts, hole)) in mesh.cycles_of(&t).into_iter().enumerate() {
        if fi != fa && fi != fb {
            builder.add_face(verts.into_iter().map(map).collect(), hole);
        }
    }
    finish(builder).map_err(simplicity)
}

/// Remove a disc-like region: the `interior` vertices, their edges and the
/// faces around them. The cycle `boundary` becomes a hole.
pub fn excise_region(
    mesh: &SurfaceMesh,
    boundary: &[VertexId],
    interior: &BTreeSet<VertexId>,
) -> Result<SurfaceMesh, MoveError> {
    if boundary.len() < 3 {
        return Err(MoveError::RegionBoundary);
    }
    for &v in boundary.iter().chain(interior) {
        if mesh.rotation(v).is_none() {
            return Err(MoveError::NoSuchVertex(v));
        }
    }
    let ring: BTreeSet<VertexId> = boundary.iter().copied().collect();
    if ring.len() != boundary.len() || ring.iter().any(|v| interior.contains(v)) || interior.is_empty() {
        return Err(MoveError::RegionBoundary);
    }
    let key = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    let t = mesh.tracing();
    let mut rim: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut kept = Vec::new();
    for (verts, hole) in mesh.cycles_of(&t) {
        if !verts.iter().any(|v| interior.contains(v)) {
            kept.push((verts, hole));
            continue;
        }
        if hole {
            return Err(MoveError::RegionBoundary);
        }
        let n = verts.len();
        for i in 0..n {
            let (p, q) = (verts[i], verts[(i + 1) % n]);
            if !interior.contains(&p) && !interior.contains(&q) {
                *rim.entry(key(p, q)).or_default() += 1;
            }
        }
    }
    let n = boundary.len();
    let expected: BTreeSet<(VertexId, VertexId)> =
        (0..n).map(|i| key(boundary[i], boundary[(i + 1) % n])).collect();
    let found: BTreeSet<(VertexId, VertexId)> = rim.keys().copied().collect();
    if found != expected || rim.values().any(|&c| c != 1) {
        return Err(MoveError::RegionBoundary);
    }
    let mut builder = MeshBuilder::from_mesh(mesh);
    for (verts, hole) in kept {
        builder.add_face(verts, hole);
    }
    builder.add_face(boundary.to_vec(), true);
    let out = finish(builder)?;
    if out.vertex_count() + interior.len() != mesh.vertex_count() {
        return Err(MoveError::RegionBoundary);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity;

    pub(crate) fn k3_disc() -> SurfaceMesh {
        let mut b = MeshBuilder::new();
        b.add_face(vec![0, 1, 2], false);
        b.add_face(vec![0, 1, 2], true);
        b.build().unwrap()
    }

    fn octahedron() -> SurfaceMesh {
        let mut b = MeshBuilder::new();
        let ring = [1, 2, 3, 4];
        for i in 0..4 {
            let (p, q) = (ring[i], ring[(i + 1) % 4]);
            b.add_face(vec![0, p, q], false);
            b.add_face(vec![5, q, p], false);
        }
        b.build().unwrap()
    }

    fn tight(m: &SurfaceMesh) -> bool {
        sparsity::check(&m.graph()).is_tight()
    }

    #[test]
    fn zero_extension_in_triangle() {
        let disc = k3_disc();
        let tri = disc.faces().into_iter().find(|w| !disc.is_hole(w)).unwrap();
        let out = zero_extension(&disc, tri.canonical_dart(), [0, 1, 2]).unwrap();
        let inv = out.invariants().unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.triangles, inv.hole_lengths.clone()), (4, 6, 3, vec![3]));
        assert_eq!(inv.maxwell, 6);
    }

    #[test]
    fn zero_extension_splits_a_hole() {
        // an 8-cycle with both sides holes, anchors cutting arcs 1, 3, 4
        let mut b = MeshBuilder::new();
        let cyc: Vec<VertexId> = (0..8).collect();
        b.add_face(cyc.clone(), true);
        b.add_face(cyc, true);
        let m = b.build().unwrap();
        let h = *m.hole_markers().iter().next().unwrap();
        let out = zero_extension(&m, h, [0, 1, 4]).unwrap();
        assert_eq!(out.hole_lengths(), vec![5, 6, 8]);
        assert_eq!(out.maxwell_count(), m.maxwell_count());
    }

    #[test]
    fn anchors_are_checked() {
        let disc = k3_disc();
        let h = *disc.hole_markers().iter().next().unwrap();
        assert!(matches!(zero_extension(&disc, h, [0, 0, 1]), Err(MoveError::AnchorsNotDistinct)));
        assert!(matches!(zero_extension(&disc, h, [0, 1, 7]), Err(MoveError::AnchorNotOnFace(7))));
    }

    #[test]
    fn collar_of_k3_disc_is_octahedral_annulus() {
        let disc = k3_disc();
        let h = *disc.hole_markers().iter().next().unwrap();
        let (out, new_hole) = collar(&disc, h).unwrap();
        let inv = out.invariants().unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.maxwell), (6, 12, 6));
        let walk = out.face_walk(new_hole).unwrap();
        let verts: BTreeSet<VertexId> = walk.vertices().into_iter().collect();
        assert_eq!(verts, BTreeSet::from([3, 4, 5]));
        assert!(tight(&out));
    }

    #[test]
    fn split_on_octahedron() {
        let oct = octahedron();
        let out = vertex_split(&oct, 0, 1, 3, Side::Forward).unwrap();
        let inv = out.invariants().unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.maxwell), (7, 15, 6));
        assert!(tight(&out));
        assert!(matches!(vertex_split(&oct, 0, 5, 1, Side::Forward), Err(MoveError::NotAdjacent { .. })));
    }

    #[test]
    fn barycentric_on_octahedron() {
        let oct = octahedron();
        let out = barycentric_local(&oct, 0).unwrap();
        let inv = out.invariants().unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.triangles, inv.maxwell), (9, 21, 14, 6));
        assert!(tight(&out));
    }

    #[test]
    fn barycentric_refuses_hole_edges() {
        let disc = k3_disc();
        assert!(matches!(barycentric_local(&disc, 0), Err(MoveError::EdgeNotInterior(0))));
    }

    #[test]
    fn carve_refuses_touching_hole() {
        let disc = k3_disc();
        let tri = disc.faces().into_iter().find(|w| !disc.is_hole(w)).unwrap();
        assert!(matches!(carve_hole(&disc, tri.canonical_dart()), Err(MoveError::TouchesHole(_))));
    }

    #[test]
    fn two_discs_make_a_sphere() {
        let disc = k3_disc();
        let h = *disc.hole_markers().iter().next().unwrap();
        let out = join(&disc, h, &disc, h, Alignment::default()).unwrap();
        let inv = out.invariants().unwrap();
        assert_eq!((inv.vertices, inv.edges, inv.triangles, inv.holes), (3, 3, 2, 0));
        assert!(inv.orientable);
        assert_eq!(inv.maxwell, 6);
    }

    #[test]
    fn excise_single_vertex() {
        let oct = octahedron();
        let ring = oct.neighbors(0);
        let out = excise_region(&oct, &ring, &BTreeSet::from([0])).unwrap();
        assert_eq!(out.hole_lengths(), vec![4]);
        assert_eq!(out.maxwell_count(), oct.maxwell_count() - 3 + 4);
        assert!(matches!(
            excise_region(&oct, &[1, 2, 3], &BTreeSet::from([0])),
            Err(MoveError::RegionBoundary)
        ));
    }

    #[test]
    fn log_round_trip() {
        let disc = k3_disc();
        let h = *disc.hole_markers().iter().next().unwrap();
        let log = MoveLog::new(vec![MoveRecord::Collar { hole: h }]);
        let back = MoveLog::from_json(&log.to_json()).unwrap();
        assert_eq!(back, log);
        let a = replay(&disc, &back.moves).unwrap();
        let b = collar(&disc, h).unwrap().0;
        assert_eq!(io::to_json(&a.canonicalized()), io::to_json(&b.canonicalized()));
    }
}
