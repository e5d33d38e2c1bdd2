//! Building blocks: the disc, discus graphs, the projective-plane and torus
//! seeds, pants and two-holed pieces with prescribed boundary lengths.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MoveError;
use crate::graph::Graph;
use crate::mesh::io::PieceMeta;
use crate::mesh::{Dart, MeshBuilder, ReducedGenus, SurfaceMesh, VertexId};
use crate::moves::{self, hole_through};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Surface {
    #[serde(rename = "S0")]
    Sphere,
    #[serde(rename = "S1")]
    Torus,
    #[serde(rename = "P")]
    Projective,
}

impl Surface {
    pub fn reduced_genus(self) -> ReducedGenus {
        match self {
            Surface::Sphere => ReducedGenus::SPHERE,
            Surface::Torus => ReducedGenus::TORUS,
            Surface::Projective => ReducedGenus::PROJECTIVE,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Surface::Sphere => "S0",
            Surface::Torus => "S1",
            Surface::Projective => "P",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Surface {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "S0" => Ok(Surface::Sphere),
            "S1" => Ok(Surface::Torus),
            "P" => Ok(Surface::Projective),
            other => Err(format!("unknown surface label {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceKind {
    pub surface: Surface,
    pub holes: u8,
}

impl PieceKind {
    pub fn reduced_genus(self) -> ReducedGenus {
        self.surface.reduced_genus()
    }
}

/// A bordered triangulation with a designated entrance hole.
#[derive(Clone, Debug)]
pub struct Piece {
    pub mesh: SurfaceMesh,
    pub surface: Surface,
    pub entrance: Dart,
    pub exits: Vec<Dart>,
}

impl Piece {
    /// Name holes by a vertex lying on each (markers go stale across moves).
    fn from_holes(mesh: SurfaceMesh, surface: Surface, entrance_vertex: VertexId, exit_vertices: &[VertexId]) -> Self {
        let exits = exit_vertices
            .iter()
            .map(|&v| hole_through(&mesh, v).expect("exit hole"))
            .collect();
        let entrance = hole_through(&mesh, entrance_vertex).expect("entrance hole");
        Piece {
            mesh,
            surface,
            entrance,
            exits,
        }
    }

    pub fn hole_length(&self, hole: Dart) -> usize {
        self.mesh.face_walk(hole).map_or(0, |w| w.len())
    }

    pub fn entrance_length(&self) -> usize {
        self.hole_length(self.entrance)
    }

    pub fn exit_lengths(&self) -> Vec<usize> {
        self.exits.iter().map(|&h| self.hole_length(h)).collect()
    }

    pub fn meta(&self) -> PieceMeta {
        PieceMeta {
            surface: self.surface.label().to_string(),
            entrance: self.entrance_length(),
            exits: self.exit_lengths(),
        }
    }
}

fn from_faces(faces: &[&[VertexId]], holes: &[&[VertexId]]) -> SurfaceMesh {
    let mut b = MeshBuilder::new();
    for f in faces {
        b.add_face(f.to_vec(), false);
    }
    for h in holes {
        b.add_face(h.to_vec(), true);
    }
    b.build().expect("fixed seed faces form a mesh")
}

fn only_hole(mesh: &SurfaceMesh) -> Dart {
    *mesh.hole_markers().iter().next().expect("mesh has a hole")
}

/// `K3` with one triangle face and one hole of length 3.
pub fn disc() -> SurfaceMesh {
    from_faces(&[&[0, 1, 2]], &[&[0, 1, 2]])
}

/// Discus graph `D_r`: an `r`-cycle on `0..r` plus apexes `r` and `r+1`
/// joined to every cycle vertex.
pub fn discus(r: usize) -> Result<Graph, MoveError> {
    if r < 3 {
        return Err(MoveError::Parameter(format!("discus needs r >= 3, got {r}")));
    }
    let n = r as VertexId;
    let mut edges: Vec<(VertexId, VertexId)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        edges.push((i, n));
        edges.push((i, n + 1));
    }
    Ok(Graph::new(0..n + 2, edges))
}

/// The discus as a triangulated sphere (a bipyramid).
pub fn discus_mesh(r: usize) -> Result<SurfaceMesh, MoveError> {
    discus(r)?;
    let n = r as VertexId;
    let mut b = MeshBuilder::new();
    for i in 0..n {
        let j = (i + 1) % n;
        b.add_face(vec![n, i, j], false);
        b.add_face(vec![n + 1, j, i], false);
    }
    Ok(b.build()?)
}

pub fn octahedron() -> SurfaceMesh {
    discus_mesh(4).expect("r = 4")
}

/// Two copies of `K5` minus an edge sharing the two vertices `0` and `1`
/// (the missing edges are `01` in both).
pub fn double_banana() -> Graph {
    let mut edges = Vec::new();
    for side in [[2, 3, 4], [5, 6, 7]] {
        for (i, &a) in side.iter().enumerate() {
            edges.push((0, a));
            edges.push((1, a));
            for &b in &side[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    Graph::new(0..8, edges)
}

/// Six-vertex projective plane minus the star of one triangle: `K6` minus a
/// triangle, with a hexagonal hole.
pub fn projective_core() -> SurfaceMesh {
    from_faces(
        &[&[1, 4, 5], &[1, 5, 6], &[3, 4, 6], &[4, 5, 2], &[5, 6, 3], &[6, 2, 4]],
        &[&[1, 6, 2, 5, 3, 4]],
    )
}

/// Nine-vertex torus minus a disc of seven triangles, hole length 9.
pub fn torus_core() -> SurfaceMesh {
    let faces: Vec<&[VertexId]> = TORUS_CORE_FACES.iter().map(|f| f.as_slice()).collect();
    from_faces(&faces, &[&TORUS_CORE_HOLE])
}

// Vertex `3i + j` is grid point `(i, j)` of the 3x3 torus grid triangulated
// by the diagonals `(i, j)-(i+1, j+1)`.
const TORUS_CORE_FACES: [[VertexId; 3]; 11] = [
    [1, 4, 5],
    [1, 2, 5],
    [3, 6, 7],
    [4, 5, 8],
    [5, 8, 6],
    [5, 3, 6],
    [6, 7, 1],
    [7, 1, 2],
    [7, 8, 2],
    [8, 2, 0],
    [8, 6, 0],
];
const TORUS_CORE_HOLE: [VertexId; 9] = [3, 7, 8, 4, 1, 6, 0, 2, 5];

/// Projective plane minus a disc, hole length 6, with a triangle disjoint
/// from the hole.
pub fn projective_seed() -> SurfaceMesh {
    let core = projective_core();
    moves::collar(&core, only_hole(&core)).expect("collar of a cycle hole").0
}

/// Torus minus a disc, hole length 9, with a triangle disjoint from the hole.
pub fn torus_seed() -> SurfaceMesh {
    let core = torus_core();
    moves::collar(&core, only_hole(&core)).expect("collar of a cycle hole").0
}

/// One-holed seed for a surface.
pub fn seed(surface: Surface) -> SurfaceMesh {
    match surface {
        Surface::Sphere => disc(),
        Surface::Torus => torus_seed(),
        Surface::Projective => projective_seed(),
    }
}

/// A cycle of length `n` on `0..n` whose two sides are both holes.
fn double_hole_cycle(n: usize) -> SurfaceMesh {
    let cycle: Vec<VertexId> = (0..n as VertexId).collect();
    let mut b = MeshBuilder::new();
    b.add_face(cycle.clone(), true);
    b.add_face(cycle, true);
    b.build().expect("a cycle with two holes")
}

/// Sphere minus three discs with disjoint boundaries of lengths
/// `(lb + lc - 3, lb, lc)`; the first is the entrance.
pub fn sphere_pants(lb: usize, lc: usize) -> Result<Piece, MoveError> {
    if lb < 3 || lc < 3 {
        return Err(MoveError::Parameter(format!("pants exits must be at least 3, got ({lb}, {lc})")));
    }
    let d = lb + lc - 3;
    let ring = double_hole_cycle(d);
    let markers: Vec<Dart> = ring.hole_markers().iter().copied().collect();
    // arcs 0→1, 1→(lb-1), (lb-1)→0 of lengths 1, lb-2, lc-2
    let (x, y, z) = (0, 1, (lb - 1) as VertexId);
    let keep = [(y, z), (z, x)];
    let (mesh, apex) = moves::zero_extension_keeping(&ring, markers[1], [x, y, z], &keep)?;
    let hole_b = hole_containing(&mesh, &[apex, y, z]);
    let (mesh, exit_b) = moves::collar(&mesh, hole_b)?;
    let exit_b = mesh.tail(exit_b);
    let hole_c = hole_containing(&mesh, &[apex, z, x]);
    let (mesh, exit_c) = moves::collar(&mesh, hole_c)?;
    let exit_c = mesh.tail(exit_c);
    Ok(Piece::from_holes(mesh, Surface::Sphere, x, &[exit_b, exit_c]))
}

fn hole_containing(mesh: &SurfaceMesh, verts: &[VertexId]) -> Dart {
    mesh.hole_walks()
        .into_iter()
        .find(|w| verts.iter().all(|v| w.verts.contains(v)))
        .expect("hole through the given vertices")
        .canonical_dart()
}

/// Surface minus two discs with disjoint boundaries of lengths
/// `(entrance, entrance + 6 g_r)`.
///
/// The seed's hole becomes the exit; a triangle along it is opened as the
/// entrance, their common edge is subdivided `entrance - 3` times and the
/// exit is collared to separate the two boundaries.
pub fn piece(surface: Surface, entrance: usize) -> Result<Piece, MoveError> {
    if entrance < 3 {
        return Err(MoveError::Parameter(format!("entrance length must be at least 3, got {entrance}")));
    }
    if surface == Surface::Sphere {
        let ring = double_hole_cycle(entrance);
        let markers: Vec<Dart> = ring.hole_markers().iter().copied().collect();
        let (mesh, exit) = moves::collar(&ring, markers[1])?;
        let exit_vertex = mesh.tail(exit);
        return Ok(Piece::from_holes(mesh, surface, 0, &[exit_vertex]));
    }
    let base = seed(surface);
    let exit = only_hole(&base);
    let t = base.face_walk(exit).expect("seed hole");
    // the triangle on the other side of the hole's first edge
    let edge_dart = t.steps()[0].dart;
    let tri = base
        .faces()
        .into_iter()
        .find(|w| !base.is_hole(w) && w.steps().iter().any(|s| s.dart.edge == edge_dart.edge))
        .expect("triangle along the hole");
    let mut mesh = moves::mark_hole(&base, tri.canonical_dart())?;
    let mut shared = edge_dart.edge;
    for _ in 3..entrance {
        let a = mesh.edge(shared).expect("shared edge").u;
        let (next, mid) = moves::subdivide_edge(&mesh, shared)?;
        shared = next.find_edge(a, mid).expect("half edge");
        mesh = next;
    }
    let entrance_vertex = mesh.tail(Dart::new(shared, 0));
    let exit_hole = mesh
        .hole_walks()
        .into_iter()
        .max_by_key(|w| w.len())
        .expect("exit")
        .canonical_dart();
    let (mesh, exit) = moves::collar(&mesh, exit_hole)?;
    let exit_vertex = mesh.tail(exit);
    Ok(Piece::from_holes(mesh, surface, entrance_vertex, &[exit_vertex]))
}

/// Vertex sets of the holes of a mesh.
pub fn hole_vertex_sets(mesh: &SurfaceMesh) -> Vec<BTreeSet<VertexId>> {
    mesh.hole_walks()
        .into_iter()
        .map(|w| w.verts.into_iter().collect())
        .collect()
}


/// `K5` embedded in the projective plane with one pentagonal hole: `K6`
/// minus a vertex. Not sparse-tight: `f = 5`.
pub fn punctured_k5() -> SurfaceMesh {
    from_faces(
        &[&[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[2, 3, 5], &[4, 5, 2]],
        &[&[1, 5, 3, 4, 2]],
    )
}

/// A pentagon with both sides holes and a degree-2 vertex bridging one
/// edge on one side: holes of lengths 5 and 6, `f = 11`.
pub fn bridged_pentagon() -> SurfaceMesh {
    from_faces(&[&[0, 5, 1]], &[&[0, 1, 2, 3, 4], &[0, 4, 3, 2, 1, 5]])
}

/// `punctured_k5` joined to `bridged_pentagon` along the pentagons: an
/// `f = 6` mesh with one hole that is not tight (the `K5` has `f = 5`).
pub fn violating_join() -> SurfaceMesh {
    let a = punctured_k5();
    let b = bridged_pentagon();
    let hb = b
        .hole_walks()
        .into_iter()
        .find(|w| w.len() == 5)
        .expect("pentagon hole")
        .canonical_dart();
    moves::join(&a, only_hole(&a), &b, hb, moves::Alignment::default()).expect("pentagons match")
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rigidity, sparsity};

    fn certify(mesh: &SurfaceMesh) {
        let g = mesh.graph();
        assert!(sparsity::check_exhaustive(&g).unwrap().is_tight());
        assert!(rigidity::is_min_3rigid(&g, 3, 3).is_minimally_rigid());
    }

    #[test]
    fn disc_and_discus() {
        let d = disc().invariants().unwrap();
        assert_eq!((d.vertices, d.edges, d.maxwell, d.hole_lengths), (3, 3, 6, vec![3]));
        for r in 3..=10 {
            assert_eq!(discus(r).unwrap().maxwell_count(), 6);
        }
        assert_eq!(discus(3).unwrap(), Graph::complete(5).without_edge(3, 4));
        assert!(discus(2).is_err());
        assert_eq!(double_banana().edge_count(), 18);
    }

    #[test]
    fn seeds_are_certified() {
        let p = projective_seed();
        let inv = p.invariants().unwrap();
        assert_eq!((inv.hole_lengths.clone(), inv.orientable, inv.reduced_genus), (vec![6], false, ReducedGenus::PROJECTIVE));
        certify(&p);
        let t = torus_seed();
        let inv = t.invariants().unwrap();
        assert_eq!((inv.hole_lengths.clone(), inv.orientable, inv.reduced_genus), (vec![9], true, ReducedGenus::TORUS));
        certify(&t);
        certify(&projective_core());
        certify(&torus_core());
    }

    #[test]
    fn pants_lengths() {
        for (lb, lc) in [(3, 3), (5, 6), (3, 4), (4, 3)] {
            let p = sphere_pants(lb, lc).unwrap();
            assert_eq!(p.entrance_length(), lb + lc - 3);
            assert_eq!(p.exit_lengths(), vec![lb, lc]);
            assert_eq!(p.mesh.maxwell_count(), 2 * (lb + lc) as i64 - 6);
            let walls = hole_vertex_sets(&p.mesh);
            for i in 0..walls.len() {
                for j in i + 1..walls.len() {
                    assert!(walls[i].is_disjoint(&walls[j]));
                }
            }
        }
        assert!(sphere_pants(2, 5).is_err());
    }

    #[test]
    fn piece_lengths() {
        for (surface, delta, exit) in [
            (Surface::Sphere, 5, 5),
            (Surface::Projective, 3, 6),
            (Surface::Torus, 3, 9),
            (Surface::Torus, 9, 15),
            (Surface::Projective, 4, 7),
        ] {
            let p = piece(surface, delta).unwrap();
            assert_eq!((p.entrance_length(), p.exit_lengths()), (delta, vec![exit]), "{surface} {delta}");
            assert_eq!(p.mesh.maxwell_count(), 2 * delta as i64);
            let walls = hole_vertex_sets(&p.mesh);
            assert!(walls[0].is_disjoint(&walls[1]));
        }
        assert!(piece(Surface::Torus, 2).is_err());
    }
}
