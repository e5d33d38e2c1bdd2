//! Shared generators for the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srs_core::mesh::io;
use srs_core::mesh::{Dart, MeshBuilder, SurfaceMesh, VertexId};
use srs_core::moves::{self, Alignment, Side};
use srs_core::seeds;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn triangles(mesh: &SurfaceMesh) -> Vec<Dart> {
    mesh.faces()
        .into_iter()
        .filter(|w| !mesh.is_hole(w) && w.len() == 3)
        .map(|w| w.canonical_dart())
        .collect()
}

pub fn holes(mesh: &SurfaceMesh) -> Vec<Dart> {
    mesh.hole_markers().iter().copied().collect()
}

pub fn random_zero_extension(mesh: &SurfaceMesh, rng: &mut impl Rng) -> Option<SurfaceMesh> {
    let face = *triangles(mesh).choose(rng)?;
    let verts = mesh.face_walk(face)?.vertices();
    moves::zero_extension(mesh, face, [verts[0], verts[1], verts[2]]).ok()
}

pub fn random_split(mesh: &SurfaceMesh, rng: &mut impl Rng) -> Option<SurfaceMesh> {
    for _ in 0..20 {
        let v = *mesh.vertices().choose(rng)?;
        let nbrs = mesh.neighbors(v);
        if nbrs.len() < 2 {
            continue;
        }
        let a = *nbrs.choose(rng)?;
        let b = *nbrs.choose(rng)?;
        if a == b {
            continue;
        }
        let side = if rng.random_bool(0.5) { Side::Forward } else { Side::Backward };
        if let Ok(m) = moves::vertex_split(mesh, v, a, b, side) {
            return Some(m);
        }
    }
    None
}

pub fn random_collar(mesh: &SurfaceMesh, rng: &mut impl Rng) -> Option<SurfaceMesh> {
    let hole = *holes(mesh).choose(rng)?;
    moves::collar(mesh, hole).ok().map(|(m, _)| m)
}

pub fn interior_edges(mesh: &SurfaceMesh) -> Vec<u32> {
    let faces = mesh.faces();
    mesh.edges()
        .map(|e| e.id)
        .filter(|&id| {
            let sides: Vec<_> = faces
                .iter()
                .filter(|f| f.steps().iter().any(|s| s.dart.edge == id))
                .collect();
            sides.len() == 2 && sides.iter().all(|f| !mesh.is_hole(f))
        })
        .collect()
}

pub fn random_barycentric(mesh: &SurfaceMesh, rng: &mut impl Rng) -> Option<SurfaceMesh> {
    let edge = *interior_edges(mesh).choose(rng)?;
    moves::barycentric_local(mesh, edge).ok()
}

pub fn tight_starts() -> Vec<(String, SurfaceMesh)> {
    let mut out = vec![
        ("disc".to_string(), seeds::disc()),
        ("octahedron".into(), seeds::octahedron()),
        ("projective-core".into(), seeds::projective_core()),
    ];
    for r in [3, 5, 6] {
        out.push((format!("discus-{r}"), seeds::discus_mesh(r).unwrap()));
    }
    let disc = seeds::disc();
    let (collared, _) = moves::collar(&disc, holes(&disc)[0]).unwrap();
    out.push(("collared-disc".into(), collared));
    out
}

/// `f = 6` meshes containing a `K5` (so never tight).
pub fn violating_starts() -> Vec<(String, SurfaceMesh)> {
    let a = seeds::punctured_k5();
    let b = seeds::bridged_pentagon();
    let ha = holes(&a)[0];
    let hb = b.hole_walks().into_iter().find(|w| w.len() == 5).unwrap().canonical_dart();
    let mut out = vec![("k5-join".to_string(), seeds::violating_join())];
    for start in 1..5 {
        for twisted in [false, true] {
            let alignment = Alignment {
                first_start: None,
                second_start: Some(start),
                twisted,
            };
            if let Ok(m) = moves::join(&a, ha, &b, hb, alignment) {
                out.push((format!("k5-join-{start}-{twisted}"), m));
            }
        }
    }
    out
}

/// Random 0-extensions and vertex splits from the starts, keeping at most
/// `max_edges` edges; deduplicated by serialization. The flag records
/// whether the start was tight (a split can destroy the `K5` of a violating
/// start, so it is not a verdict).
pub fn corpus(seed: u64, per_start: usize, max_edges: usize) -> Vec<(String, SurfaceMesh, bool)> {
    let mut rng = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let starts = tight_starts()
        .into_iter()
        .map(|(n, m)| (n, m, true))
        .chain(violating_starts().into_iter().map(|(n, m)| (n, m, false)));
    for (name, start, tight) in starts {
        if start.edge_count() > max_edges {
            continue;
        }
        if seen.insert(io::to_json(&start)) {
            out.push((name.clone(), start.clone(), tight));
        }
        for k in 0..per_start {
            let mut cur = start.clone();
            let steps = rng.random_range(1..=3);
            for _ in 0..steps {
                if cur.edge_count() + 3 > max_edges {
                    break;
                }
                let next = if rng.random_bool(0.5) {
                    random_zero_extension(&cur, &mut rng)
                } else {
                    random_split(&cur, &mut rng)
                };
                if let Some(m) = next {
                    cur = m;
                }
            }
            if seen.insert(io::to_json(&cur)) {
                out.push((format!("{name}/{k}"), cur, tight));
            }
        }
    }
    out
}

/// Cone over an `n`-cycle with the cycle as a hole.
pub fn cone_disc(n: usize) -> SurfaceMesh {
    let apex = n as VertexId;
    let mut b = MeshBuilder::new();
    for i in 0..n as VertexId {
        b.add_face(vec![i, (i + 1) % n as VertexId, apex], false);
    }
    b.add_face((0..n as VertexId).rev().collect(), true);
    b.build().unwrap()
}

/// A random disc with boundary length `n`: a cone grown by interior moves.
pub fn random_disc(n: usize, moves: usize, rng: &mut impl Rng) -> SurfaceMesh {
    let mut cur = cone_disc(n);
    for _ in 0..moves {
        let next = if rng.random_bool(0.5) {
            random_zero_extension(&cur, rng)
        } else {
            random_split(&cur, rng)
        };
        if let Some(m) = next {
            if m.hole_lengths() == vec![n] {
                cur = m;
            }
        }
    }
    cur
}
