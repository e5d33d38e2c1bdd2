//! Superfaces, girth inequalities and the barycentric repair loop.
//!
//! Holes are treated as capped: they are the nontriangular faces `c_k` of
//! the closed surface. A superface is a face `U` of a subgraph `H` (minimum
//! degree 2) other than the whole surface; it is balanced when its boundary
//! subgraph has exactly one other face `W`. For balanced `U` with boundary
//! walks `d_1..d_s`,
//!
//! `δ(U) = Σ(|d_k| - 3) - Σ_{I(U)}(|c_k| - 3) + 6(g_r(U) + s - 1)`
//!
//! and a mesh with `f = 6` satisfies the girth inequalities when `δ(U) >= 0`
//! for all of them. For simple `U` one has `δ(U) = f(G_W) - 6`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GirthError;
use crate::mesh::{Dart, Edge, EdgeId, ReducedGenus, RotationIndex, SurfaceMesh, Tracing, VertexId};
use crate::moves::{self, MoveRecord};
use crate::sparsity;

pub const DEFAULT_EDGE_BUDGET: usize = 18;

/// One side of a boundary subgraph: the faces of a region and its walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionData {
    /// canonical darts of the mesh faces making up the region
    pub faces: Vec<Dart>,
    pub walks: Vec<Vec<VertexId>>,
    /// Euler characteristic of the closure with its boundary walks capped
    pub euler: i64,
    pub orientable: bool,
    pub reduced_genus: ReducedGenus,
    /// lengths of the holes inside the region
    pub enclosed_holes: Vec<usize>,
    /// `3|V| - |E|` of the subgraph formed by the region's faces
    pub closure_maxwell: i64,
}

impl RegionData {
    pub fn boundary_count(&self) -> usize {
        self.walks.len()
    }

    pub fn walk_lengths(&self) -> Vec<usize> {
        self.walks.iter().map(Vec::len).collect()
    }

    fn walk_excess(&self) -> i64 {
        self.walks.iter().map(|w| w.len() as i64 - 3).sum()
    }

    fn hole_excess(&self) -> i64 {
        self.enclosed_holes.iter().map(|&c| c as i64 - 3).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperfaceReport {
    pub region: RegionData,
    /// edge ids of the boundary subgraph
    pub boundary_edges: Vec<EdgeId>,
    pub balanced: bool,
    pub simple: bool,
    pub delta: i64,
    /// `Σ(|d_k|-3) + Σ_{I(U)}(|c_k|-3) - 6 g_r(U)`, the sign-flipped repair
    /// form; tracked only to flag disagreements
    pub repair_delta: i64,
    /// the other face of the boundary subgraph, when balanced
    pub complement: Option<RegionData>,
}

impl SuperfaceReport {
    pub fn violates(&self) -> bool {
        self.balanced && self.delta < 0
    }

    /// Whether the repair form would give a different verdict.
    pub fn repair_form_disagrees(&self) -> bool {
        (self.delta >= 0) != (self.repair_delta >= 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Targeted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GirthVerdict {
    pub passes: bool,
    pub mode: Mode,
    pub superfaces: usize,
    pub balanced: usize,
    /// a δ-minimal violating balanced superface
    pub worst: Option<SuperfaceReport>,
    pub repair_form_disagreements: usize,
}

/// The three equivalent forms of the girth inequality for a balanced
/// simple superface, plus the two identities linking them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GirthForms {
    /// `f(G_W) >= 6`, computed on the subgraph
    pub closure_count: bool,
    /// `Σ(|d_k|-3) + Σ_{I(W)}(|c_k|-3) >= 6 g_r(W)`
    pub walk_form: bool,
    /// `δ(U) >= 0`
    pub delta_form: bool,
    /// face walk identity for `G_W` in the capped closure of `W`
    pub identity_holds: bool,
    /// `g_r(S) = g_r(U) + g_r(W) + (s - 1)`
    pub addition_holds: bool,
}

impl GirthForms {
    pub fn agree(&self) -> bool {
        self.closure_count == self.walk_form && self.walk_form == self.delta_form
    }
}

type Key = (Vec<usize>, Vec<usize>);

/// Precomputed incidence data for one mesh.
struct Context<'a> {
    mesh: &'a SurfaceMesh,
    t: Tracing,
    edges: Vec<Edge>,
    edge_index: HashMap<EdgeId, usize>,
    /// per edge, its two sides as (face, end of the traversed dart)
    sides: Vec<[(usize, u8); 2]>,
    hole: Vec<bool>,
}

impl<'a> Context<'a> {
    fn new(mesh: &'a SurfaceMesh) -> Self {
        let t = mesh.tracing();
        let edges: Vec<Edge> = mesh.edges().copied().collect();
        let edge_index: HashMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        let mut occ: Vec<Vec<(usize, u8)>> = vec![Vec::new(); edges.len()];
        for (fi, w) in t.faces.iter().enumerate() {
            for s in w.steps() {
                occ[edge_index[&s.dart.edge]].push((fi, s.dart.end));
            }
        }
        let sides = occ.into_iter().map(|o| [o[0], o[1]]).collect();
        let hole = t.faces.iter().map(|w| mesh.is_hole(w)).collect();
        Context {
            mesh,
            t,
            edges,
            edge_index,
            sides,
            hole,
        }
    }

    fn face_count(&self) -> usize {
        self.t.faces.len()
    }

    /// Face components of the complement of the edge set `h`.
    fn components(&self, h: &[bool]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.face_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for (k, s) in self.sides.iter().enumerate() {
            if !h[k] {
                let (a, b) = (find(&mut parent, s[0].0), find(&mut parent, s[1].0));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.face_count()).map(|f| find(&mut parent, f)).collect()
    }

    /// Superface keys (region faces, boundary edges) of all faces of `h`.
    fn keys_of(&self, h: &[bool]) -> Vec<Key> {
        let comp = self.components(h);
        let mut regions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (f, &c) in comp.iter().enumerate() {
            regions.entry(c).or_default().push(f);
        }
        if regions.len() < 2 {
            return Vec::new();
        }
        regions
            .into_iter()
            .map(|(c, faces)| {
                let boundary = (0..self.edges.len())
                    .filter(|&k| h[k] && self.sides[k].iter().any(|&(f, _)| comp[f] == c))
                    .collect();
                (faces, boundary)
            })
            .collect()
    }

    /// Walks of the boundary subgraph, each with the face on its side.
    fn boundary_walks(&self, b: &[bool]) -> Vec<(Vec<VertexId>, usize)> {
        let rotation: HashMap<VertexId, Vec<Dart>> = self
            .mesh
            .vertices()
            .iter()
            .filter_map(|&v| {
                let rot: Vec<Dart> = self
                    .mesh
                    .rotation(v)
                    .expect("vertex rotation")
                    .iter()
                    .copied()
                    .filter(|d| b[self.edge_index[&d.edge]])
                    .collect();
                (!rot.is_empty()).then_some((v, rot))
            })
            .collect();
        let sub = RotationIndex::from_rotation(self.mesh, rotation).trace();
        sub.faces
            .iter()
            .map(|w| {
                let s = w.steps()[0];
                (w.vertices(), self.t.face_of(s.dart, s.orientation))
            })
            .collect()
    }

    fn region(&self, in_region: &[bool], b: &[bool], walks: Vec<Vec<VertexId>>) -> RegionData {
        let s = walks.len() as i64;
        let faces: Vec<usize> = (0..self.face_count()).filter(|&f| in_region[f]).collect();
        let mut boundary_vertices: BTreeSet<VertexId> = BTreeSet::new();
        for (k, e) in self.edges.iter().enumerate() {
            if b[k] {
                boundary_vertices.insert(e.u);
                boundary_vertices.insert(e.v);
            }
        }
        let mut closure_vertices: BTreeSet<VertexId> = BTreeSet::new();
        for &f in &faces {
            closure_vertices.extend(self.t.faces[f].vertices());
        }
        let interior_vertices = closure_vertices.difference(&boundary_vertices).count() as i64;
        let touching: Vec<usize> = (0..self.edges.len())
            .filter(|&k| self.sides[k].iter().any(|&(f, _)| in_region[f]))
            .collect();
        let interior_edges: Vec<usize> = touching.iter().copied().filter(|&k| !b[k]).collect();
        let euler = interior_vertices - interior_edges.len() as i64 + faces.len() as i64 + s;
        let orientable = self.orientable(&interior_edges);
        let enclosed_holes = faces.iter().filter(|&&f| self.hole[f]).map(|&f| self.t.faces[f].len()).collect();
        RegionData {
            faces: faces.iter().map(|&f| self.t.faces[f].canonical_dart()).collect(),
            walks,
            euler,
            orientable,
            reduced_genus: ReducedGenus(2 - euler),
            enclosed_holes,
            closure_maxwell: 3 * closure_vertices.len() as i64 - touching.len() as i64,
        }
    }

    /// Coherent orientation of the faces glued along `interior` edges:
    /// neighbouring faces must run along their common edge in opposite
    /// directions.
    fn orientable(&self, interior: &[usize]) -> bool {
        let n = self.face_count();
        let mut parent: Vec<(usize, u8)> = (0..n).map(|f| (f, 0)).collect();
        fn find(p: &mut [(usize, u8)], x: usize) -> (usize, u8) {
            let (mut r, mut parity) = (x, 0u8);
            while p[r].0 != r {
                parity ^= p[r].1;
                r = p[r].0;
            }
            (r, parity)
        }
        for &k in interior {
            let [(fa, ea), (fb, eb)] = self.sides[k];
            let flip = u8::from(ea == eb);
            let (ra, pa) = find(&mut parent, fa);
            let (rb, pb) = find(&mut parent, fb);
            if ra == rb {
                if pa ^ pb != flip {
                    return false;
                }
            } else {
                parent[ra] = (rb, pa ^ pb ^ flip);
            }
        }
        true
    }

    fn evaluate(&self, key: &Key) -> SuperfaceReport {
        let (faces, boundary) = key;
        let mut b = vec![false; self.edges.len()];
        for &k in boundary {
            b[k] = true;
        }
        let mut in_u = vec![false; self.face_count()];
        for &f in faces {
            in_u[f] = true;
        }
        let comp = self.components(&b);
        let u_comp = comp[faces[0]];
        let others: BTreeSet<usize> = comp.iter().copied().filter(|&c| c != u_comp).collect();
        let walks = self.boundary_walks(&b);
        let u_walks: Vec<Vec<VertexId>> = walks.iter().filter(|(_, f)| in_u[*f]).map(|(w, _)| w.clone()).collect();
        let simple = {
            let mut seen = BTreeSet::new();
            u_walks.iter().flatten().all(|v| seen.insert(*v))
        };
        let region = self.region(&in_u, &b, u_walks);
        let s = region.boundary_count() as i64;
        let delta = region.walk_excess() - region.hole_excess() + region.reduced_genus.times_six() + 6 * (s - 1);
        let repair_delta = region.walk_excess() + region.hole_excess() - region.reduced_genus.times_six();
        let balanced = others.len() == 1;
        let complement = balanced.then(|| {
            let w_comp = *others.iter().next().expect("one other face");
            let in_w: Vec<bool> = comp.iter().map(|&c| c == w_comp).collect();
            let w_walks = walks.iter().filter(|(_, f)| in_w[*f]).map(|(w, _)| w.clone()).collect();
            self.region(&in_w, &b, w_walks)
        });
        SuperfaceReport {
            region,
            boundary_edges: boundary.iter().map(|&k| self.edges[k].id).collect(),
            balanced,
            simple,
            delta,
            repair_delta,
            complement,
        }
    }

    fn exhaustive_keys(&self) -> BTreeSet<Key> {
        let m = self.edges.len();
        let index: HashMap<VertexId, usize> =
            self.mesh.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ends: Vec<(usize, usize)> = self.edges.iter().map(|e| (index[&e.u], index[&e.v])).collect();
        let n = index.len();
        (1u64..(1u64 << m))
            .into_par_iter()
            .fold(BTreeSet::new, |mut acc, mask| {
                let mut degree = vec![0u8; n];
                for (k, &(a, b)) in ends.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        degree[a] += 1;
                        degree[b] += 1;
                    }
                }
                if degree.contains(&1) {
                    return acc;
                }
                let h: Vec<bool> = (0..m).map(|k| mask & (1 << k) != 0).collect();
                acc.extend(self.keys_of(&h));
                acc
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    }

    /// Candidate subgraphs derived from dense vertex sets: the 2-core of the
    /// induced subgraph, the boundaries of its faces and the boundaries of
    /// the faces of those.
    fn targeted_keys(&self, dense: &[BTreeSet<VertexId>]) -> BTreeSet<Key> {
        let m = self.edges.len();
        let mut keys = BTreeSet::new();
        for set in dense {
            let mut h: Vec<bool> = self.edges.iter().map(|e| set.contains(&e.u) && set.contains(&e.v)).collect();
            two_core(&self.edges, &mut h);
            if !h.iter().any(|&x| x) {
                continue;
            }
            let first = self.keys_of(&h);
            for (_, boundary) in &first {
                let mut b = vec![false; m];
                for &k in boundary {
                    b[k] = true;
                }
                let second = self.keys_of(&b);
                for (_, inner) in &second {
                    let mut c = vec![false; m];
                    for &k in inner {
                        c[k] = true;
                    }
                    keys.extend(self.keys_of(&c));
                }
                keys.extend(second);
            }
            keys.extend(first);
        }
        keys
    }
}

/// Strip edges at vertices of degree below 2 until none remain.
fn two_core(edges: &[Edge], h: &mut [bool]) {
    loop {
        let mut degree: HashMap<VertexId, usize> = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            if h[k] {
                *degree.entry(e.u).or_default() += 1;
                *degree.entry(e.v).or_default() += 1;
            }
        }
        let mut changed = false;
        for (k, e) in edges.iter().enumerate() {
            if h[k] && (degree[&e.u] < 2 || degree[&e.v] < 2) {
                h[k] = false;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// All superfaces of all subgraphs with minimum degree 2, deduplicated by
/// (region, boundary edges). Refuses meshes with more than `budget` edges.
pub fn enumerate_superfaces(mesh: &SurfaceMesh, budget: usize) -> Result<Vec<SuperfaceReport>, GirthError> {
    mesh.validate().map_err(crate::MeshError::from)?;
    if mesh.edge_count() > budget || mesh.edge_count() > 63 {
        return Err(GirthError::Budget {
            edges: mesh.edge_count(),
            budget,
        });
    }
    let ctx = Context::new(mesh);
    let keys: Vec<Key> = ctx.exhaustive_keys().into_iter().collect();
    Ok(keys.par_iter().map(|k| ctx.evaluate(k)).collect())
}

/// Superfaces reachable from the densest vertex sets (the sparsity witness
/// and a maximal set with `f <= 5` containing it).
pub fn targeted_superfaces(mesh: &SurfaceMesh) -> Result<Vec<SuperfaceReport>, GirthError> {
    mesh.validate().map_err(crate::MeshError::from)?;
    let g = mesh.graph();
    let verdict = sparsity::check_flow(&g);
    let witness: BTreeSet<VertexId> = verdict.witness.iter().copied().collect();
    let mut dense = vec![witness.clone()];
    if verdict.deficiency.is_some_and(|d| d > 0) {
        let mut grown = witness;
        for &v in g.vertex_ids() {
            if grown.contains(&v) {
                continue;
            }
            grown.insert(v);
            if sparsity::set_value(&g, &grown) < 1 {
                grown.remove(&v);
            }
        }
        dense.push(grown);
    }
    let ctx = Context::new(mesh);
    let keys: Vec<Key> = ctx.targeted_keys(&dense).into_iter().collect();
    Ok(keys.par_iter().map(|k| ctx.evaluate(k)).collect())
}

fn summarize(reports: Vec<SuperfaceReport>, mode: Mode, passes: Option<bool>) -> GirthVerdict {
    let balanced = reports.iter().filter(|r| r.balanced).count();
    let repair_form_disagreements = reports
        .iter()
        .filter(|r| r.balanced && r.repair_form_disagrees())
        .count();
    let total = reports.len();
    let worst = reports
        .into_iter()
        .filter(SuperfaceReport::violates)
        .min_by(|a, b| a.delta.cmp(&b.delta).then_with(|| a.region.faces.cmp(&b.region.faces)));
    GirthVerdict {
        passes: passes.unwrap_or(worst.is_none()),
        mode,
        superfaces: total,
        balanced,
        worst,
        repair_form_disagreements,
    }
}

/// Check the girth inequalities. Small meshes are enumerated exhaustively;
/// above the edge budget the verdict comes from the flow oracle (tightness
/// and the girth inequalities are equivalent) and the witness from targeted enumeration.
pub fn check_girth(mesh: &SurfaceMesh) -> Result<GirthVerdict, GirthError> {
    check_girth_with_budget(mesh, DEFAULT_EDGE_BUDGET)
}

pub fn check_girth_with_budget(mesh: &SurfaceMesh, budget: usize) -> Result<GirthVerdict, GirthError> {
    let f = mesh.maxwell_count();
    if f != 6 {
        return Err(GirthError::MaxwellNotSix(f));
    }
    if mesh.edge_count() <= budget {
        let reports = enumerate_superfaces(mesh, budget)?;
        return Ok(summarize(reports, Mode::Exhaustive, None));
    }
    let tight = sparsity::check_flow(&mesh.graph()).is_tight();
    let reports = if tight { Vec::new() } else { targeted_superfaces(mesh)? };
    Ok(summarize(reports, Mode::Targeted, Some(tight)))
}

/// Evaluate the three forms for a balanced simple superface of a mesh with
/// `f = 6` and the identities that make them equivalent.
pub fn girth_forms(mesh: &SurfaceMesh, report: &SuperfaceReport) -> Result<GirthForms, GirthError> {
    let w = match &report.complement {
        Some(w) if report.balanced && report.simple => w,
        _ => return Err(GirthError::NotBalancedSimple),
    };
    let f = mesh.maxwell_count();
    if f != 6 {
        return Err(GirthError::MaxwellNotSix(f));
    }
    let u = &report.region;
    let s = u.boundary_count() as i64;
    let walk_side = w.walk_excess() + w.hole_excess();
    let twice_total = 2 - (mesh.vertex_count() as i64 - mesh.edge_count() as i64 + mesh.faces().len() as i64);
    Ok(GirthForms {
        closure_count: w.closure_maxwell >= 6,
        walk_form: walk_side >= w.reduced_genus.times_six(),
        delta_form: report.delta >= 0,
        identity_holds: walk_side == w.reduced_genus.times_six() + w.closure_maxwell - 6,
        addition_holds: twice_total == u.reduced_genus.twice() + w.reduced_genus.twice() + 2 * (s - 1),
    })
}

#[derive(Clone, Debug)]
pub struct RepairOutcome {
    pub mesh: SurfaceMesh,
    pub log: Vec<MoveRecord>,
    pub success: bool,
    /// Maxwell count after every move (first entry: the input)
    pub maxwell_trace: Vec<i64>,
    /// minimum δ over violating superfaces before each move
    pub delta_trace: Vec<i64>,
}

/// An edge on one of the superface's boundary walks with a non-hole
/// triangle on each side (least id first).
fn interior_walk_edge(mesh: &SurfaceMesh, report: &SuperfaceReport) -> Option<EdgeId> {
    let ctx_faces = mesh.faces();
    let t_hole: BTreeSet<Dart> = mesh.hole_markers().clone();
    let mut candidates: BTreeSet<EdgeId> = BTreeSet::new();
    for w in &report.region.walks {
        for i in 0..w.len() {
            if let Some(e) = mesh.find_edge(w[i], w[(i + 1) % w.len()]) {
                candidates.insert(e);
            }
        }
    }
    candidates.into_iter().find(|&e| {
        let sides: Vec<&crate::FaceWalk> = ctx_faces
            .iter()
            .filter(|f| f.steps().iter().any(|s| s.dart.edge == e))
            .collect();
        sides.len() == 2 && sides.iter().all(|f| f.len() == 3 && !t_hole.contains(&f.canonical_dart()))
    })
}

/// Apply local barycentric moves on boundary edges of δ-minimal violating
/// superfaces until the girth inequalities hold or `max_moves` is spent.
pub fn repair(mesh: &SurfaceMesh, max_moves: usize) -> Result<RepairOutcome, GirthError> {
    let f = mesh.maxwell_count();
    if f != 6 {
        return Err(GirthError::MaxwellNotSix(f));
    }
    let mut cur = mesh.clone();
    let mut out = RepairOutcome {
        mesh: cur.clone(),
        log: Vec::new(),
        success: false,
        maxwell_trace: vec![f],
        delta_trace: Vec::new(),
    };
    loop {
        let verdict = check_girth(&cur)?;
        if verdict.passes {
            out.mesh = cur;
            out.success = true;
            return Ok(out);
        }
        if out.log.len() >= max_moves {
            out.mesh = cur;
            return Ok(out);
        }
        let mut violators: Vec<SuperfaceReport> = match verdict.mode {
            Mode::Exhaustive => enumerate_superfaces(&cur, DEFAULT_EDGE_BUDGET)?,
            Mode::Targeted => targeted_superfaces(&cur)?,
        }
        .into_iter()
        .filter(SuperfaceReport::violates)
        .collect();
        if violators.is_empty() {
            return Err(GirthError::NoWitness);
        }
        violators.sort_by(|a, b| a.delta.cmp(&b.delta).then_with(|| a.region.faces.cmp(&b.region.faces)));
        out.delta_trace.push(violators[0].delta);
        let min_delta = violators[0].delta;
        let edge = violators
            .iter()
            .take_while(|r| r.delta == min_delta)
            .find_map(|r| interior_walk_edge(&cur, r))
            .or_else(|| violators.iter().find_map(|r| interior_walk_edge(&cur, r)))
            .ok_or(GirthError::NoInteriorEdge)?;
        let record = MoveRecord::Barycentric { edge };
        cur = moves::apply(&cur, &record)?;
        out.log.push(record);
        out.maxwell_trace.push(cur.maxwell_count());
    }
}

/// Join a piece onto a hole, then repair the result.
pub fn extend_join(
    mesh: &SurfaceMesh,
    hole: Dart,
    piece: &SurfaceMesh,
    piece_hole: Dart,
    alignment: moves::Alignment,
    max_moves: usize,
) -> Result<RepairOutcome, GirthError> {
    let joined = moves::join(mesh, hole, piece, piece_hole, alignment)?;
    repair(&joined, max_moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds;

    #[test]
    fn k3_sphere_has_two_disc_superfaces() {
        let disc = seeds::disc();
        let h = *disc.hole_markers().iter().next().unwrap();
        let sphere = moves::join(&disc, h, &disc, h, moves::Alignment::default()).unwrap();
        let all = enumerate_superfaces(&sphere, 18).unwrap();
        assert_eq!(all.len(), 2);
        for r in &all {
            assert!(r.balanced && r.simple);
            assert_eq!(r.region.euler, 2);
            assert_eq!(r.delta, 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let seed = seeds::torus_seed();
        assert!(matches!(enumerate_superfaces(&seed, 18), Err(GirthError::Budget { .. })));
    }

    #[test]
    fn maxwell_must_be_six() {
        let oct = seeds::octahedron();
        let cut = moves::excise_region(&oct, &oct.neighbors(0), &BTreeSet::from([0])).unwrap();
        assert!(matches!(check_girth(&cut), Err(GirthError::MaxwellNotSix(7))));
    }

    #[test]
    fn octahedron_passes_with_consistent_forms() {
        let oct = seeds::octahedron();
        let v = check_girth(&oct).unwrap();
        assert!(v.passes);
        for r in enumerate_superfaces(&oct, 18).unwrap() {
            if r.balanced && r.simple {
                let l = girth_forms(&oct, &r).unwrap();
                assert!(l.agree() && l.identity_holds && l.addition_holds);
                let w = r.complement.as_ref().unwrap();
                assert_eq!(r.delta, w.closure_maxwell - 6);
            }
        }
    }
    #[test]
    fn violating_join_is_caught_and_repaired() {
        let m = seeds::violating_join();
        assert_eq!(m.maxwell_count(), 6);
        let v = check_girth(&m).unwrap();
        assert!(!v.passes);
        let worst = v.worst.unwrap();
        assert_eq!(worst.delta, -1);
        assert_eq!(worst.region.walk_lengths(), vec![5]);
        let out = repair(&m, 100).unwrap();
        assert!(out.success);
        assert!(out.maxwell_trace.iter().all(|&f| f == 6));
        assert!(sparsity::check(&out.mesh.graph()).is_tight());
    }
}
