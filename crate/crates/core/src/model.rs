//! Model surfaces described by labelled rooted trees with periodic tails,
//! their topological invariants, and tight triangulation towers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, MoveError, SpecError};
use crate::mesh::io;
use crate::mesh::{Dart, ReducedGenus, SurfaceMesh, VertexId};
use crate::moves::{self, hole_through, Alignment, MoveRecord};
use crate::seeds::{self, Piece, Surface};

pub const SPEC_FORMAT: &str = "tree-spec/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// a path whose labels repeat `unit`
    Ray { unit: Vec<Surface> },
    /// an infinite binary tree of spheres
    FullBinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecNode {
    pub id: usize,
    pub label: Surface,
    #[serde(default)]
    pub children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Tail>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub format: String,
    pub root: usize,
    pub nodes: Vec<SpecNode>,
}

impl TreeSpec {
    /// A root with one child per label of `core`, ending in a ray.
    pub fn path(core: &[Surface], unit: &[Surface]) -> Result<Self, SpecError> {
        let mut nodes: Vec<SpecNode> = std::iter::once(Surface::Sphere)
            .chain(core.iter().copied())
            .enumerate()
            .map(|(id, label)| SpecNode {
                id,
                label,
                children: vec![id + 1],
                tail: None,
            })
            .collect();
        let leaf = nodes.last_mut().expect("root");
        leaf.children.clear();
        leaf.tail = Some(Tail::Ray { unit: unit.to_vec() });
        Self::from_nodes(0, nodes)
    }

    /// The one-ray spec whose tail repeats `unit` right after the root.
    pub fn ray(unit: &[Surface]) -> Result<Self, SpecError> {
        Self::path(&[], unit)
    }

    /// A root with a single sphere child that branches forever.
    pub fn full_binary() -> Self {
        let nodes = vec![
            SpecNode {
                id: 0,
                label: Surface::Sphere,
                children: vec![1],
                tail: None,
            },
            SpecNode {
                id: 1,
                label: Surface::Sphere,
                children: Vec::new(),
                tail: Some(Tail::FullBinary),
            },
        ];
        Self::from_nodes(0, nodes).expect("valid spec")
    }

    pub fn from_nodes(root: usize, nodes: Vec<SpecNode>) -> Result<Self, SpecError> {
        let spec = TreeSpec {
            format: SPEC_FORMAT.into(),
            root,
            nodes,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(FormatError::from)?;
        let format = value.get("format").and_then(|f| f.as_str()).unwrap_or_default();
        if format != SPEC_FORMAT {
            return Err(FormatError::UnknownFormat(format.into()).into());
        }
        let spec: TreeSpec = serde_json::from_value(value).map_err(FormatError::from)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn node_map(&self) -> Result<BTreeMap<usize, &SpecNode>, SpecError> {
        let mut map = BTreeMap::new();
        for n in &self.nodes {
            if map.insert(n.id, n).is_some() {
                return Err(SpecError::DuplicateId(n.id));
            }
        }
        Ok(map)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let map = self.node_map()?;
        let root = map.get(&self.root).ok_or(SpecError::MissingRoot(self.root))?;
        if root.label != Surface::Sphere {
            return Err(SpecError::RootNotSphere(root.label.to_string()));
        }
        let mut seen = BTreeSet::from([self.root]);
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            let node = map[&id];
            if node.children.len() > 2 {
                return Err(SpecError::TooManyChildren(id));
            }
            if node.children.len() == 2 && node.label != Surface::Sphere {
                return Err(SpecError::BranchNotSphere(id));
            }
            match (&node.tail, node.children.is_empty()) {
                (None, true) => return Err(SpecError::MissingTail(id)),
                (Some(_), false) => return Err(SpecError::TailOnInternal(id)),
                (Some(Tail::Ray { unit }), true) if unit.is_empty() => return Err(SpecError::EmptyUnit(id)),
                _ => {}
            }
            for &c in &node.children {
                if !map.contains_key(&c) {
                    return Err(SpecError::UnknownChild { parent: id, child: c });
                }
                if !seen.insert(c) {
                    return Err(SpecError::NotATree(c));
                }
                stack.push(c);
            }
        }
        if let Some(&id) = map.keys().find(|id| !seen.contains(id)) {
            return Err(SpecError::Unreachable(id));
        }
        Ok(())
    }

    fn node(&self, id: usize) -> &SpecNode {
        self.nodes.iter().find(|n| n.id == id).expect("validated id")
    }

    /// Replace every tail by one explicit step of it.
    pub fn unrolled(&self) -> TreeSpec {
        let mut next = self.nodes.iter().map(|n| n.id).max().unwrap_or(0) + 1;
        let mut nodes = self.nodes.clone();
        let mut extra = Vec::new();
        for node in &mut nodes {
            match node.tail.take() {
                Some(Tail::Ray { unit }) => {
                    let mut rest = unit.clone();
                    rest.rotate_left(1);
                    extra.push(SpecNode {
                        id: next,
                        label: unit[0],
                        children: Vec::new(),
                        tail: Some(Tail::Ray { unit: rest }),
                    });
                    node.children.push(next);
                    next += 1;
                }
                Some(Tail::FullBinary) => {
                    for _ in 0..2 {
                        extra.push(SpecNode {
                            id: next,
                            label: Surface::Sphere,
                            children: Vec::new(),
                            tail: Some(Tail::FullBinary),
                        });
                        node.children.push(next);
                        next += 1;
                    }
                }
                None => {}
            }
        }
        nodes.extend(extra);
        TreeSpec {
            format: self.format.clone(),
            root: self.root,
            nodes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    Orientable,
    FinitelyNonorientableEven,
    FinitelyNonorientableOdd,
    InfinitelyNonorientable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Genus {
    Finite(ReducedGenus),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ends {
    Finite(usize),
    Cantor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndFlags {
    /// the leaf whose tail describes the end
    pub leaf: usize,
    pub planar: bool,
    pub orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecInvariants {
    pub genus: Genus,
    pub orientability: Orientability,
    pub ends: Ends,
    pub end_flags: Vec<EndFlags>,
}

pub fn classify(spec: &TreeSpec) -> SpecInvariants {
    let core_genus = spec
        .nodes
        .iter()
        .map(|n| n.label.reduced_genus())
        .fold(ReducedGenus::SPHERE, |a, b| a + b);
    let units: Vec<&Vec<Surface>> = spec
        .nodes
        .iter()
        .filter_map(|n| match &n.tail {
            Some(Tail::Ray { unit }) => Some(unit),
            _ => None,
        })
        .collect();
    let handles_forever = units.iter().any(|u| u.iter().any(|&s| s != Surface::Sphere));
    let crosscaps_forever = units.iter().any(|u| u.contains(&Surface::Projective));
    let core_crosscaps = spec.nodes.iter().filter(|n| n.label == Surface::Projective).count();
    let orientability = if crosscaps_forever {
        Orientability::InfinitelyNonorientable
    } else if core_crosscaps == 0 {
        Orientability::Orientable
    } else if core_crosscaps % 2 == 1 {
        Orientability::FinitelyNonorientableOdd
    } else {
        Orientability::FinitelyNonorientableEven
    };
    let mut end_flags = Vec::new();
    let mut cantor = false;
    for n in &spec.nodes {
        match &n.tail {
            Some(Tail::Ray { unit }) => end_flags.push(EndFlags {
                leaf: n.id,
                planar: unit.iter().all(|&s| s == Surface::Sphere),
                orientable: !unit.contains(&Surface::Projective),
            }),
            Some(Tail::FullBinary) => {
                cantor = true;
                end_flags.push(EndFlags {
                    leaf: n.id,
                    planar: true,
                    orientable: true,
                });
            }
            None => {}
        }
    }
    SpecInvariants {
        genus: if handles_forever {
            Genus::Infinite
        } else {
            Genus::Finite(core_genus)
        },
        orientability,
        ends: if cantor { Ends::Cantor } else { Ends::Finite(end_flags.len()) },
        end_flags,
    }
}

/// A node of the infinite tree: an explicit spec node or a step inside a
/// tail.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Cursor {
    Node(usize),
    Ray { leaf: usize, step: usize },
    Binary,
}

impl Cursor {
    fn label(&self, spec: &TreeSpec) -> Surface {
        match self {
            Cursor::Node(id) => spec.node(*id).label,
            Cursor::Ray { leaf, step } => match &spec.node(*leaf).tail {
                Some(Tail::Ray { unit }) => unit[step % unit.len()],
                _ => unreachable!("ray cursor on a ray leaf"),
            },
            Cursor::Binary => Surface::Sphere,
        }
    }

    fn children(&self, spec: &TreeSpec) -> Vec<Cursor> {
        match self {
            Cursor::Node(id) => {
                let node = spec.node(*id);
                match &node.tail {
                    None => node.children.iter().map(|&c| Cursor::Node(c)).collect(),
                    Some(Tail::Ray { .. }) => vec![Cursor::Ray { leaf: *id, step: 0 }],
                    Some(Tail::FullBinary) => vec![Cursor::Binary, Cursor::Binary],
                }
            }
            Cursor::Ray { leaf, step } => vec![Cursor::Ray {
                leaf: *leaf,
                step: step + 1,
            }],
            Cursor::Binary => vec![Cursor::Binary, Cursor::Binary],
        }
    }
}

/// Exit lengths of the pants attached to a hole of length `entrance`:
/// as even as `b + c = entrance + 3` allows, the larger one first.
pub fn pants_exits(entrance: usize) -> (usize, usize) {
    let total = entrance + 3;
    (total.div_ceil(2), total / 2)
}

/// An open hole of a tower stage, waiting for the subtree below `path`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierHole {
    /// child indices from the root
    pub path: Vec<usize>,
    /// label of the tree node that will be attached here
    pub next_label: Surface,
    pub length: usize,
    /// a vertex on the hole
    pub vertex: VertexId,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub mesh: SurfaceMesh,
    pub frontier: Vec<FrontierHole>,
    /// number of log entries applied up to this stage
    pub moves: usize,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<Stage>,
    pub log: Vec<MoveRecord>,
}

impl Tower {
    pub fn meshes(&self) -> impl Iterator<Item = &SurfaceMesh> {
        self.stages.iter().map(|s| &s.mesh)
    }
}

struct Open {
    path: Vec<usize>,
    cursor: Cursor,
    vertex: VertexId,
}

fn attach(mesh: &SurfaceMesh, hole: Dart, piece: &Piece, log: &mut Vec<MoveRecord>) -> Result<(SurfaceMesh, Vec<VertexId>), MoveError> {
    let offset = mesh.next_vertex_id();
    let joined = moves::join(mesh, hole, &piece.mesh, piece.entrance, Alignment::default())?;
    log.push(MoveRecord::Join {
        hole,
        other: io::to_value(&piece.mesh, Some(&piece.meta())),
        other_hole: piece.entrance,
        alignment: Alignment::default(),
    });
    let exits = piece.exits.iter().map(|&d| piece.mesh.tail(d) + offset).collect();
    Ok((joined, exits))
}

fn piece_for(spec: &TreeSpec, cursor: &Cursor, entrance: usize) -> Result<Piece, MoveError> {
    if cursor.children(spec).len() == 2 {
        let (b, c) = pants_exits(entrance);
        seeds::sphere_pants(b, c)
    } else {
        seeds::piece(cursor.label(spec), entrance)
    }
}

fn frontier(mesh: &SurfaceMesh, spec: &TreeSpec, open: &[Open]) -> Vec<FrontierHole> {
    open.iter()
        .map(|o| FrontierHole {
            path: o.path.clone(),
            next_label: o.cursor.label(spec),
            length: hole_through(mesh, o.vertex)
                .and_then(|h| mesh.face_walk(h))
                .map_or(0, |w| w.len()),
            vertex: o.vertex,
        })
        .collect()
}

/// Stages `G_0 ⊂ G_1 ⊂ ... ⊂ G_depth`. `G_0` is the disc standing for the
/// root (joined with a pants when the root branches); stage `k` attaches one
/// piece per tree node at depth `k` onto its parent's open hole.
pub fn build_tower(spec: &TreeSpec, depth: usize) -> Result<Tower, MoveError> {
    let mut log = Vec::new();
    let mut mesh = seeds::disc();
    let root = Cursor::Node(spec.root);
    let root_children = root.children(spec);
    let disc_vertex = mesh.vertices()[0];
    let mut open: Vec<Open> = if root_children.len() == 2 {
        let hole = hole_through(&mesh, disc_vertex).expect("disc hole");
        let pants = piece_for(spec, &root, 3)?;
        let (joined, exits) = attach(&mesh, hole, &pants, &mut log)?;
        mesh = joined;
        root_children
            .into_iter()
            .zip(exits)
            .enumerate()
            .map(|(i, (cursor, vertex))| Open {
                path: vec![i],
                cursor,
                vertex,
            })
            .collect()
    } else {
        root_children
            .into_iter()
            .map(|cursor| Open {
                path: vec![0],
                cursor,
                vertex: disc_vertex,
            })
            .collect()
    };
    let mut stages = vec![Stage {
        frontier: frontier(&mesh, spec, &open),
        mesh: mesh.clone(),
        moves: log.len(),
    }];
    for _ in 0..depth {
        let mut next = Vec::new();
        for o in open {
            let hole = hole_through(&mesh, o.vertex).expect("open hole");
            let length = mesh.face_walk(hole).map_or(0, |w| w.len());
            let piece = piece_for(spec, &o.cursor, length)?;
            let (joined, exits) = attach(&mesh, hole, &piece, &mut log)?;
            mesh = joined;
            for (i, (cursor, vertex)) in o.cursor.children(spec).into_iter().zip(exits).enumerate() {
                let mut path = o.path.clone();
                path.push(i);
                next.push(Open { path, cursor, vertex });
            }
        }
        open = next;
        stages.push(Stage {
            frontier: frontier(&mesh, spec, &open),
            mesh: mesh.clone(),
            moves: log.len(),
        });
    }
    Ok(Tower { stages, log })
}

/// Whether `small` is a subgraph of `large` with the same vertex labels.
pub fn nests(small: &SurfaceMesh, large: &SurfaceMesh) -> bool {
    let vertices: BTreeSet<VertexId> = large.vertices().iter().copied().collect();
    small.vertices().iter().all(|v| vertices.contains(v))
        && small.edges().all(|e| large.find_edge(e.u, e.v).is_some())
}

/// Directions of the faces of a cube, in the order the unit's holes are
/// assigned to them.
const DIRECTIONS: [[i64; 3]; 6] = [[-1, 0, 0], [1, 0, 0], [0, -1, 0], [0, 1, 0], [0, 0, -1], [0, 0, 1]];

/// A tight sphere with six holes of length 3: four `(3, 3)` pants, each
/// later one joined onto an exit of an earlier one. Holes are listed by a
/// vertex on each, in the order `-x, +x, -y, +y, -z, +z`.
pub fn schwarz_unit() -> Result<(SurfaceMesh, [VertexId; 6]), MoveError> {
    let first = seeds::sphere_pants(3, 3)?;
    let mut mesh = first.mesh.clone();
    let mut holes = vec![mesh.tail(first.entrance)];
    holes.extend(first.exits.iter().map(|&d| mesh.tail(d)));
    let mut scratch = Vec::new();
    // join onto the first exit, the second exit, then the first new exit
    for target in [1usize, 1, 1] {
        let v = holes.remove(target);
        let hole = hole_through(&mesh, v).expect("unit hole");
        let pants = seeds::sphere_pants(3, 3)?;
        let (joined, exits) = attach(&mesh, hole, &pants, &mut scratch)?;
        mesh = joined;
        holes.extend(exits);
    }
    let holes: [VertexId; 6] = holes.try_into().expect("six holes");
    Ok((mesh, holes))
}

#[derive(Clone, Debug)]
pub struct SchwarzBlock {
    pub m: usize,
    pub mesh: SurfaceMesh,
    /// units glued face to face
    pub adjacencies: usize,
    pub unit_maxwell: i64,
    pub maxwell: i64,
}

impl SchwarzBlock {
    /// `m^3 f(unit) - 2 · 3 · adjacencies`
    pub fn predicted_maxwell(&self) -> i64 {
        (self.m as i64).pow(3) * self.unit_maxwell - 6 * self.adjacencies as i64
    }
}

/// `m × m × m` copies of the unit, neighbours identified along the holes
/// facing each other. The outer holes stay open.
pub fn schwarz_block_join(m: usize) -> Result<SchwarzBlock, MoveError> {
    if m == 0 {
        return Err(MoveError::Parameter("m must be at least 1".into()));
    }
    let (unit, unit_holes) = schwarz_unit()?;
    let mut mesh: Option<SurfaceMesh> = None;
    let mut placed: BTreeMap<[i64; 3], [VertexId; 6]> = BTreeMap::new();
    let mut adjacencies = 0;
    let size = m as i64;
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                let cell = [x, y, z];
                let neighbours: Vec<(usize, [i64; 3])> = DIRECTIONS
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.iter().sum::<i64>() < 0)
                    .map(|(k, d)| (k, [x + d[0], y + d[1], z + d[2]]))
                    .filter(|(_, c)| placed.contains_key(c))
                    .collect();
                let Some(cur) = mesh.take() else {
                    mesh = Some(unit.clone());
                    placed.insert(cell, unit_holes);
                    continue;
                };
                // join along the first placed neighbour
                let (k, nb) = neighbours[0];
                let target = hole_through(&cur, placed[&nb][k ^ 1]).expect("neighbour hole");
                let own = hole_through(&unit, unit_holes[k]).expect("unit hole");
                let offset = cur.next_vertex_id();
                let mut joined = moves::join(&cur, target, &unit, own, Alignment::default())?;
                let holes = unit_holes.map(|v| v + offset);
                adjacencies += 1;
                // then glue the remaining placed neighbours
                for &(k, nb) in &neighbours[1..] {
                    let first = hole_through(&joined, placed[&nb][k ^ 1]).expect("neighbour hole");
                    let second = hole_through(&joined, holes[k]).expect("own hole");
                    joined = moves::glue_holes(&joined, first, second, Alignment::default())?;
                    adjacencies += 1;
                }
                placed.insert(cell, holes);
                mesh = Some(joined);
            }
        }
    }
    let mesh = mesh.expect("at least one unit");
    Ok(SchwarzBlock {
        m,
        maxwell: mesh.maxwell_count(),
        unit_maxwell: unit.maxwell_count(),
        adjacencies,
        mesh,
    })
}
