use std::collections::HashMap;

use super::{Dart, SurfaceMesh, VertexId};

/// One traversal step: leave the dart's vertex along `dart`, carrying the
/// local orientation `orientation` (±1) relative to that vertex's rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub dart: Dart,
    pub orientation: i8,
}

/// A closed facial walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub(crate) steps: Vec<Step>,
    pub(crate) verts: Vec<VertexId>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Vertex sequence: `vertices()[i]` is the tail of `steps()[i]`.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.verts.clone()
    }

    /// Least dart traversed with orientation +1 (the face identifier).
    pub fn canonical_dart(&self) -> Dart {
        self.steps[0].dart
    }

    pub fn is_cycle(&self) -> bool {
        let mut v = self.verts.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.verts.len()
    }
}

/// Result of tracing all faces of a rotation system (possibly restricted to
/// a sub-rotation system).
pub(crate) struct Tracing {
    pub faces: Vec<FaceWalk>,
    state_face: HashMap<(Dart, i8), usize>,
}

impl Tracing {
    pub fn face_of(&self, dart: Dart, orientation: i8) -> usize {
        self.state_face[&(dart, orientation)]
    }
}

/// Dart positions inside a rotation system.
pub(crate) struct RotationIndex<'a> {
    pub rotation: HashMap<VertexId, Vec<Dart>>,
    pub pos: HashMap<Dart, (VertexId, usize)>,
    pub mesh: &'a SurfaceMesh,
}

impl<'a> RotationIndex<'a> {
    pub fn full(mesh: &'a SurfaceMesh) -> Self {
        Self::from_rotation(
            mesh,
            mesh.rotation.iter().map(|(&v, r)| (v, r.clone())).collect(),
        )
    }

    pub fn from_rotation(mesh: &'a SurfaceMesh, rotation: HashMap<VertexId, Vec<Dart>>) -> Self {
        let mut pos = HashMap::new();
        for (&v, rot) in &rotation {
            for (i, &d) in rot.iter().enumerate() {
                pos.insert(d, (v, i));
            }
        }
        Self {
            rotation,
            pos,
            mesh,
        }
    }

    pub fn step(&self, s: Step) -> Step {
        let e = &self.mesh.edges[&s.dart.edge];
        let arrive = s.dart.opposite();
        let orientation = s.orientation * e.sign.value();
        let (w, i) = self.pos[&arrive];
        let rot = &self.rotation[&w];
        let n = rot.len();
        let next = if orientation > 0 {
            rot[(i + 1) % n]
        } else {
            rot[(i + n - 1) % n]
        };
        Step {
            dart: next,
            orientation,
        }
    }

    /// The same side of the same edge traversed in the other direction.
    pub fn reverse(&self, s: Step) -> Step {
        let e = &self.mesh.edges[&s.dart.edge];
        Step {
            dart: s.dart.opposite(),
            orientation: -s.orientation * e.sign.value(),
        }
    }

    pub fn trace(&self) -> Tracing {
        let mut darts: Vec<Dart> = self.pos.keys().copied().collect();
        darts.sort_unstable();
        let mut orbit_of: HashMap<(Dart, i8), usize> = HashMap::new();
        let mut orbits: Vec<Vec<Step>> = Vec::new();
        for &d in &darts {
            for o in [1i8, -1] {
                if orbit_of.contains_key(&(d, o)) {
                    continue;
                }
                let id = orbits.len();
                let start = Step {
                    dart: d,
                    orientation: o,
                };
                let mut cur = start;
                let mut orbit = Vec::new();
                loop {
                    orbit_of.insert((cur.dart, cur.orientation), id);
                    orbit.push(cur);
                    cur = self.step(cur);
                    if cur == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
        // pair each orbit with its reverse; a face is the pair
        let mut face_of_orbit: Vec<Option<usize>> = vec![None; orbits.len()];
        let mut faces: Vec<FaceWalk> = Vec::new();
        for &d in &darts {
            let oid = orbit_of[&(d, 1)];
            if face_of_orbit[oid].is_some() {
                continue;
            }
            let first = orbits[oid][0];
            let rid = orbit_of[&(self.reverse(first).dart, self.reverse(first).orientation)];
            // `d` is the least dart with orientation +1 among both orbits
            let orbit = &orbits[oid];
            let start = orbit
                .iter()
                .position(|s| s.dart == d && s.orientation == 1)
                .expect("start step");
            let mut steps: Vec<Step> = orbit[start..].iter().chain(&orbit[..start]).copied().collect();
            if rid == oid {
                steps.truncate(steps.len() / 2);
            }
            let verts = steps.iter().map(|s| self.mesh.tail(s.dart)).collect();
            let fid = faces.len();
            face_of_orbit[oid] = Some(fid);
            face_of_orbit[rid] = Some(fid);
            faces.push(FaceWalk { steps, verts });
        }
        let state_face = orbit_of
            .into_iter()
            .map(|(k, oid)| (k, face_of_orbit[oid].expect("every orbit has a face")))
            .collect();
        Tracing { faces, state_face }
    }
}

impl SurfaceMesh {
    pub(crate) fn tracing(&self) -> Tracing {
        RotationIndex::full(self).trace()
    }
}
