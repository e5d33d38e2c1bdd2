use std::fmt;

use serde::{Serialize, Serializer};

use super::SurfaceMesh;
use crate::error::MeshError;

/// Reduced genus, stored doubled so that half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ReducedGenus(pub i64);

impl ReducedGenus {
    pub const SPHERE: Self = Self(0);
    pub const PROJECTIVE: Self = Self(1);
    pub const TORUS: Self = Self(2);

    pub fn twice(self) -> i64 {
        self.0
    }

    /// `6 * g_r`, always an integer.
    pub fn times_six(self) -> i64 {
        3 * self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for ReducedGenus {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl fmt::Display for ReducedGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for ReducedGenus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

/// `2·g_r` of a closed surface from its Euler characteristic.
pub fn twice_reduced_genus(euler: i64) -> ReducedGenus {
    ReducedGenus(2 - euler)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub vertices: usize,
    pub edges: usize,
    /// triangle faces (holes excluded)
    pub triangles: usize,
    pub holes: usize,
    pub hole_lengths: Vec<usize>,
    /// Euler characteristic with the holes counted as faces
    pub euler_closed: i64,
    pub orientable: bool,
    /// orientable genus, or the crosscap number when nonorientable
    pub genus: i64,
    pub reduced_genus: ReducedGenus,
    pub maxwell: i64,
}

impl SurfaceMesh {
    /// Topological invariants, cross-checked against the face walk identity
    /// `Σ(|c|-3) = 6 g_r + f - 6` over nontriangular faces.
    pub fn invariants(&self) -> Result<SurfaceInvariants, MeshError> {
        self.validate()?;
        let faces = self.faces();
        let hole_lengths = self.hole_lengths();
        let euler_closed = self.vertex_count() as i64 - self.edge_count() as i64 + faces.len() as i64;
        let orientable = self.is_orientable();
        let reduced_genus = twice_reduced_genus(euler_closed);
        let genus = if orientable {
            (2 - euler_closed) / 2
        } else {
            2 - euler_closed
        };
        let maxwell = self.maxwell_count();
        let lhs: i64 = faces.iter().map(|w| w.len() as i64 - 3).sum();
        let rhs = reduced_genus.times_six() + maxwell - 6;
        if lhs != rhs || (orientable && euler_closed % 2 != 0) {
            return Err(MeshError::Internal(format!(
                "face walk identity fails: {lhs} != {rhs}"
            )));
        }
        Ok(SurfaceInvariants {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            triangles: faces.len() - hole_lengths.len(),
            holes: hole_lengths.len(),
            hole_lengths,
            euler_closed,
            orientable,
            genus,
            reduced_genus,
            maxwell,
        })
    }
}
