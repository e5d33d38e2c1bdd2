//! Construction, verification and repair of (3,6)-tight surface
//! triangulations, with generic rigidity testing in dimension three.
//!
//! * [`mesh`]: signed rotation systems, face tracing, invariants, JSON.
//! * [`sparsity`]: exhaustive and max-flow (3,6)-sparsity oracles.
//! * [`moves`]: 0-extension, vertex splitting, collars, local barycentric
//!   subdivision, joins and excisions.
//! * [`seeds`]: canonical building blocks and prescribed-boundary pieces.
//! * [`girth`]: superfaces, girth inequalities and the barycentric repair loop.
//! * [`model`]: tree descriptions of model surfaces and triangulation towers.
//! * [`rigidity`]: rigidity matrices and generic rank over a prime field.

pub mod error;
pub mod girth;
pub mod graph;
pub mod mesh;
pub mod model;
pub mod moves;
pub mod rigidity;
pub mod seeds;
pub mod sparsity;

pub use error::{FormatError, GirthError, MeshError, MoveError, SpecError};
pub use graph::Graph;
pub use mesh::{Dart, Edge, EdgeId, FaceWalk, ReducedGenus, Sign, SurfaceMesh, VertexId};
