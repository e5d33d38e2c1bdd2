//! `srs-mesh/1` JSON documents and the plain graph format.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{Dart, Edge, Sign, SurfaceMesh, VertexId};
use crate::error::FormatError;
use crate::graph::Graph;

pub const MESH_FORMAT: &str = "srs-mesh/1";

/// Optional metadata carried by piece documents.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PieceMeta {
    pub surface: String,
    pub entrance: usize,
    pub exits: Vec<usize>,
}

fn dart_value(d: Dart) -> Value {
    json!([d.edge, d.end])
}

/// Canonical JSON value (keys sorted, rotations started at their least dart,
/// holes named by canonical darts).
pub fn to_value(mesh: &SurfaceMesh, piece: Option<&PieceMeta>) -> Value {
    let mesh = mesh.canonicalized();
    let mut rotation = Map::new();
    for (v, rot) in &mesh.rotation {
        rotation.insert(v.to_string(), Value::Array(rot.iter().map(|&d| dart_value(d)).collect()));
    }
    let edges: Vec<Value> = mesh
        .edges
        .values()
        .map(|e| json!({"id": e.id, "u": e.u, "v": e.v, "sign": e.sign.value()}))
        .collect();
    let mut doc = Map::new();
    doc.insert("format".into(), json!(MESH_FORMAT));
    doc.insert("vertices".into(), json!(mesh.vertices));
    doc.insert("edges".into(), Value::Array(edges));
    doc.insert("rotation".into(), Value::Object(rotation));
    doc.insert(
        "holes".into(),
        Value::Array(mesh.holes.iter().map(|&d| dart_value(d)).collect()),
    );
    if let Some(p) = piece {
        doc.insert("piece".into(), serde_json::to_value(p).expect("piece meta"));
    }
    Value::Object(doc)
}

pub fn to_json(mesh: &SurfaceMesh) -> String {
    to_value(mesh, None).to_string()
}

pub fn to_json_with_piece(mesh: &SurfaceMesh, piece: &PieceMeta) -> String {
    to_value(mesh, Some(piece)).to_string()
}

fn as_u32(v: &Value, what: &str) -> Result<u32, FormatError> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| FormatError::Field(what.to_string()))
}

fn parse_dart(v: &Value) -> Result<Dart, FormatError> {
    let arr = v.as_array().ok_or_else(|| FormatError::Field("dart".into()))?;
    if arr.len() != 2 {
        return Err(FormatError::Field("dart must be [edge, end]".into()));
    }
    let end = as_u32(&arr[1], "dart end")?;
    Ok(Dart::new(as_u32(&arr[0], "dart edge")?, end.min(255) as u8))
}

/// Parse an `srs-mesh/1` document. Only the format is checked here; use
/// [`SurfaceMesh::validate`] for the mesh invariants.
pub fn from_value(doc: &Value) -> Result<(SurfaceMesh, Option<PieceMeta>), FormatError> {
    match doc.get("format").and_then(Value::as_str) {
        Some(MESH_FORMAT) => {}
        Some(other) => return Err(FormatError::UnknownFormat(other.to_string())),
        None => return Err(FormatError::Field("format".into())),
    }
    let vertices = doc
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Field("vertices".into()))?
        .iter()
        .map(|v| as_u32(v, "vertex"))
        .collect::<Result<Vec<VertexId>, _>>()?;
    let mut edges = Vec::new();
    for e in doc
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Field("edges".into()))?
    {
        let field = |k: &str| e.get(k).ok_or_else(|| FormatError::Field(format!("edge.{k}")));
        let sign = field("sign")?
            .as_i64()
            .and_then(Sign::from_value)
            .ok_or_else(|| FormatError::Field("edge.sign must be 1 or -1".into()))?;
        edges.push(Edge {
            id: as_u32(field("id")?, "edge.id")?,
            u: as_u32(field("u")?, "edge.u")?,
            v: as_u32(field("v")?, "edge.v")?,
            sign,
        });
    }
    let mut rotation = BTreeMap::new();
    for (k, rot) in doc
        .get("rotation")
        .and_then(Value::as_object)
        .ok_or_else(|| FormatError::Field("rotation".into()))?
    {
        let v: VertexId = k
            .parse()
            .map_err(|_| FormatError::Field(format!("rotation key {k}")))?;
        let darts = rot
            .as_array()
            .ok_or_else(|| FormatError::Field("rotation entry".into()))?
            .iter()
            .map(parse_dart)
            .collect::<Result<Vec<_>, _>>()?;
        rotation.insert(v, darts);
    }
    let holes = doc
        .get("holes")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Field("holes".into()))?
        .iter()
        .map(parse_dart)
        .collect::<Result<Vec<_>, _>>()?;
    let piece = match doc.get("piece") {
        Some(p) => Some(serde_json::from_value(p.clone()).map_err(|e| FormatError::Field(e.to_string()))?),
        None => None,
    };
    Ok((SurfaceMesh::from_parts(vertices, edges, rotation, holes), piece))
}

pub fn from_json(text: &str) -> Result<SurfaceMesh, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    Ok(from_value(&doc)?.0)
}

/// Plain graph JSON `{"vertices":[...], "edges":[[u,v],...]}`; an
/// `srs-mesh/1` document is accepted too (its graph part is used).
pub fn graph_from_json(text: &str) -> Result<Graph, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    if doc.get("format").is_some() {
        return Ok(from_value(&doc)?.0.graph());
    }
    let vertices = doc
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Field("vertices".into()))?
        .iter()
        .map(|v| as_u32(v, "vertex"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    for e in doc
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError::Field("edges".into()))?
    {
        let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| FormatError::Field("edge pair".into()))?;
        edges.push((as_u32(&pair[0], "edge")?, as_u32(&pair[1], "edge")?));
    }
    Ok(Graph::new(vertices, edges))
}

pub fn graph_to_json(g: &Graph) -> String {
    json!({"vertices": g.vertex_ids(), "edges": g.edge_pairs()}).to_string()
}

/// Graphviz DOT export; hole edges are drawn dashed.
pub fn to_dot(mesh: &SurfaceMesh) -> String {
    let mut hole_edges = std::collections::BTreeSet::new();
    for w in mesh.hole_walks() {
        for s in w.steps() {
            hole_edges.insert(s.dart.edge);
        }
    }
    let mut out = String::from("graph mesh {\n");
    for v in mesh.vertices() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in mesh.edges() {
        let mut attrs = Vec::new();
        if hole_edges.contains(&e.id) {
            attrs.push("style=dashed");
        }
        if e.sign == Sign::Negative {
            attrs.push("color=red");
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {} -- {};\n", e.u, e.v));
        } else {
            out.push_str(&format!("  {} -- {} [{}];\n", e.u, e.v, attrs.join(",")));
        }
    }
    out.push_str("}\n");
    out
}
