//! JSON encoding of realized tilings.
//!
//! Schema:
//!
//! ```json
//! {
//!   "n": 6,
//!   "phi": -1.0471975511965976e0,
//!   "a": 1.2309594173407747e0,
//!   "vertices": [{"id": "N", "xyz": [0.0e0, 0.0e0, 1.0e0]}, ...],
//!   "faces": [{"corners": ["N", "v0", "v1", "v2"],
//!              "angles": [...4 floats...],
//!              "edges": [...4 floats...]}, ...]
//! }
//! ```
//!
//! Angles and lengths are radians; every float is written with 17
//! significant digits so values round-trip bit-for-bit.  Vertex ids are `N`,
//! `S`, `v0` .. `v{F-1}`; the face corner lists follow the skeleton's
//! counterclockwise cycles.

use super::{to_coords, FaceLabels, Tiling};
use crate::pdwgraph::{build_skeleton, rim, VertexId, NORTH, SOUTH};
use crate::sphgeom::UnitVector;
use crate::{Error, Result};
use serde::Deserialize;
use std::fmt::Write as _;

/// Formats with 17 significant digits (full f64 round-trip precision).
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn vertex_name(v: VertexId) -> String {
    match v {
        NORTH => "N".to_string(),
        SOUTH => "S".to_string(),
        _ => format!("v{}", v - 2),
    }
}

fn vertex_from_name(name: &str, face_count: usize) -> Result<VertexId> {
    match name {
        "N" => Ok(NORTH),
        "S" => Ok(SOUTH),
        _ => {
            let idx: usize = name
                .strip_prefix('v')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::MalformedDocument(format!("unknown vertex id {name:?}")))?;
            if idx >= face_count {
                return Err(Error::MalformedDocument(format!(
                    "rim index {idx} out of range for {face_count} faces"
                )));
            }
            Ok(rim(idx, face_count))
        }
    }
}

/// Serializes a tiling to the JSON schema.
pub fn to_json(t: &Tiling) -> Result<String> {
    let coords = to_coords(t)?;
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"n\": {},", t.hub_valence());
    let _ = writeln!(s, "  \"phi\": {},", float17(coords.phi));
    let _ = writeln!(s, "  \"a\": {},", float17(coords.a));
    s.push_str("  \"vertices\": [\n");
    for (v, p) in t.positions.iter().enumerate() {
        let _ = write!(
            s,
            "    {{\"id\": \"{}\", \"xyz\": [{}, {}, {}]}}",
            vertex_name(v),
            float17(p.x),
            float17(p.y),
            float17(p.z)
        );
        s.push_str(if v + 1 < t.positions.len() { ",\n" } else { "\n" });
    }
    s.push_str("  ],\n  \"faces\": [\n");
    let nf = t.skeleton.face_count();
    for f in 0..nf {
        let cyc = t.skeleton.faces()[f];
        let corners: Vec<String> = cyc.iter().map(|&v| format!("\"{}\"", vertex_name(v))).collect();
        let angles: Vec<String> = t.faces[f].angles.iter().map(|&x| float17(x)).collect();
        let edges: Vec<String> = t.faces[f].edges.iter().map(|&x| float17(x)).collect();
        let _ = write!(
            s,
            "    {{\"corners\": [{}], \"angles\": [{}], \"edges\": [{}]}}",
            corners.join(", "),
            angles.join(", "),
            edges.join(", ")
        );
        s.push_str(if f + 1 < nf { ",\n" } else { "\n" });
    }
    s.push_str("  ]\n}\n");
    Ok(s)
}

#[derive(Deserialize)]
struct Doc {
    n: u32,
    #[allow(dead_code)]
    phi: f64,
    #[allow(dead_code)]
    a: f64,
    vertices: Vec<VertexDoc>,
    faces: Vec<FaceDoc>,
}

#[derive(Deserialize)]
struct VertexDoc {
    id: String,
    xyz: [f64; 3],
}

#[derive(Deserialize)]
struct FaceDoc {
    corners: [String; 4],
    angles: [f64; 4],
    edges: [f64; 4],
}

/// Parses a tiling from the JSON schema, rebuilding the skeleton from `n`
/// and realigning each face's labels with the skeleton's face cycles.
pub fn from_json(text: &str) -> Result<Tiling> {
    let doc: Doc =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    if doc.n < 3 {
        return Err(Error::HubValenceTooSmall(doc.n));
    }
    let skeleton = build_skeleton(2 * doc.n)?;
    let f = skeleton.face_count();
    if doc.vertices.len() != skeleton.vertex_count() {
        return Err(Error::MalformedDocument(format!(
            "expected {} vertices, got {}",
            skeleton.vertex_count(),
            doc.vertices.len()
        )));
    }
    let mut positions = vec![None; skeleton.vertex_count()];
    for v in &doc.vertices {
        let id = vertex_from_name(&v.id, f)?;
        let p = UnitVector::new(v.xyz[0], v.xyz[1], v.xyz[2])
            .map_err(|e| Error::MalformedDocument(format!("vertex {}: {e}", v.id)))?;
        if positions[id].replace(p).is_some() {
            return Err(Error::MalformedDocument(format!("duplicate vertex {}", v.id)));
        }
    }
    let positions: Vec<UnitVector> = positions
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::MalformedDocument("missing vertex entries".into()))?;

    if doc.faces.len() != f {
        return Err(Error::MalformedDocument(format!(
            "expected {f} faces, got {}",
            doc.faces.len()
        )));
    }
    let mut faces = vec![None; f];
    for fd in &doc.faces {
        let ids: Vec<VertexId> = fd
            .corners
            .iter()
            .map(|s| vertex_from_name(s, f))
            .collect::<Result<_>>()?;
        let key: [VertexId; 4] = [ids[0], ids[1], ids[2], ids[3]];
        let fid = skeleton
            .face_with_vertices(key)
            .ok_or_else(|| Error::MalformedDocument(format!("no face with corners {:?}", fd.corners)))?;
        // Realign the stored cycle with the skeleton's.
        let cyc = skeleton.faces()[fid];
        let offset = (0..4)
            .find(|&o| (0..4).all(|k| ids[(k + o) % 4] == cyc[k]))
            .ok_or_else(|| {
                Error::MalformedDocument(format!(
                    "face {:?} traverses its corners against the skeleton orientation",
                    fd.corners
                ))
            })?;
        let labels = FaceLabels {
            angles: std::array::from_fn(|k| fd.angles[(k + offset) % 4]),
            edges: std::array::from_fn(|k| fd.edges[(k + offset) % 4]),
        };
        if faces[fid].replace(labels).is_some() {
            return Err(Error::MalformedDocument(format!(
                "duplicate face {:?}",
                fd.corners
            )));
        }
    }
    let faces: Vec<FaceLabels> = faces
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::MalformedDocument("missing face entries".into()))?;
    Ok(Tiling {
        skeleton,
        positions,
        faces,
    })
}
