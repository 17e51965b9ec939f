//! Wavefront OBJ export of a realized tiling.
//!
//! Every geodesic edge is subdivided into a configurable number of chords.
//! The file carries `v` records for the tiling vertices followed by the
//! subdivision points, one `l` polyline per edge, and one `f` polygon per
//! face tracing its subdivided boundary.  Coordinates are printed with 17
//! decimal places so they round-trip far below 1e-9.

use pdw_core::sphgeom::UnitVector;
use pdw_core::tiling::Tiling;
use std::fmt::Write as _;

/// Points strictly between `p` and `q` along the minor arc, at `chords - 1`
/// equal steps.
fn arc_interior(p: UnitVector, q: UnitVector, chords: u32) -> Vec<UnitVector> {
    let theta = pdw_core::sphgeom::distance(p, q);
    let sin_theta = theta.sin();
    (1..chords)
        .map(|s| {
            let t = s as f64 / chords as f64;
            let wp = ((1.0 - t) * theta).sin() / sin_theta;
            let wq = (t * theta).sin() / sin_theta;
            UnitVector::normalized(
                wp * p.x + wq * q.x,
                wp * p.y + wq * q.y,
                wp * p.z + wq * q.z,
            )
            .expect("interior arc point")
        })
        .collect()
}

/// Renders the tiling as OBJ text.
pub fn to_obj(t: &Tiling, chords: u32) -> String {
    let chords = chords.max(1);
    let sk = &t.skeleton;
    let mut out = String::new();
    out.push_str("# spherical tiling over a pseudo-double wheel\n");
    let _ = writeln!(out, "# {} faces, {} chords per edge", sk.face_count(), chords);

    let vfmt = |p: &UnitVector| format!("v {:.17} {:.17} {:.17}", p.x, p.y, p.z);
    for p in &t.positions {
        let _ = writeln!(out, "{}", vfmt(p));
    }

    // Subdivision points per edge; remember 1-based OBJ indices.
    let mut edge_points: Vec<Vec<usize>> = Vec::with_capacity(sk.edges().len());
    let mut next_index = t.positions.len() + 1;
    let mut point_block = String::new();
    for &(u, v) in sk.edges() {
        let interior = arc_interior(t.positions[u], t.positions[v], chords);
        let mut ids = Vec::with_capacity(interior.len());
        for p in interior {
            let _ = writeln!(point_block, "{}", vfmt(&p));
            ids.push(next_index);
            next_index += 1;
        }
        edge_points.push(ids);
    }
    out.push_str(&point_block);

    for (e, &(u, v)) in sk.edges().iter().enumerate() {
        let mut ids = vec![u + 1];
        ids.extend(&edge_points[e]);
        ids.push(v + 1);
        let strs: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "l {}", strs.join(" "));
    }

    for f in 0..sk.face_count() {
        let cyc = sk.faces()[f];
        let mut loop_ids: Vec<usize> = Vec::new();
        for k in 0..4 {
            let a = cyc[k];
            let b = cyc[(k + 1) % 4];
            loop_ids.push(a + 1);
            let e = sk.edge_id(a, b).expect("face edge");
            // Stored subdivision runs from the lower vertex index to the
            // higher; orient it along the traversal direction.
            let stored = &edge_points[e];
            if a < b {
                loop_ids.extend(stored.iter().copied());
            } else {
                loop_ids.extend(stored.iter().rev().copied());
            }
        }
        let strs: Vec<String> = loop_ids.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "f {}", strs.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdw_core::quadcore::{build_quadrangle, classify, TileParams};
    use pdw_core::tiling::assemble;

    #[test]
    fn vertices_roundtrip_through_the_text() {
        let p = TileParams::new(6, 1.9, 2.2).unwrap();
        let (a, _) = classify(&p).roots[0];
        let t = assemble(6, &build_quadrangle(&p, a).unwrap()).unwrap();
        let text = to_obj(&t, 8);
        let parsed: Vec<[f64; 3]> = text
            .lines()
            .filter(|l| l.starts_with("v "))
            .map(|l| {
                let mut it = l.split_whitespace().skip(1);
                [(); 3].map(|_| it.next().unwrap().parse().unwrap())
            })
            .collect();
        assert!(parsed.len() >= t.positions.len());
        for (p, q) in t.positions.iter().zip(parsed.iter()) {
            assert!(
                (p.x - q[0]).abs() < 1e-9 && (p.y - q[1]).abs() < 1e-9 && (p.z - q[2]).abs() < 1e-9
            );
        }
        // Every subdivision point still sits on the unit sphere.
        for q in &parsed {
            let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
        // One polyline per edge, one polygon per face.
        assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 24);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 12);
    }
}
