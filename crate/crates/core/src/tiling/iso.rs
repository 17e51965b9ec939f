//! Isohedrality decisions and rotation-axis detection.

use super::Tiling;
use crate::pdwgraph::{automorphisms, is_label_preserving, naive_preserving, Automorphism};
use crate::sphgeom::UnitVector;
use crate::tol;
use crate::Result;

const TAU: f64 = std::f64::consts::TAU;

/// Outcome of [`is_isohedral`].
#[derive(Clone, Debug)]
pub struct IsohedralReport {
    /// The decision: the tiling is tile-transitive.
    pub isohedral: bool,
    /// Whether every graph automorphism of the skeleton respects the
    /// labeling (rotation-reversing ones compared against the reflected
    /// labeling).  Equivalent to isohedrality for hub valence `n >= 4`.
    pub all_automorphisms_preserving: bool,
    /// Whether the strictly label-preserving subgroup (the symmetries the
    /// tiling actually has) acts transitively on faces.
    pub transitive: bool,
    /// A face pair no strict symmetry maps onto each other, when not
    /// transitive.
    pub witness: Option<(usize, usize)>,
}

/// Decides tile-transitivity of a verified tiling.
///
/// For hub valence `n >= 4` the decision is the automorphism criterion:
/// every graph automorphism of the skeleton must respect the edge lengths
/// and corner angles (rotation-reversing automorphisms against the
/// reflected labeling).  For `n = 3` the skeleton is the cube graph, whose
/// automorphism group is strictly larger than the map rotations, so the
/// criterion does not apply; there the decision falls back to the
/// definition: the subgroup of automorphisms induced by actual symmetries
/// (the per-corner label-preserving ones) must act transitively on faces.
/// Both routes agree wherever the criterion applies.
pub fn is_isohedral(t: &Tiling) -> Result<IsohedralReport> {
    let sk = &t.skeleton;
    let labels = t.labels();
    let autos = automorphisms(sk);

    let mut all_preserving = true;
    for auto in &autos {
        if !is_label_preserving(sk, auto, &labels, tol::ANGLE)? {
            all_preserving = false;
            break;
        }
    }

    let strict: Vec<&Automorphism> = autos
        .iter()
        .filter(|a| naive_preserving(sk, a, &labels, tol::ANGLE))
        .collect();

    // Orbit of each face under the strict subgroup.
    let nf = sk.face_count();
    let mut reachable_from_zero = vec![false; nf];
    for a in &strict {
        if let Some(g) = a.map_face(sk, 0) {
            reachable_from_zero[g] = true;
        }
    }
    let transitive = reachable_from_zero.iter().all(|&r| r);
    let witness = if transitive {
        None
    } else {
        reachable_from_zero
            .iter()
            .position(|&r| !r)
            .map(|g| (0, g))
    };

    let isohedral = if sk.hub_valence() >= 4 {
        all_preserving
    } else {
        transitive
    };
    Ok(IsohedralReport {
        isohedral,
        all_automorphisms_preserving: all_preserving,
        transitive,
        witness,
    })
}

/// A rotation axis of a tiling: unit direction and the largest order `k`
/// such that rotation by `2*pi/k` maps the labeled tiling onto itself.
#[derive(Clone, Copy, Debug)]
pub struct RotationAxis {
    pub direction: UnitVector,
    pub order: u32,
}

/// Finds all rotation axes of a verified tiling by testing candidate
/// directions through vertices, edge midpoints and face centers, for orders
/// `2..=n`.  Vertex matching uses [`tol::AXIS`].
pub fn detect_axes(t: &Tiling) -> Vec<RotationAxis> {
    let sk = &t.skeleton;
    let labels = t.labels();
    let mut candidates: Vec<UnitVector> = Vec::new();
    let push = |v: Option<UnitVector>, candidates: &mut Vec<UnitVector>| {
        let Some(mut u) = v else { return };
        // Canonical hemisphere so u and -u coincide.
        let flip = u.z < -tol::AXIS
            || (u.z.abs() <= tol::AXIS && u.y < -tol::AXIS)
            || (u.z.abs() <= tol::AXIS && u.y.abs() <= tol::AXIS && u.x < 0.0);
        if flip {
            u = u.antipode();
        }
        if !candidates
            .iter()
            .any(|c| (c.x - u.x).abs() + (c.y - u.y).abs() + (c.z - u.z).abs() < 1e-9)
        {
            candidates.push(u);
        }
    };

    for &p in &t.positions {
        push(Some(p), &mut candidates);
    }
    for &(u, v) in sk.edges() {
        let (p, q) = (t.positions[u], t.positions[v]);
        push(
            UnitVector::normalized(p.x + q.x, p.y + q.y, p.z + q.z).ok(),
            &mut candidates,
        );
    }
    for f in 0..sk.face_count() {
        let cs = t.face_corners(f);
        let sum = cs.iter().fold([0.0; 3], |acc, c| {
            [acc[0] + c.x, acc[1] + c.y, acc[2] + c.z]
        });
        push(
            UnitVector::normalized(sum[0], sum[1], sum[2]).ok(),
            &mut candidates,
        );
    }

    // A rotation axis can pierce a face (order up to 4 for quadrangles), a
    // vertex (up to the hub valence) or an edge midpoint (order 2).
    let max_order = (sk.hub_valence() as u32).max(4);
    let mut out = Vec::new();
    for u in candidates {
        let mut best = None;
        for k in (2..=max_order).rev() {
            if rotation_is_symmetry(t, &labels, u, TAU / k as f64) {
                best = Some(k);
                break;
            }
        }
        if let Some(order) = best {
            out.push(RotationAxis {
                direction: u,
                order,
            });
        }
    }
    out.sort_by(|a, b| {
        (b.order, a.direction.z, a.direction.y, a.direction.x)
            .partial_cmp(&(a.order, b.direction.z, b.direction.y, b.direction.x))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Whether rotation by `angle` about `axis` permutes the vertices within
/// [`tol::AXIS`] and the induced permutation respects the labels.
fn rotation_is_symmetry(t: &Tiling, labels: &crate::pdwgraph::TilingLabels, axis: UnitVector, angle: f64) -> bool {
    let sk = &t.skeleton;
    let nv = sk.vertex_count();
    let mut perm = vec![usize::MAX; nv];
    let mut taken = vec![false; nv];
    for (v, slot) in perm.iter_mut().enumerate() {
        let rotated = t.positions[v].rotated_about(axis, angle);
        let mut hit = usize::MAX;
        for w in 0..nv {
            let p = t.positions[w];
            let d2 = (rotated.x - p.x).powi(2) + (rotated.y - p.y).powi(2) + (rotated.z - p.z).powi(2);
            if d2.sqrt() <= tol::AXIS {
                hit = w;
                break;
            }
        }
        if hit == usize::MAX || taken[hit] {
            return false;
        }
        *slot = hit;
        taken[hit] = true;
    }
    // The induced permutation must be a graph automorphism...
    for &(u, v) in sk.edges() {
        if !sk.adjacent(perm[u], perm[v]) {
            return false;
        }
    }
    // ... that strictly preserves the labels (a rotation is a symmetry of
    // the labeled tiling, not merely of the point set).
    let auto = Automorphism {
        perm,
        action: crate::pdwgraph::RotationAction::Preserves,
    };
    naive_preserving(sk, &auto, labels, tol::AXIS)
}
