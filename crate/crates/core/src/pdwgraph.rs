//! Pseudo-double wheel maps, their automorphisms, and perfect face-matchings
//! of the dual graph.
//!
//! Vertices are indexed `0 = N`, `1 = S`, `2 + i = v_i` for the rim cycle
//! `v_0 .. v_{F-1}`; the hub `N` joins every even rim vertex, `S` every odd
//! one.  Each vertex carries its cyclic (counterclockwise) edge order, so an
//! automorphism can be classified as rotation-preserving or
//! rotation-reversing.

use crate::{Error, Result};
use std::collections::HashMap;

/// Vertex index into a skeleton.
pub type VertexId = usize;
/// Edge index into [`PdwSkeleton::edges`].
pub type EdgeId = usize;
/// Face index into [`PdwSkeleton::faces`].
pub type FaceId = usize;

/// The pseudo-double wheel of `F` faces (`F` even, `F >= 6`): `F + 2`
/// vertices, `2F` edges, hub valence `n = F/2`.
#[derive(Clone, Debug)]
pub struct PdwSkeleton {
    face_count: u32,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    /// Face corner cycles, counterclockwise.
    faces: Vec<[VertexId; 4]>,
    face_index: HashMap<[VertexId; 4], FaceId>,
    /// Cyclic neighbor order per vertex (counterclockwise).
    rotation: Vec<Vec<VertexId>>,
    /// The two faces bordering each edge.
    edge_faces: Vec<[FaceId; 2]>,
}

/// Index of the hub vertex `N`.
pub const NORTH: VertexId = 0;
/// Index of the hub vertex `S`.
pub const SOUTH: VertexId = 1;

/// Index of the rim vertex `v_i`.
#[inline]
pub fn rim(i: usize, f: usize) -> VertexId {
    2 + i.rem_euclid(f)
}

/// Builds the pseudo-double wheel of `faces` faces.
pub fn build_skeleton(faces: u32) -> Result<PdwSkeleton> {
    if faces < 6 || !faces.is_multiple_of(2) {
        return Err(Error::BadFaceCount(faces));
    }
    let f = faces as usize;
    let n = f / 2;
    let vertex_count = f + 2;

    let mut edges = Vec::with_capacity(2 * f);
    let push = |u: VertexId, v: VertexId, edges: &mut Vec<(VertexId, VertexId)>| {
        edges.push((u.min(v), u.max(v)));
    };
    for i in 0..n {
        push(NORTH, rim(2 * i, f), &mut edges);
    }
    for i in 0..n {
        push(SOUTH, rim(2 * i + 1, f), &mut edges);
    }
    for i in 0..f {
        push(rim(i, f), rim(i + 1, f), &mut edges);
    }
    let edge_index: HashMap<_, _> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    // Counterclockwise cycles: north faces (N, v_{2i}, v_{2i+1}, v_{2i+2}),
    // south faces (S, v_{2i+1}, v_{2i}, v_{2i-1}).
    let mut face_cycles = Vec::with_capacity(f);
    for i in 0..n {
        face_cycles.push([NORTH, rim(2 * i, f), rim(2 * i + 1, f), rim(2 * i + 2, f)]);
    }
    for i in 0..n {
        face_cycles.push([
            SOUTH,
            rim(2 * i + 1, f),
            rim(2 * i, f),
            rim(2 * i + f - 1, f),
        ]);
    }
    let face_index: HashMap<_, _> = face_cycles
        .iter()
        .enumerate()
        .map(|(i, cyc)| {
            let mut key = *cyc;
            key.sort_unstable();
            (key, i)
        })
        .collect();

    // Cyclic neighbor order (counterclockwise): increasing even rim index at
    // N, decreasing odd at S; (v_{i-1}, v_{i+1}, N) at even rim vertices and
    // (v_{i+1}, v_{i-1}, S) at odd ones.
    let mut rotation = vec![Vec::new(); vertex_count];
    rotation[NORTH] = (0..n).map(|i| rim(2 * i, f)).collect();
    rotation[SOUTH] = (0..n).map(|i| rim((2 * n + 1 - 2 * i) % f, f)).collect();
    for i in 0..f {
        if i % 2 == 0 {
            rotation[rim(i, f)] = vec![rim(i + f - 1, f), rim(i + 1, f), NORTH];
        } else {
            rotation[rim(i, f)] = vec![rim(i + 1, f), rim(i + f - 1, f), SOUTH];
        }
    }

    let mut edge_faces = vec![[usize::MAX; 2]; edges.len()];
    for (fid, cyc) in face_cycles.iter().enumerate() {
        for k in 0..4 {
            let u = cyc[k];
            let v = cyc[(k + 1) % 4];
            let eid = edge_index[&(u.min(v), u.max(v))];
            if edge_faces[eid][0] == usize::MAX {
                edge_faces[eid][0] = fid;
            } else {
                debug_assert_eq!(edge_faces[eid][1], usize::MAX);
                edge_faces[eid][1] = fid;
            }
        }
    }
    debug_assert!(edge_faces.iter().all(|p| p[1] != usize::MAX));
    // Euler check: V - E + F = 2.
    debug_assert_eq!(vertex_count as i64 - edges.len() as i64 + f as i64, 2);

    Ok(PdwSkeleton {
        face_count: faces,
        edges,
        edge_index,
        faces: face_cycles,
        face_index,
        rotation,
        edge_faces,
    })
}

impl PdwSkeleton {
    pub fn face_count(&self) -> usize {
        self.face_count as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.face_count as usize + 2
    }

    /// Hub valence `n = F/2`.
    pub fn hub_valence(&self) -> usize {
        self.face_count as usize / 2
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Face corner cycles, counterclockwise, hub first.
    pub fn faces(&self) -> &[[VertexId; 4]] {
        &self.faces
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// The two faces bordering an edge.
    pub fn edge_faces(&self, e: EdgeId) -> [FaceId; 2] {
        self.edge_faces[e]
    }

    /// Face containing exactly this vertex set, if any.
    pub fn face_with_vertices(&self, mut key: [VertexId; 4]) -> Option<FaceId> {
        key.sort_unstable();
        self.face_index.get(&key).copied()
    }

    /// Edge ids along a face cycle: entry `k` joins corner `k` to corner
    /// `k + 1`.
    pub fn face_edge_ids(&self, f: FaceId) -> [EdgeId; 4] {
        let cyc = self.faces[f];
        std::array::from_fn(|k| {
            self.edge_id(cyc[k], cyc[(k + 1) % 4])
                .expect("face boundary edge exists")
        })
    }

    /// Faces sharing an edge with `f`.
    pub fn neighbor_faces(&self, f: FaceId) -> Vec<FaceId> {
        self.face_edge_ids(f)
            .iter()
            .map(|&e| {
                let [p, q] = self.edge_faces[e];
                if p == f {
                    q
                } else {
                    p
                }
            })
            .collect()
    }

    /// The canonical rotation-reversing automorphism `v_k -> v_{-k}` with
    /// both hubs fixed (a combinatorial mirror through the `v_0` meridian).
    pub fn mirror_automorphism(&self) -> Automorphism {
        let f = self.face_count as usize;
        let mut perm = vec![0; self.vertex_count()];
        perm[NORTH] = NORTH;
        perm[SOUTH] = SOUTH;
        for i in 0..f {
            perm[rim(i, f)] = rim(f - i, f);
        }
        let action = self.rotation_action(&perm);
        debug_assert_eq!(action, Some(RotationAction::Reverses));
        Automorphism {
            perm,
            action: action.unwrap_or(RotationAction::Reverses),
        }
    }

    /// Whether a vertex permutation preserves or reverses every cyclic edge
    /// order; `None` when the action is mixed (not a map automorphism).
    pub fn rotation_action(&self, perm: &[VertexId]) -> Option<RotationAction> {
        let mut seen: Option<RotationAction> = None;
        for v in 0..self.vertex_count() {
            let image: Vec<VertexId> = self.rotation[v].iter().map(|&w| perm[w]).collect();
            let target = &self.rotation[perm[v]];
            let here = if cyclically_equal(&image, target) {
                RotationAction::Preserves
            } else {
                let reversed: Vec<VertexId> = image.iter().rev().copied().collect();
                if cyclically_equal(&reversed, target) {
                    RotationAction::Reverses
                } else {
                    return None;
                }
            };
            match seen {
                None => seen = Some(here),
                Some(s) if s != here => return None,
                _ => {}
            }
        }
        seen
    }
}

fn cyclically_equal(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).any(|shift| (0..n).all(|i| a[i] == b[(i + shift) % n]))
}

/// Effect of an automorphism on the rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationAction {
    Preserves,
    Reverses,
}

/// A graph automorphism of a skeleton, stored as a vertex permutation plus
/// its orientation action.  On this family every graph automorphism respects
/// or globally reverses the cyclic orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub perm: Vec<VertexId>,
    pub action: RotationAction,
}

impl Automorphism {
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.perm[v]
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Vec<VertexId> {
        other.perm.iter().map(|&v| self.perm[v]).collect()
    }

    pub fn inverse_perm(&self) -> Vec<VertexId> {
        let mut inv = vec![0; self.perm.len()];
        for (v, &w) in self.perm.iter().enumerate() {
            inv[w] = v;
        }
        inv
    }

    /// Image of a face under the permutation, if the image is again a face.
    pub fn map_face(&self, sk: &PdwSkeleton, f: FaceId) -> Option<FaceId> {
        let cyc = sk.faces()[f];
        sk.face_with_vertices(std::array::from_fn(|k| self.perm[cyc[k]]))
    }

    /// Image of an edge id under the permutation.
    pub fn map_edge(&self, sk: &PdwSkeleton, e: EdgeId) -> Option<EdgeId> {
        let (u, v) = sk.edges()[e];
        sk.edge_id(self.perm[u], self.perm[v])
    }
}

/// The full graph automorphism group, by backtracking over
/// adjacency-preserving vertex bijections with degree pruning; lexicographic
/// order of the permutation vectors.
pub fn automorphisms(sk: &PdwSkeleton) -> Vec<Automorphism> {
    let v = sk.vertex_count();
    let adj: Vec<Vec<bool>> = (0..v)
        .map(|a| (0..v).map(|b| sk.adjacent(a, b)).collect())
        .collect();
    let degrees: Vec<usize> = (0..v).map(|x| sk.degree(x)).collect();

    let mut out = Vec::new();
    let mut perm: Vec<Option<VertexId>> = vec![None; v];
    let mut used = vec![false; v];
    search(sk, &adj, &degrees, 0, &mut perm, &mut used, &mut out);
    out
}

fn search(
    sk: &PdwSkeleton,
    adj: &[Vec<bool>],
    degrees: &[usize],
    next: VertexId,
    perm: &mut Vec<Option<VertexId>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Automorphism>,
) {
    let v = perm.len();
    if next == v {
        let p: Vec<VertexId> = perm.iter().map(|x| x.unwrap()).collect();
        let action = sk
            .rotation_action(&p)
            .expect("pseudo-double wheel automorphisms act on the rotation system");
        out.push(Automorphism { perm: p, action });
        return;
    }
    'candidates: for image in 0..v {
        if used[image] || degrees[image] != degrees[next] {
            continue;
        }
        for earlier in 0..next {
            let e_img = perm[earlier].unwrap();
            if adj[next][earlier] != adj[image][e_img] {
                continue 'candidates;
            }
        }
        perm[next] = Some(image);
        used[image] = true;
        search(sk, adj, degrees, next + 1, perm, used, out);
        perm[next] = None;
        used[image] = false;
    }
}

/// A perfect matching of the dual graph: one shared edge per face pair,
/// covering every face exactly once.  Stored as sorted edge ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceMatching {
    pub edges: Vec<EdgeId>,
}

impl FaceMatching {
    /// The matching carried over by an automorphism, when every image edge
    /// exists.
    pub fn mapped(&self, sk: &PdwSkeleton, auto: &Automorphism) -> Option<FaceMatching> {
        let mut edges = self
            .edges
            .iter()
            .map(|&e| auto.map_edge(sk, e))
            .collect::<Option<Vec<_>>>()?;
        edges.sort_unstable();
        Some(FaceMatching { edges })
    }
}

/// All perfect matchings of the dual graph by exhaustive backtracking over
/// the lowest unmatched face; canonically sorted.
pub fn perfect_face_matchings(sk: &PdwSkeleton) -> Vec<FaceMatching> {
    let nf = sk.face_count();
    let mut matched = vec![false; nf];
    let mut current = Vec::with_capacity(nf / 2);
    let mut out = Vec::new();
    match_faces(sk, &mut matched, &mut current, &mut out);
    out.sort();
    out
}

fn match_faces(
    sk: &PdwSkeleton,
    matched: &mut Vec<bool>,
    current: &mut Vec<EdgeId>,
    out: &mut Vec<FaceMatching>,
) {
    let Some(first) = matched.iter().position(|&m| !m) else {
        let mut edges = current.clone();
        edges.sort_unstable();
        out.push(FaceMatching { edges });
        return;
    };
    matched[first] = true;
    for e in sk.face_edge_ids(first) {
        let [p, q] = sk.edge_faces(e);
        let partner = if p == first { q } else { p };
        if matched[partner] {
            continue;
        }
        matched[partner] = true;
        current.push(e);
        match_faces(sk, matched, current, out);
        current.pop();
        matched[partner] = false;
    }
    matched[first] = false;
}

/// Edge lengths and per-corner angles over a skeleton: the data an
/// automorphism must respect.
#[derive(Clone, Debug)]
pub struct TilingLabels {
    /// Length per [`EdgeId`].
    pub edge_lengths: Vec<f64>,
    /// Interior angle per face corner, aligned with the face cycles.
    pub corner_angles: Vec<[f64; 4]>,
}

impl TilingLabels {
    fn validate(&self, sk: &PdwSkeleton) -> Result<()> {
        if self.edge_lengths.len() != sk.edges().len() {
            return Err(Error::IncompleteLabeling("edge length per edge required"));
        }
        if self.corner_angles.len() != sk.face_count() {
            return Err(Error::IncompleteLabeling("corner angles per face required"));
        }
        Ok(())
    }

    /// Angle at a given vertex of a given face.
    pub fn angle_at(&self, sk: &PdwSkeleton, f: FaceId, v: VertexId) -> Option<f64> {
        let k = sk.faces()[f].iter().position(|&w| w == v)?;
        Some(self.corner_angles[f][k])
    }
}

/// Whether an automorphism respects a labeling, with angle values compared at
/// tolerance `eps`.
///
/// A rotation-preserving automorphism must map every corner angle and edge
/// length onto an equal one.  A rotation-reversing automorphism is compared
/// against the reflected labeling: it respects the labels exactly when its
/// composition with the canonical combinatorial mirror does so directly, i.e.
/// when it carries the tiling onto the mirror image of itself.
pub fn is_label_preserving(
    sk: &PdwSkeleton,
    auto: &Automorphism,
    labels: &TilingLabels,
    eps: f64,
) -> Result<bool> {
    labels.validate(sk)?;
    let effective: Automorphism = match auto.action {
        RotationAction::Preserves => auto.clone(),
        RotationAction::Reverses => {
            let mirror = sk.mirror_automorphism();
            let perm = mirror.compose(auto);
            let action = sk.rotation_action(&perm);
            debug_assert_eq!(action, Some(RotationAction::Preserves));
            Automorphism {
                perm,
                action: RotationAction::Preserves,
            }
        }
    };
    Ok(naive_preserving(sk, &effective, labels, eps))
}

/// Per-corner, per-edge equality of the transported labeling.
pub(crate) fn naive_preserving(
    sk: &PdwSkeleton,
    auto: &Automorphism,
    labels: &TilingLabels,
    eps: f64,
) -> bool {
    for (e, &(u, v)) in sk.edges().iter().enumerate() {
        let Some(image) = sk.edge_id(auto.perm[u], auto.perm[v]) else {
            return false;
        };
        if (labels.edge_lengths[e] - labels.edge_lengths[image]).abs() > eps {
            return false;
        }
    }
    for f in 0..sk.face_count() {
        let Some(g) = auto.map_face(sk, f) else {
            return false;
        };
        let cyc = sk.faces()[f];
        for (k, &w) in cyc.iter().enumerate() {
            let Some(image_angle) = labels.angle_at(sk, g, auto.perm[w]) else {
                return false;
            };
            if (labels.corner_angles[f][k] - image_angle).abs() > eps {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_counts() {
        let sk = build_skeleton(8).unwrap();
        assert_eq!(sk.vertex_count(), 10);
        assert_eq!(sk.edges().len(), 16);
        assert_eq!(sk.face_count(), 8);
        assert!(build_skeleton(5).is_err());
        assert!(build_skeleton(4).is_err());
    }

    #[test]
    fn six_faces_is_the_cube_graph() {
        let sk = build_skeleton(6).unwrap();
        assert_eq!(sk.vertex_count(), 8);
        assert_eq!(sk.edges().len(), 12);
        for v in 0..sk.vertex_count() {
            assert_eq!(sk.degree(v), 3);
        }
        // Isomorphic to the hypercube graph on 3-bit strings.
        let cube_adjacent = |u: usize, v: usize| (u ^ v).count_ones() == 1;
        fn extend(
            sk: &PdwSkeleton,
            cube_adjacent: &dyn Fn(usize, usize) -> bool,
            perm: &mut Vec<Option<usize>>,
            used: &mut [bool; 8],
        ) -> bool {
            let Some(next) = perm.iter().position(|p| p.is_none()) else {
                return true;
            };
            for image in 0..8 {
                if used[image] {
                    continue;
                }
                let consistent = (0..8).filter_map(|w| perm[w].map(|iw| (w, iw))).all(
                    |(w, iw)| sk.adjacent(next, w) == cube_adjacent(image, iw),
                );
                if consistent {
                    perm[next] = Some(image);
                    used[image] = true;
                    if extend(sk, cube_adjacent, perm, used) {
                        return true;
                    }
                    perm[next] = None;
                    used[image] = false;
                }
            }
            false
        }
        let mut perm = vec![None; 8];
        let mut used = [false; 8];
        assert!(extend(&sk, &cube_adjacent, &mut perm, &mut used));
    }

    #[test]
    fn every_edge_touches_a_rim_vertex() {
        for f in [6u32, 8, 10, 14] {
            let sk = build_skeleton(f).unwrap();
            for &(u, v) in sk.edges() {
                assert!(
                    sk.degree(u) == 3 || sk.degree(v) == 3,
                    "edge ({u},{v}) misses all 3-valent vertices in F={f}"
                );
            }
        }
    }

    #[test]
    fn cube_automorphism_count() {
        let sk = build_skeleton(6).unwrap();
        assert_eq!(automorphisms(&sk).len(), 48);
    }

    #[test]
    fn large_wheel_automorphism_count_is_4n() {
        for f in [8u32, 10, 12] {
            let sk = build_skeleton(f).unwrap();
            assert_eq!(automorphisms(&sk).len(), 2 * f as usize);
        }
    }

    #[test]
    fn identity_is_always_present() {
        let sk = build_skeleton(10).unwrap();
        let id: Vec<VertexId> = (0..sk.vertex_count()).collect();
        assert!(automorphisms(&sk).iter().any(|a| a.perm == id));
    }

    #[test]
    fn group_closure_and_inverses() {
        for f in [6u32, 8, 12] {
            let sk = build_skeleton(f).unwrap();
            let autos = automorphisms(&sk);
            let perms: std::collections::HashSet<Vec<VertexId>> =
                autos.iter().map(|a| a.perm.clone()).collect();
            for a in &autos {
                assert!(perms.contains(&a.inverse_perm()));
                for b in &autos {
                    assert!(perms.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn cube_has_eight_perfect_face_matchings() {
        let sk = build_skeleton(6).unwrap();
        assert_eq!(perfect_face_matchings(&sk).len(), 8);
    }

    #[test]
    fn matching_count_matches_independent_recounter() {
        // Secondary exhaustive counter over the dual adjacency structure.
        fn count(sk: &PdwSkeleton, matched: &mut Vec<bool>) -> u64 {
            let Some(first) = matched.iter().position(|&m| !m) else {
                return 1;
            };
            matched[first] = true;
            let mut total = 0;
            for other in first + 1..sk.face_count() {
                if matched[other] {
                    continue;
                }
                let shares_edge = sk
                    .face_edge_ids(first)
                    .iter()
                    .any(|&e| sk.edge_faces(e).contains(&other));
                if shares_edge {
                    matched[other] = true;
                    total += count(sk, matched);
                    matched[other] = false;
                }
            }
            matched[first] = false;
            total
        }
        for f in [6u32, 8, 10, 12] {
            let sk = build_skeleton(f).unwrap();
            let direct = perfect_face_matchings(&sk).len() as u64;
            let recount = count(&sk, &mut vec![false; sk.face_count()]);
            assert_eq!(direct, recount, "F = {f}");
        }
    }

    #[test]
    fn matchings_cover_each_face_once() {
        let sk = build_skeleton(10).unwrap();
        for m in perfect_face_matchings(&sk) {
            let mut seen = vec![0u8; sk.face_count()];
            for &e in &m.edges {
                for face in sk.edge_faces(e) {
                    seen[face] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn matching_count_invariant_under_relabeling() {
        let sk = build_skeleton(8).unwrap();
        let matchings = perfect_face_matchings(&sk);
        let set: std::collections::BTreeSet<_> = matchings.iter().cloned().collect();
        for a in automorphisms(&sk) {
            let mapped: std::collections::BTreeSet<_> = matchings
                .iter()
                .map(|m| m.mapped(&sk, &a).expect("edges map to edges"))
                .collect();
            assert_eq!(set, mapped);
        }
    }

    #[test]
    fn mirror_automorphism_reverses() {
        let sk = build_skeleton(12).unwrap();
        let m = sk.mirror_automorphism();
        assert_eq!(m.action, RotationAction::Reverses);
        // Involution.
        let twice = m.compose(&m);
        assert_eq!(twice, (0..sk.vertex_count()).collect::<Vec<_>>());
    }

    #[test]
    fn labeling_arity_is_checked() {
        let sk = build_skeleton(6).unwrap();
        let id = Automorphism {
            perm: (0..sk.vertex_count()).collect(),
            action: RotationAction::Preserves,
        };
        let bad = TilingLabels {
            edge_lengths: vec![1.0; 3],
            corner_angles: vec![[1.0; 4]; sk.face_count()],
        };
        assert!(matches!(
            is_label_preserving(&sk, &id, &bad, 1e-9),
            Err(Error::IncompleteLabeling(_))
        ));
    }

    #[test]
    fn identity_preserves_any_labeling() {
        let sk = build_skeleton(8).unwrap();
        let id = Automorphism {
            perm: (0..sk.vertex_count()).collect(),
            action: RotationAction::Preserves,
        };
        let labels = TilingLabels {
            edge_lengths: (0..sk.edges().len()).map(|i| i as f64).collect(),
            corner_angles: (0..sk.face_count())
                .map(|f| std::array::from_fn(|k| (f * 4 + k) as f64))
                .collect(),
        };
        assert!(is_label_preserving(&sk, &id, &labels, 1e-9).unwrap());
    }
}
