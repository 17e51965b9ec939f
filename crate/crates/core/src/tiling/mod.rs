//! Realized tilings over pseudo-double wheels.
//!
//! A [`Tiling`] couples a skeleton with vertex positions on the sphere and
//! per-face labels (corner angles and following edge lengths, aligned with
//! the skeleton's counterclockwise face cycles).  [`assemble`] lays `2n`
//! copies of a tile around the two hubs in the standard alternating pattern;
//! [`verify`] checks the defining properties of an edge-to-edge monohedral
//! tiling; [`Coords`] is the `(phi, a)` chart under which those standard
//! tilings are in bijection with four open rectangles.

mod iso;
pub mod json;
mod layout;

pub use iso::{detect_axes, is_isohedral, IsohedralReport, RotationAxis};
pub use layout::{exhaustive_layouts, special_pair, special_tile_params};

use crate::pdwgraph::{build_skeleton, rim, PdwSkeleton, TilingLabels, NORTH, SOUTH};
use crate::quadcore::Quadrangle;
use crate::sphgeom::{corner_angle, distance, polygon_area, UnitVector};
use crate::tol;
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// Labels of one face: interior angle at each corner of the skeleton's face
/// cycle, and the length of the edge from each corner to the next.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceLabels {
    pub angles: [f64; 4],
    pub edges: [f64; 4],
}

/// A realized tiling: skeleton, vertex positions, face labels.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub skeleton: PdwSkeleton,
    pub positions: Vec<UnitVector>,
    pub faces: Vec<FaceLabels>,
}

impl Tiling {
    /// Hub valence `n` (the tiling has `2n` faces).
    pub fn hub_valence(&self) -> usize {
        self.skeleton.hub_valence()
    }

    /// Corner positions of a face, in cycle order.
    pub fn face_corners(&self, f: usize) -> [UnitVector; 4] {
        let cyc = self.skeleton.faces()[f];
        std::array::from_fn(|k| self.positions[cyc[k]])
    }

    /// Measured interior angles of a face (counterclockwise cycle, interior
    /// on the left).
    pub fn measured_angles(&self, f: usize) -> Result<[f64; 4]> {
        let c = self.face_corners(f);
        let mut out = [0.0; 4];
        for k in 0..4 {
            out[k] = corner_angle(c[(k + 1) % 4], c[k], c[(k + 3) % 4])?;
        }
        Ok(out)
    }

    /// Edge-length plus corner-angle labeling in the combinatorial form used
    /// by automorphism checks.  Each edge takes the label of its
    /// lowest-indexed bordering face.
    pub fn labels(&self) -> TilingLabels {
        let sk = &self.skeleton;
        let mut edge_lengths = vec![f64::NAN; sk.edges().len()];
        for f in (0..sk.face_count()).rev() {
            for (k, e) in sk.face_edge_ids(f).into_iter().enumerate() {
                edge_lengths[e] = self.faces[f].edges[k];
            }
        }
        TilingLabels {
            edge_lengths,
            corner_angles: self.faces.iter().map(|fl| fl.angles).collect(),
        }
    }
}

/// Arranges `2n` copies of a tile in the standard alternating pattern: hub
/// angle `beta` at both poles, `alpha`, `delta`, `gamma` alternating along
/// the rim; even rim vertices at colatitude `a` on the meridians `i * beta`,
/// odd ones at colatitude `pi - a` offset by the tile's own hub-corner
/// longitude.
pub fn assemble(n: u32, q: &Quadrangle) -> Result<Tiling> {
    if n < 3 {
        return Err(Error::HubValenceTooSmall(n));
    }
    q.check(tol::ORACLE)
        .map_err(|e| Error::InvalidQuadrangle(e.to_string()))?;
    let skeleton = build_skeleton(2 * n)?;
    let f = skeleton.face_count();
    let beta = TAU / n as f64;
    let phi_prime = q.v1.longitude();

    let mut positions = vec![UnitVector::NORTH; skeleton.vertex_count()];
    positions[NORTH] = UnitVector::NORTH;
    positions[SOUTH] = UnitVector::SOUTH;
    for i in 0..n as usize {
        positions[rim(2 * i, f)] = UnitVector::from_polar(q.a, i as f64 * beta)?;
        positions[rim(2 * i + 1, f)] =
            UnitVector::from_polar(PI - q.a, i as f64 * beta + phi_prime)?;
    }

    // North faces (N, v_{2i}, v_{2i+1}, v_{2i+2}) and south faces
    // (S, v_{2i+1}, v_{2i}, v_{2i-1}) carry the same (beta, alpha, delta,
    // gamma) corner pattern with edges (a, b, c, a).
    let labels = FaceLabels {
        angles: [q.beta, q.alpha, q.delta, q.gamma],
        edges: [q.a, q.b, q.c, q.a],
    };
    Ok(Tiling {
        skeleton,
        positions,
        faces: vec![labels; f],
    })
}

/// One verification check with its worst residual.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub max_residual: f64,
}

/// Outcome of [`verify`]; failures are entries, not errors.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:24} {}  (max residual {:.3e})",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.max_residual
            )?;
        }
        Ok(())
    }
}

/// Checks that a tiling is a genuine edge-to-edge monohedral tiling: edge
/// lengths agree across faces and with the realized arcs, interior angles
/// close up to `2*pi` around every vertex, the faces cover `4*pi`, all faces
/// are congruent to the first (directly or reflected), and no interior angle
/// degenerates to `pi`.  All residuals are compared at [`tol::ANGLE`].
pub fn verify(t: &Tiling) -> VerificationReport {
    verify_with(t, tol::ANGLE)
}

/// [`verify`] with an overridden tolerance (must be positive).
pub fn verify_with(t: &Tiling, eps: f64) -> VerificationReport {
    assert!(eps > 0.0, "verification tolerance must be positive");
    let sk = &t.skeleton;
    let mut checks = Vec::new();

    // Realized arc of each edge against the labels of both bordering faces.
    let mut edge_res: f64 = 0.0;
    for f in 0..sk.face_count() {
        let cyc = sk.faces()[f];
        for k in 0..4 {
            let arc = distance(t.positions[cyc[k]], t.positions[cyc[(k + 1) % 4]]);
            edge_res = edge_res.max((arc - t.faces[f].edges[k]).abs());
        }
    }
    checks.push(CheckResult {
        name: "edge_lengths_agree",
        pass: edge_res <= eps,
        max_residual: edge_res,
    });

    // Measured interior angles around every vertex sum to 2*pi.
    let mut sum_res: f64 = 0.0;
    let mut measure_fail = false;
    let mut sums = vec![0.0; sk.vertex_count()];
    for f in 0..sk.face_count() {
        match t.measured_angles(f) {
            Ok(angles) => {
                for (k, &v) in sk.faces()[f].iter().enumerate() {
                    sums[v] += angles[k];
                }
            }
            Err(_) => measure_fail = true,
        }
    }
    for &s in &sums {
        sum_res = sum_res.max((s - TAU).abs());
    }
    checks.push(CheckResult {
        name: "vertex_angle_sums",
        pass: !measure_fail && sum_res <= eps,
        max_residual: sum_res,
    });

    // Total measured area.
    let mut area = 0.0;
    for f in 0..sk.face_count() {
        if let Ok(angles) = t.measured_angles(f) {
            area += polygon_area(&t.face_corners(f), &angles).unwrap_or(f64::NAN);
        }
    }
    let area_res = (area - 2.0 * TAU).abs();
    checks.push(CheckResult {
        name: "total_area",
        pass: !measure_fail && area_res <= eps,
        max_residual: area_res,
    });

    // Mutual congruence of the labeled faces, directly or reflected.
    let reference = &t.faces[0];
    let mut congruence_res: f64 = 0.0;
    for fl in &t.faces {
        congruence_res = congruence_res.max(congruence_residual(reference, fl));
    }
    checks.push(CheckResult {
        name: "faces_congruent",
        pass: congruence_res <= eps,
        max_residual: congruence_res,
    });

    // No interior angle within tolerance of pi.
    let mut straight_margin: f64 = f64::INFINITY;
    for f in 0..sk.face_count() {
        if let Ok(angles) = t.measured_angles(f) {
            for v in angles {
                straight_margin = straight_margin.min((v - PI).abs());
            }
        }
    }
    checks.push(CheckResult {
        name: "no_straight_corner",
        pass: !measure_fail && straight_margin > eps,
        max_residual: straight_margin,
    });

    VerificationReport { checks }
}

/// Mismatch between two face label cycles, minimized over rotation and
/// reflection.
fn congruence_residual(a: &FaceLabels, b: &FaceLabels) -> f64 {
    let mut best = f64::INFINITY;
    for r in 0..4usize {
        let mut direct: f64 = 0.0;
        let mut reflected: f64 = 0.0;
        for k in 0..4 {
            direct = direct
                .max((a.angles[k] - b.angles[(k + r) % 4]).abs())
                .max((a.edges[k] - b.edges[(k + r) % 4]).abs());
            // Reversed traversal: angles in reverse corner order, each edge
            // pairing with the corner it used to precede.
            reflected = reflected
                .max((a.angles[k] - b.angles[(r + 4 - k) % 4]).abs())
                .max((a.edges[k] - b.edges[(r + 3 - k) % 4]).abs());
        }
        best = best.min(direct).min(reflected);
    }
    best
}

/// A point of the `(phi, a)` chart: `phi` is the longitude of `v_2` minus
/// that of `v_1`, `a` the meridian edge length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coords {
    pub phi: f64,
    pub a: f64,
}

/// The four open rectangles of the chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordRegion {
    A1,
    A2,
    A3,
    A4,
}

/// Which open rectangle contains the coordinates, if any:
/// `A1 = (2*pi/n - pi, 0) x (0, pi/2)`, `A2 = (0, 2*pi/n) x (0, pi/2)`,
/// `A3 = (2*pi/n, pi) x (0, pi/2)`, `A4 = (0, 2*pi/n) x (pi/2, pi)`.
/// Boundaries are excluded.
pub fn region_of_coords(n: u32, c: Coords) -> Option<CoordRegion> {
    let beta = TAU / n as f64;
    let (phi, a) = (c.phi, c.a);
    if a > 0.0 && a < PI / 2.0 {
        if phi > beta - PI && phi < 0.0 {
            return Some(CoordRegion::A1);
        }
        if phi > 0.0 && phi < beta {
            return Some(CoordRegion::A2);
        }
        if phi > beta && phi < PI {
            return Some(CoordRegion::A3);
        }
    }
    if a > PI / 2.0 && a < PI && phi > 0.0 && phi < beta {
        return Some(CoordRegion::A4);
    }
    None
}

/// Realizes the standard tiling with the given chart coordinates.
///
/// Errors when `(phi, a)` lies outside every admissible rectangle, naming
/// the bounds.
pub fn from_coords(n: u32, c: Coords) -> Result<Tiling> {
    if n < 3 {
        return Err(Error::HubValenceTooSmall(n));
    }
    let beta = TAU / n as f64;
    if region_of_coords(n, c).is_none() {
        return Err(Error::CoordsOutsideChart {
            phi: c.phi,
            a: c.a,
            bounds: format!(
                "({:.6}, 0)x(0, pi/2) | (0, {beta:.6})x(0, pi/2) | ({beta:.6}, pi)x(0, pi/2) | (0, {beta:.6})x(pi/2, pi)",
                beta - PI
            ),
        });
    }
    let skeleton = build_skeleton(2 * n)?;
    let f = skeleton.face_count();
    let phi_prime = beta - c.phi;

    let mut positions = vec![UnitVector::NORTH; skeleton.vertex_count()];
    positions[SOUTH] = UnitVector::SOUTH;
    for i in 0..n as usize {
        positions[rim(2 * i, f)] = UnitVector::from_polar(c.a, i as f64 * beta)?;
        positions[rim(2 * i + 1, f)] =
            UnitVector::from_polar(PI - c.a, i as f64 * beta + phi_prime)?;
    }
    let mut t = Tiling {
        skeleton,
        positions,
        faces: vec![
            FaceLabels {
                angles: [0.0; 4],
                edges: [0.0; 4],
            };
            f
        ],
    };
    // Measure the tile once off the realized geometry and stamp the shared
    // labels on every face.
    let angles = t.measured_angles(0)?;
    let c0 = t.face_corners(0);
    let edges = [
        distance(c0[0], c0[1]),
        distance(c0[1], c0[2]),
        distance(c0[2], c0[3]),
        distance(c0[3], c0[0]),
    ];
    let labels = FaceLabels { angles, edges };
    for fl in &mut t.faces {
        *fl = labels;
    }
    Ok(t)
}

/// Chart coordinates of a standard tiling: the signed hub angle from
/// `N -> v_1` to `N -> v_2`, and the arc from `N` to `v_0`.
pub fn to_coords(t: &Tiling) -> Result<Coords> {
    let f = t.skeleton.face_count();
    let north = t.positions[NORTH];
    let v1 = t.positions[rim(1, f)];
    let v2 = t.positions[rim(2, f)];
    let raw = corner_angle(v1, north, v2)?;
    let phi = if raw > PI { raw - TAU } else { raw };
    Ok(Coords {
        phi,
        a: distance(north, t.positions[rim(0, f)]),
    })
}

#[cfg(test)]
mod tests;
