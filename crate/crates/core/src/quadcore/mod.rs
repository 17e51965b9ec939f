//! The tile algebra.
//!
//! A congruent-quadrangle tiling over a pseudo-double wheel with hub valence
//! `n` has a tile with inner angles `(alpha, beta, gamma, delta)` where
//! `beta = 2*pi/n` and `delta = 2*pi - alpha - gamma`, and meridian edge
//! length `a`.  The admissible `a` are exactly the roots of the monic
//! quadratic
//!
//! ```text
//! f(x) = x^2 - cot(pi/n) (cot alpha + cot gamma) x - cot alpha cot gamma
//! ```
//!
//! at `x = cos a`.  This module provides the quadratic and its discriminant,
//! the degeneracy curve `dgn` where the two roots merge, the eight-region
//! classification of the `(alpha, gamma)` parameter plane, the geometric
//! construction of the tile from two great circles, and an independent
//! brute-force oracle that rediscovers the admissible edge lengths without
//! ever touching the quadratic.

mod oracle;
pub mod phase;

pub use oracle::{oracle_edge_lengths, oracle_edge_lengths_seq};

use crate::sphgeom::{clamp_unit, corner_angle, distance, UnitVector};
use crate::tol;
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

#[inline]
fn cot(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    c / s
}

/// Tile family parameters: hub valence `n >= 3` and the two opposite inner
/// angles `alpha`, `gamma`.
///
/// `alpha` and `gamma` each live in `(0, pi) ∪ (pi, 2*pi)` and may not come
/// within [`tol::SINGULAR_GUARD`] of `pi/2` or `pi` (no tile exists there and
/// the cotangents degenerate).  `beta = 2*pi/n` and
/// `delta = 2*pi - alpha - gamma` are derived.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TileParams {
    n: u32,
    alpha: f64,
    gamma: f64,
}

impl TileParams {
    pub fn new(n: u32, alpha: f64, gamma: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::HubValenceTooSmall(n));
        }
        for (name, v) in [("alpha", alpha), ("gamma", gamma)] {
            if !(v > tol::SINGULAR_GUARD && v < TAU - tol::SINGULAR_GUARD) {
                return Err(Error::OutOfDomain {
                    name,
                    value: v,
                    domain: "(0, 2*pi) excluding pi/2 and pi",
                });
            }
            if (v - PI / 2.0).abs() <= tol::SINGULAR_GUARD {
                return Err(Error::SingularParameter {
                    name,
                    value: v,
                    excluded: "pi/2",
                });
            }
            if (v - PI).abs() <= tol::SINGULAR_GUARD {
                return Err(Error::SingularParameter {
                    name,
                    value: v,
                    excluded: "pi",
                });
            }
        }
        Ok(Self { n, alpha, gamma })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Hub angle `beta = 2*pi/n`.
    #[inline]
    pub fn beta(&self) -> f64 {
        TAU / self.n as f64
    }

    /// Fourth angle `delta = 2*pi - alpha - gamma`.
    #[inline]
    pub fn delta(&self) -> f64 {
        TAU - self.alpha - self.gamma
    }

    /// The parameters with `alpha` and `gamma` swapped.
    pub fn swapped(&self) -> TileParams {
        TileParams {
            n: self.n,
            alpha: self.gamma,
            gamma: self.alpha,
        }
    }
}

/// Which root of the tile quadratic an edge length comes from.  `Minus` is
/// the smaller `a` (larger `cos a`), `Plus` the larger, `Double` a merged
/// pair on the degeneracy curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
    Double,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Minus => write!(f, "minus"),
            Branch::Plus => write!(f, "plus"),
            Branch::Double => write!(f, "double"),
        }
    }
}

/// Coefficients `(c1, c0)` of the monic tile quadratic `x^2 + c1 x + c0`:
/// `c1 = -cot(pi/n) (cot alpha + cot gamma)`, `c0 = -cot alpha cot gamma`.
/// Symmetric under swapping `alpha` and `gamma`.
pub fn f_coeffs(p: &TileParams) -> (f64, f64) {
    let ca = cot(p.alpha);
    let cg = cot(p.gamma);
    let cn = cot(PI / p.n as f64);
    (-cn * (ca + cg), -ca * cg)
}

/// Evaluates the tile quadratic at `x`.
pub fn eval_f(p: &TileParams, x: f64) -> f64 {
    let (c1, c0) = f_coeffs(p);
    (x + c1) * x + c0
}

/// Closed product form of `(f(1), f(-1))`:
/// `f(±1) = ∓ csc alpha csc gamma csc(pi/n) sin(±pi/n + alpha + gamma)`.
///
/// An algebraic identity of the quadratic, exposed for cross-route checks.
pub fn boundary_values_closed_form(p: &TileParams) -> (f64, f64) {
    let pn = PI / p.n as f64;
    let csc = 1.0 / (p.alpha.sin() * p.gamma.sin() * pn.sin());
    let at_plus = -csc * (pn + p.alpha + p.gamma).sin();
    let at_minus = csc * (-pn + p.alpha + p.gamma).sin();
    (at_plus, at_minus)
}

/// The discriminant-scale quantity
/// `Delta = cot^2 gamma + 2 (2 tan^2(pi/n) + 1) cot alpha cot gamma + cot^2 alpha`.
///
/// Satisfies `c1^2 - 4 c0 = cot^2(pi/n) * Delta`, so the quadratic has a
/// double root exactly where `Delta = 0`.
pub fn discriminant(p: &TileParams) -> f64 {
    let ca = cot(p.alpha);
    let cg = cot(p.gamma);
    let tn = (PI / p.n as f64).tan();
    cg * cg + 2.0 * (2.0 * tn * tn + 1.0) * ca * cg + ca * ca
}

/// The degeneracy curve
/// `dgn_n(psi) = pi - arctan( cos^2(pi/n) (sin(pi/n) + 1)^{-2} tan psi )`
/// mapping `(pi/2, pi)` into `(pi, 3*pi/2)`, strictly decreasing and convex.
///
/// Along `gamma = dgn_n(alpha)` the quadratic's two roots merge.
pub fn dgn(n: u32, psi: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::HubValenceTooSmall(n));
    }
    if !(psi > PI / 2.0 && psi < PI) {
        return Err(Error::OutOfDomain {
            name: "psi",
            value: psi,
            domain: "(pi/2, pi)",
        });
    }
    let pn = PI / n as f64;
    let scale = pn.cos().powi(2) / (pn.sin() + 1.0).powi(2);
    Ok(PI - (scale * psi.tan()).atan())
}

/// The alpha value where the curve `gamma = dgn_n(alpha)` touches the line
/// `alpha + gamma = 2*pi - pi/n`.
pub fn dgn_tangency_alpha(n: u32) -> f64 {
    3.0 * PI / 4.0 - PI / (2.0 * n as f64)
}

/// Abscissa of the parabola's axis, `axis = cot(pi/n) (cot alpha + cot gamma) / 2`.
///
/// On the degeneracy curve it collapses to
/// `-sec(pi/n) (sin(pi/n) + 1) cot alpha`.
pub fn axis_of_parabola(p: &TileParams) -> f64 {
    let (c1, _) = f_coeffs(p);
    -c1 / 2.0
}

/// Real roots of the quadratic with `|x| < 1`, converted to edge lengths
/// `a = arccos x` and labeled by branch; ascending in `a`.
///
/// `Delta` within [`tol::DOUBLE_ROOT`] of zero yields one `Double` entry at
/// the axis; `Delta` below that is treated as having no real root (not an
/// error).  Roots with `|x| >= 1 - tol::REJECT_COS` are degenerate (`a` would
/// be `0` or `pi`) and are excluded.
pub fn edge_roots(p: &TileParams) -> Vec<(f64, Branch)> {
    let delta = discriminant(p);
    if delta < -tol::DOUBLE_ROOT {
        return Vec::new();
    }
    let axis = axis_of_parabola(p);
    let keep = |x: f64| x.abs() < 1.0 - tol::REJECT_COS;
    if delta <= tol::DOUBLE_ROOT {
        if keep(axis) {
            return vec![(clamp_unit(axis).acos(), Branch::Double)];
        }
        return Vec::new();
    }
    let half_width = 0.5 * cot(PI / p.n as f64) * delta.sqrt();
    let x_minus = axis + half_width; // larger x, smaller a
    let x_plus = axis - half_width;
    let mut out = Vec::with_capacity(2);
    if keep(x_minus) {
        out.push((clamp_unit(x_minus).acos(), Branch::Minus));
    }
    if keep(x_plus) {
        out.push((clamp_unit(x_plus).acos(), Branch::Plus));
    }
    out
}

/// Region of the `(alpha, gamma)` parameter plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionTag {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    Outside,
}

impl RegionTag {
    /// Number of distinct admissible tiles for parameters in this region.
    pub fn multiplicity(&self) -> u8 {
        match self {
            RegionTag::Outside => 0,
            RegionTag::B4 | RegionTag::B8 => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegionTag::B1 => "B1",
            RegionTag::B2 => "B2",
            RegionTag::B3 => "B3",
            RegionTag::B4 => "B4",
            RegionTag::B5 => "B5",
            RegionTag::B6 => "B6",
            RegionTag::B7 => "B7",
            RegionTag::B8 => "B8",
            RegionTag::Outside => "Outside",
        };
        f.write_str(s)
    }
}

/// Region tag plus its tile count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionId {
    pub tag: RegionTag,
    pub multiplicity: u8,
}

/// Result of [`classify`]: the region and the admissible edge lengths with
/// their branches.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub region: RegionId,
    /// Admissible meridian edge lengths, ascending, with branch labels.
    pub roots: Vec<(f64, Branch)>,
}

/// Classifies `(alpha, gamma)` into one of the eight tile regions (or
/// `Outside`) and returns the admissible edge lengths.
///
/// * `B1` — open pentagon `pi/2 < alpha, gamma < pi`,
///   `alpha + gamma < 2*pi - pi/n`; one tile on the `Minus` branch.
/// * `B2` — open triangle `pi/2 < alpha`, `pi < gamma`,
///   `alpha + gamma < 2*pi - pi/n`; one tile on the `Plus` branch.
/// * `B3` — the degeneracy curve `gamma = dgn_n(alpha)` for
///   `pi/2 < alpha < 3*pi/4 - pi/(2n)`; one double-root tile.  Detected by
///   `|Delta| <= tol::DOUBLE_ROOT`.
/// * `B4` — open set `pi/2 < alpha < 3*pi/4 - pi/(2n)`,
///   `2*pi - pi/n - alpha < gamma < dgn_n(alpha)`; two tiles.
/// * `B5` — mirror of `B1` across `alpha + gamma = pi`
///   (`alpha, gamma < pi/2`, `alpha + gamma > pi/n`); one tile, `Plus`.
/// * `B6`..`B8` — `B2`..`B4` with the roles of `alpha` and `gamma` swapped.
pub fn classify(p: &TileParams) -> Classification {
    let tag = region_tag(p);
    let all = edge_roots(p);
    let roots: Vec<(f64, Branch)> = match tag {
        RegionTag::Outside => Vec::new(),
        RegionTag::B1 => all.into_iter().filter(|r| r.1 == Branch::Minus).collect(),
        RegionTag::B2 | RegionTag::B5 | RegionTag::B6 => {
            all.into_iter().filter(|r| r.1 == Branch::Plus).collect()
        }
        RegionTag::B3 | RegionTag::B7 => {
            all.into_iter().filter(|r| r.1 == Branch::Double).collect()
        }
        RegionTag::B4 | RegionTag::B8 => all,
    };
    Classification {
        region: RegionId {
            tag,
            multiplicity: tag.multiplicity(),
        },
        roots,
    }
}

fn region_tag(p: &TileParams) -> RegionTag {
    let (alpha, gamma) = (p.alpha, p.gamma);
    let half = PI / 2.0;
    let line = TAU - PI / p.n as f64; // alpha + gamma on the no-tile boundary

    if alpha > half && alpha < PI && gamma > half && gamma < PI {
        if alpha + gamma < line {
            return RegionTag::B1;
        }
        return RegionTag::Outside;
    }
    if alpha > 0.0 && alpha < half && gamma > 0.0 && gamma < half {
        if alpha + gamma > PI / p.n as f64 {
            return RegionTag::B5;
        }
        return RegionTag::Outside;
    }
    if alpha > half && alpha < PI && gamma > PI && gamma < 1.5 * PI {
        return concave_side_tag(p, alpha, gamma, RegionTag::B2, RegionTag::B3, RegionTag::B4);
    }
    if gamma > half && gamma < PI && alpha > PI && alpha < 1.5 * PI {
        let swapped = p.swapped();
        return concave_side_tag(
            &swapped,
            gamma,
            alpha,
            RegionTag::B6,
            RegionTag::B7,
            RegionTag::B8,
        );
    }
    RegionTag::Outside
}

/// Shared logic for the half-plane where exactly one angle exceeds pi;
/// `small` is the angle in `(pi/2, pi)` and `large` its partner.
fn concave_side_tag(
    p: &TileParams,
    small: f64,
    large: f64,
    open_tag: RegionTag,
    curve_tag: RegionTag,
    ambiguous_tag: RegionTag,
) -> RegionTag {
    let line = TAU - PI / p.n as f64;
    let delta = discriminant(p);
    let on_curve = delta.abs() <= tol::DOUBLE_ROOT;
    let tangency = dgn_tangency_alpha(p.n);
    if on_curve && small < tangency {
        return curve_tag;
    }
    if small + large < line {
        return open_tag;
    }
    // Strictly above the line: two tiles in the sliver between the line and
    // the curve, but only left of the tangency point (beyond it every root
    // of the quadratic lands at cos a >= 1).
    if small + large > line && small < tangency && delta > tol::DOUBLE_ROOT {
        if let Ok(curve) = dgn(p.n, small) {
            if large < curve {
                return ambiguous_tag;
            }
        }
    }
    RegionTag::Outside
}

/// A realized tile: hub corner positions and the derived metric data.
///
/// The hub corner `north` carries angle `beta` between the two meridian
/// edges of length `a`; `v1` is the far corner with
/// `distance(north, v1) = pi - a`.
#[derive(Clone, Copy, Debug)]
pub struct Quadrangle {
    pub north: UnitVector,
    pub v0: UnitVector,
    pub v1: UnitVector,
    pub v2: UnitVector,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Quadrangle {
    /// Corner positions in counterclockwise order `(north, v0, v1, v2)`.
    pub fn corners(&self) -> [UnitVector; 4] {
        [self.north, self.v0, self.v1, self.v2]
    }

    /// Interior angles in the same corner order.
    pub fn angles(&self) -> [f64; 4] {
        [self.beta, self.alpha, self.delta, self.gamma]
    }

    /// Edge lengths following each corner: `north->v0 = a`, `v0->v1 = b`,
    /// `v1->v2 = c`, `v2->north = a`.
    pub fn edges(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.a]
    }

    /// Checks the defining metric relations within `eps`.
    pub fn check(&self, eps: f64) -> Result<()> {
        let d0 = distance(self.north, self.v0);
        let d2 = distance(self.north, self.v2);
        let diag = distance(self.north, self.v1);
        if (d0 - self.a).abs() > eps || (d2 - self.a).abs() > eps {
            return Err(Error::InvalidQuadrangle(format!(
                "meridian edges {d0}, {d2} differ from a = {}",
                self.a
            )));
        }
        if (diag - (PI - self.a)).abs() > eps {
            return Err(Error::InvalidQuadrangle(format!(
                "hub diagonal {diag} differs from pi - a = {}",
                PI - self.a
            )));
        }
        let at_north = corner_angle(self.v0, self.north, self.v2)
            .map_err(|e| Error::InvalidQuadrangle(e.to_string()))?;
        if (at_north - self.beta).abs() > eps {
            return Err(Error::InvalidQuadrangle(format!(
                "hub angle {at_north} differs from beta = {}",
                self.beta
            )));
        }
        Ok(())
    }

    /// Area by angle excess; `2*pi/n` for a valid tile.
    pub fn area(&self) -> f64 {
        self.alpha + self.beta + self.gamma + self.delta - TAU
    }
}

/// Realizes the tile for a given admissible edge length by the two-circle
/// construction.
///
/// The hub goes to the north pole with the meridian corners `v0`, `v2` at
/// colatitude `a`, longitudes `0` and `2*pi/n`.  The edge leaving `v0` bends
/// counterclockwise by `pi - alpha`, the edge leaving `v2` bends clockwise by
/// `pi - gamma`; each sweep is a great circle, and of their two intersection
/// points the far corner `v1` is the one consistent with hub angle `beta`
/// (equivalently, hub diagonal `pi - a`; the candidates are antipodal so the
/// choice is unambiguous for `a != pi/2`).
pub fn build_quadrangle(p: &TileParams, a: f64) -> Result<Quadrangle> {
    if !(a > 0.0 && a < PI) {
        return Err(Error::OutOfDomain {
            name: "a",
            value: a,
            domain: "(0, pi)",
        });
    }
    if (a - PI / 2.0).abs() <= tol::SINGULAR_GUARD {
        return Err(Error::SingularParameter {
            name: "a",
            value: a,
            excluded: "pi/2",
        });
    }
    let residual = eval_f(p, a.cos()).abs();
    if residual > tol::F_RESIDUAL {
        return Err(Error::NotATile { a, residual });
    }

    let beta = p.beta();
    let north = UnitVector::NORTH;
    let v0 = UnitVector::from_polar(a, 0.0)?;
    let v2 = UnitVector::from_polar(a, beta)?;

    // Departure directions of the two bounding great circles: continue each
    // meridian past its rim corner, then bend.
    let t0 = v0.tangent_toward(north)?.antipode();
    let d1 = t0.rotated_about(v0, PI - p.alpha);
    let t2 = v2.tangent_toward(north)?.antipode();
    let d2 = t2.rotated_about(v2, -(PI - p.gamma));

    let pole1 = {
        let c = v0.cross(d1);
        UnitVector::normalized(c[0], c[1], c[2])
            .map_err(|_| Error::DegenerateConstruction("first circle has no pole"))?
    };
    let pole2 = {
        let c = v2.cross(d2);
        UnitVector::normalized(c[0], c[1], c[2])
            .map_err(|_| Error::DegenerateConstruction("second circle has no pole"))?
    };
    let cut = pole1.cross(pole2);
    let cand = UnitVector::normalized(cut[0], cut[1], cut[2])
        .map_err(|_| Error::DegenerateConstruction("construction circles coincide (delta = pi)"))?;

    // The correct intersection point has hub diagonal pi - a; its antipode
    // has diagonal a, so for a != pi/2 the nearer candidate is unambiguous.
    let want = PI - a;
    let v1 = if (distance(north, cand) - want).abs() <= (distance(north, cand.antipode()) - want).abs()
    {
        cand
    } else {
        cand.antipode()
    };
    let diag_err = (distance(north, v1) - want).abs();
    if diag_err > tol::ORACLE {
        return Err(Error::DegenerateConstruction(
            "hub diagonal fails to close at the intersection point",
        ));
    }

    let q = Quadrangle {
        north,
        v0,
        v1,
        v2,
        alpha: p.alpha,
        beta,
        gamma: p.gamma,
        delta: p.delta(),
        a,
        b: distance(v0, v1),
        c: distance(v2, v1),
    };

    // Interior angles measured with the interior on the left of
    // (north, v0, v1, v2); the hub angle must be beta rather than 2*pi - beta.
    let measured = measure_angles(&q)?;
    let expect = q.angles();
    for (m, e) in measured.iter().zip(expect.iter()) {
        if (m - e).abs() > tol::ORACLE {
            return Err(Error::DegenerateConstruction(
                "realized interior angles disagree with the requested tile",
            ));
        }
    }
    // Cross-check b and c against the cosine law they solve:
    // cos(pi - a) = cos a cos b + sin a sin b cos alpha, likewise for c.
    let law = |edge: f64, bend: f64| {
        ((PI - a).cos() - (a.cos() * edge.cos() + a.sin() * edge.sin() * bend.cos())).abs()
    };
    if law(q.b, p.alpha) > tol::ORACLE || law(q.c, p.gamma) > tol::ORACLE {
        return Err(Error::DegenerateConstruction(
            "edge lengths fail the cosine law cross-check",
        ));
    }
    Ok(q)
}

/// Interior angles of the quadrangle at `(north, v0, v1, v2)`, counterclockwise
/// cycle: at each corner the angle from the outgoing edge to the incoming one.
pub fn measure_angles(q: &Quadrangle) -> Result<[f64; 4]> {
    let cs = q.corners();
    let mut out = [0.0; 4];
    for i in 0..4 {
        let prev = cs[(i + 3) % 4];
        let next = cs[(i + 1) % 4];
        out[i] = corner_angle(next, cs[i], prev)?;
    }
    Ok(out)
}

/// One admissible tile for given parameters: edge lengths, angles,
/// hub-corner longitudes `phi` and `phi_prime`, and the root branch.
///
/// `phi` is the longitude of `v2` minus that of `v1` in the assembled tiling;
/// `phi + phi_prime = 2*pi/n`.
#[derive(Clone, Copy, Debug)]
pub struct TileSolution {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub beta: f64,
    pub delta: f64,
    pub branch: Branch,
    pub phi: f64,
    pub phi_prime: f64,
}

/// Longitude offsets from the closed-form half-angle identities
/// `tan(phi/2) = -tan gamma cos a` and `tan(phi_prime/2) = -tan alpha cos a`,
/// with the branch fixed by `phi + phi_prime = 2*pi/n`.
pub fn phi_pair(p: &TileParams, a: f64) -> (f64, f64) {
    let x = a.cos();
    let phi = 2.0 * (-p.gamma.tan() * x).atan();
    let mut phi_prime = 2.0 * (-p.alpha.tan() * x).atan();
    if (phi + phi_prime - p.beta()).abs() > tol::ANGLE {
        phi_prime = p.beta() - phi;
    }
    (phi, phi_prime)
}

/// Solves for every admissible tile of the given parameters.
pub fn solve_tiles(p: &TileParams) -> Result<Vec<TileSolution>> {
    let classification = classify(p);
    let mut out = Vec::with_capacity(classification.roots.len());
    for &(a, branch) in &classification.roots {
        let q = build_quadrangle(p, a)?;
        let (phi, phi_prime) = phi_pair(p, a);
        out.push(TileSolution {
            a,
            b: q.b,
            c: q.c,
            beta: p.beta(),
            delta: p.delta(),
            branch,
            phi,
            phi_prime,
        });
    }
    Ok(out)
}
