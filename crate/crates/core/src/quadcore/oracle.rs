//! Brute-force edge-length oracle.
//!
//! Rediscovers the admissible meridian edge lengths of a tile family by pure
//! geometry: for each `a` on a dense grid the two bounding great circles of
//! the would-be tile are intersected directly, and `a` is admissible exactly
//! when the hub diagonal of the resulting quadrangle closes to `pi - a`.
//! Nothing here evaluates the tile quadratic, so the scan is an independent
//! cross-check of [`classify`](super::classify) and
//! [`edge_roots`](super::edge_roots).
//!
//! Zeros of the closure residual are found by bisecting sign changes; merged
//! root pairs touch zero without crossing, so small local extrema are also
//! refined (golden-section) and kept when the full construction validates at
//! [`tol::ORACLE`].  The grid and the refinement order are fixed, so results
//! are deterministic whether or not the scan runs in parallel.

use super::TileParams;
use crate::exec;
use crate::sphgeom::{corner_angle, distance, UnitVector};
use crate::tol;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// Number of grid intervals over `(0, pi)`; keeps the step below
/// [`tol::ORACLE_STEP`].
const CELLS: usize = 31_416;

/// Local extrema of the residual smaller than this trigger refinement.
const DIP: f64 = 1e-3;

/// Scans `a` over `(0, pi)` (parallel grid evaluation when the `parallel`
/// feature is on) and returns every admissible edge length, ascending.
pub fn oracle_edge_lengths(p: &TileParams) -> Vec<f64> {
    let scan = Scan::new(p);
    let grid = exec::indexed_map(CELLS - 1, |i| scan.residual_pair(scan.grid_a(i)));
    finish(&scan, &grid)
}

/// Sequential variant of [`oracle_edge_lengths`]; same result, same order.
pub fn oracle_edge_lengths_seq(p: &TileParams) -> Vec<f64> {
    let scan = Scan::new(p);
    let grid = exec::indexed_map_seq(CELLS - 1, |i| scan.residual_pair(scan.grid_a(i)));
    finish(&scan, &grid)
}

fn finish(scan: &Scan, grid: &[(f64, f64)]) -> Vec<f64> {
    let mut found: Vec<f64> = Vec::new();
    for side in [Side::Pos, Side::Neg] {
        let r = |i: usize| match side {
            Side::Pos => grid[i].0,
            Side::Neg => grid[i].1,
        };
        let f = |a: f64| match side {
            Side::Pos => scan.residual_pair(a).0,
            Side::Neg => scan.residual_pair(a).1,
        };
        for i in 0..grid.len() - 1 {
            let (ra, rb) = (r(i), r(i + 1));
            if ra == 0.0 {
                push_validated(scan, side, scan.grid_a(i), &mut found);
            }
            if ra * rb < 0.0 {
                let root = bisect(&f, scan.grid_a(i), scan.grid_a(i + 1));
                push_validated(scan, side, root, &mut found);
            }
        }
        // Tangential zeros: a merged root pair dips toward zero without a
        // sign change.
        for i in 1..grid.len() - 1 {
            let (prev, mid, next) = (r(i - 1), r(i), r(i + 1));
            if mid.abs() < DIP && mid.abs() <= prev.abs() && mid.abs() < next.abs() {
                let sign = if mid != 0.0 { mid.signum() } else { prev.signum() };
                if prev.signum() != next.signum() && prev != 0.0 && next != 0.0 {
                    continue; // plain crossing, already bisected
                }
                let g = |a: f64| sign * f(a);
                let (at, val) = golden_min(&g, scan.grid_a(i - 1), scan.grid_a(i + 1));
                if val < -1e-14 {
                    // The dip crosses zero twice inside one cell.
                    let left = bisect(&g, scan.grid_a(i - 1), at);
                    let right = bisect(&g, at, scan.grid_a(i + 1));
                    push_validated(scan, side, left, &mut found);
                    push_validated(scan, side, right, &mut found);
                } else {
                    push_validated(scan, side, at, &mut found);
                }
            }
        }
    }
    found.sort_by(|a, b| a.total_cmp(b));
    found.dedup_by(|a, b| (*a - *b).abs() < 5e-7);
    found
}

fn push_validated(scan: &Scan, side: Side, a: f64, out: &mut Vec<f64>) {
    if scan.validate(side, a) {
        out.push(a);
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Pos,
    Neg,
}

/// Precomputed per-family constants for the grid scan.
struct Scan {
    beta: f64,
    alpha: f64,
    gamma: f64,
    cos_beta: f64,
    sin_beta: f64,
    // cos/sin of the bending angles pi - alpha and pi - gamma.
    bend0_cos: f64,
    bend0_sin: f64,
    bend2_cos: f64,
    bend2_sin: f64,
}

impl Scan {
    fn new(p: &TileParams) -> Self {
        let beta = p.beta();
        let (sin_beta, cos_beta) = beta.sin_cos();
        Scan {
            beta,
            alpha: p.alpha(),
            gamma: p.gamma(),
            cos_beta,
            sin_beta,
            bend0_cos: -p.alpha().cos(),
            bend0_sin: p.alpha().sin(),
            bend2_cos: -p.gamma().cos(),
            bend2_sin: p.gamma().sin(),
        }
    }

    #[inline]
    fn grid_a(&self, i: usize) -> f64 {
        (i + 1) as f64 * (PI / CELLS as f64)
    }

    /// Closure residuals of both intersection candidates at meridian length
    /// `a`, compared in cosines: `± q_z/|q| - cos(pi - a)`.
    ///
    /// This is the inlined two-circle construction: `v0` at longitude 0 and
    /// `v2` at longitude `beta`, both at colatitude `a`; each circle is the
    /// sweep after bending off the meridian (counterclockwise by
    /// `pi - alpha` at `v0`, clockwise by `pi - gamma` at `v2`); `q` is the
    /// cross product of the two circle poles.
    #[inline]
    fn residual_pair(&self, a: f64) -> (f64, f64) {
        let (sa, ca) = a.sin_cos();
        // Pole of the circle through v0; unit by construction.
        let p1 = [-ca * self.bend0_sin, self.bend0_cos, sa * self.bend0_sin];
        // Pole of the circle through v2: the v0-frame pole rotated by beta
        // (with the bend sign flipped).
        let q2 = [ca * self.bend2_sin, self.bend2_cos, -sa * self.bend2_sin];
        let p2 = [
            q2[0] * self.cos_beta - q2[1] * self.sin_beta,
            q2[0] * self.sin_beta + q2[1] * self.cos_beta,
            q2[2],
        ];
        let q = [
            p1[1] * p2[2] - p1[2] * p2[1],
            p1[2] * p2[0] - p1[0] * p2[2],
            p1[0] * p2[1] - p1[1] * p2[0],
        ];
        let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        if norm < 1e-14 {
            return (f64::NAN, f64::NAN);
        }
        let z = q[2] / norm;
        (z + ca, -z + ca)
    }

    /// Full geometric validation of a candidate edge length: rebuilds the
    /// quadrangle with explicit vectors and checks the hub diagonal, all four
    /// interior angles and the edge ranges at [`tol::ORACLE`].
    fn validate(&self, side: Side, a: f64) -> bool {
        if !(a > 1e-7 && a < PI - 1e-7) || (a - PI / 2.0).abs() <= tol::SINGULAR_GUARD {
            return false;
        }
        let delta = TAU - self.alpha - self.gamma;
        if (delta - PI).abs() <= tol::SINGULAR_GUARD || delta <= 0.0 || delta >= TAU {
            return false;
        }
        let north = UnitVector::NORTH;
        let Ok(v0) = UnitVector::from_polar(a, 0.0) else {
            return false;
        };
        let Ok(v2) = UnitVector::from_polar(a, self.beta) else {
            return false;
        };
        let (Ok(t0), Ok(t2)) = (v0.tangent_toward(north), v2.tangent_toward(north)) else {
            return false;
        };
        let d1 = t0.antipode().rotated_about(v0, PI - self.alpha);
        let d2 = t2.antipode().rotated_about(v2, -(PI - self.gamma));
        let c1 = v0.cross(d1);
        let c2 = v2.cross(d2);
        let (Ok(p1), Ok(p2)) = (
            UnitVector::normalized(c1[0], c1[1], c1[2]),
            UnitVector::normalized(c2[0], c2[1], c2[2]),
        ) else {
            return false;
        };
        let q = p1.cross(p2);
        let Ok(cand) = UnitVector::normalized(q[0], q[1], q[2]) else {
            return false;
        };
        let v1 = match side {
            Side::Pos => cand,
            Side::Neg => cand.antipode(),
        };
        if (distance(north, v1) - (PI - a)).abs() > tol::ORACLE {
            return false;
        }
        let b = distance(v0, v1);
        let c = distance(v2, v1);
        if !(b > 1e-7 && b < PI - 1e-7 && c > 1e-7 && c < PI - 1e-7) {
            return false;
        }
        let cycle = [north, v0, v1, v2];
        let expect = [self.beta, self.alpha, delta, self.gamma];
        for i in 0..4 {
            let Ok(angle) = corner_angle(cycle[(i + 1) % 4], cycle[i], cycle[(i + 3) % 4]) else {
                return false;
            };
            if (angle - expect[i]).abs() > tol::ORACLE {
                return false;
            }
        }
        true
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization; returns `(argmin, min)`.
fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
