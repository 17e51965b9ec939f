//! Phase-diagram sampling of the `(alpha, gamma)` parameter square.
//!
//! Evaluates [`classify`](super::classify) on a regular grid of cell centers
//! over `(0, 2*pi)^2`, skipping a guard band around the singular lines
//! `alpha, gamma ∈ {pi/2, pi}`.  Rows are evaluated in parallel (under the
//! `parallel` feature) and assembled in deterministic row-major order.

use super::{classify, Branch, RegionTag, TileParams};
use crate::exec;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// Width of the excluded band around `pi/2` and `pi` on either axis.
pub const GUARD: f64 = 1e-6;

/// One classified grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSample {
    pub alpha: f64,
    pub gamma: f64,
    pub region: RegionTag,
    pub multiplicity: u8,
    pub a_minus: Option<f64>,
    pub a_plus: Option<f64>,
    pub discriminant: f64,
}

fn sample(n: u32, alpha: f64, gamma: f64) -> Option<PhaseSample> {
    let near_singular =
        |v: f64| (v - PI / 2.0).abs() <= GUARD || (v - PI).abs() <= GUARD;
    if near_singular(alpha) || near_singular(gamma) {
        return None;
    }
    let p = TileParams::new(n, alpha, gamma).ok()?;
    let c = classify(&p);
    let mut a_minus = None;
    let mut a_plus = None;
    for &(a, branch) in &c.roots {
        match branch {
            Branch::Minus => a_minus = Some(a),
            Branch::Plus => a_plus = Some(a),
            Branch::Double => {
                a_minus = Some(a);
                a_plus = Some(a);
            }
        }
    }
    Some(PhaseSample {
        alpha,
        gamma,
        region: c.region.tag,
        multiplicity: c.region.multiplicity,
        a_minus,
        a_plus,
        discriminant: super::discriminant(&p),
    })
}

fn row(n: u32, res: u32, i: u32) -> Vec<PhaseSample> {
    let alpha = (i as f64 + 0.5) * TAU / res as f64;
    (0..res)
        .filter_map(|j| {
            let gamma = (j as f64 + 0.5) * TAU / res as f64;
            sample(n, alpha, gamma)
        })
        .collect()
}

/// Classifies a `res x res` grid of cell centers; row-major, guard-band
/// points omitted.
pub fn grid(n: u32, res: u32) -> Vec<PhaseSample> {
    exec::indexed_map(res as usize, |i| row(n, res, i as u32))
        .into_iter()
        .flatten()
        .collect()
}

/// Sequential variant of [`grid`]; identical output.
pub fn grid_seq(n: u32, res: u32) -> Vec<PhaseSample> {
    exec::indexed_map_seq(res as usize, |i| row(n, res, i as u32))
        .into_iter()
        .flatten()
        .collect()
}
