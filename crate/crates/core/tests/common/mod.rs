//! Shared samplers for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use pdw_core::quadcore::{dgn, dgn_tangency_alpha, RegionTag, TileParams};
use rand::rngs::StdRng;
use rand::Rng;

pub const PI: f64 = std::f64::consts::PI;
pub const TAU: f64 = std::f64::consts::TAU;

/// Uniform draw from `(lo, hi)` bounded away from the ends by `margin`.
pub fn open_range(rng: &mut StdRng, lo: f64, hi: f64, margin: f64) -> f64 {
    rng.random_range(lo + margin..hi - margin)
}

/// A parameter pair inside the named region, with `margin` kept to every
/// bounding line or curve.
pub fn sample_region(rng: &mut StdRng, n: u32, tag: RegionTag, margin: f64) -> TileParams {
    let line = TAU - PI / n as f64;
    loop {
        let (alpha, gamma) = match tag {
            RegionTag::B1 => {
                let a = open_range(rng, PI / 2.0, PI, margin);
                let g = open_range(rng, PI / 2.0, PI, margin);
                (a, g)
            }
            RegionTag::B2 => {
                let a = open_range(rng, PI / 2.0, PI - PI / n as f64, margin);
                let g = open_range(rng, PI, 1.5 * PI, margin);
                (a, g)
            }
            RegionTag::B3 => {
                let a = open_range(rng, PI / 2.0, dgn_tangency_alpha(n), margin);
                (a, dgn(n, a).unwrap())
            }
            RegionTag::B4 => {
                let a = open_range(rng, PI / 2.0, dgn_tangency_alpha(n), margin);
                let lo = line - a;
                let hi = dgn(n, a).unwrap();
                if hi - lo < 2.5 * margin {
                    continue;
                }
                (a, open_range(rng, lo, hi, margin))
            }
            RegionTag::B5 => {
                let a = open_range(rng, 0.0, PI / 2.0, margin);
                let g = open_range(rng, 0.0, PI / 2.0, margin);
                (a, g)
            }
            RegionTag::B6 | RegionTag::B7 | RegionTag::B8 => {
                let mirror = match tag {
                    RegionTag::B6 => RegionTag::B2,
                    RegionTag::B7 => RegionTag::B3,
                    _ => RegionTag::B4,
                };
                let p = sample_region(rng, n, mirror, margin);
                (p.gamma(), p.alpha())
            }
            RegionTag::Outside => panic!("sample a named region"),
        };
        // Respect the side constraints of the open pentagon and its mirror.
        match tag {
            RegionTag::B1 | RegionTag::B2 if alpha + gamma >= line - margin => continue,
            RegionTag::B5 if alpha + gamma <= PI / n as f64 + margin => continue,
            RegionTag::B6 if alpha + gamma >= line - margin => continue,
            _ => {}
        }
        if let Ok(p) = TileParams::new(n, alpha, gamma) {
            return p;
        }
    }
}

/// Distance from `(alpha, gamma)` to the nearest region boundary: the
/// singular lines, the two diagonal lines, and the degeneracy curves.
pub fn boundary_distance(n: u32, alpha: f64, gamma: f64) -> f64 {
    let mut d = f64::INFINITY;
    for c in [0.0, PI / 2.0, PI, TAU] {
        d = d.min((alpha - c).abs()).min((gamma - c).abs());
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    d = d.min((alpha + gamma - (TAU - PI / n as f64)).abs() / sqrt2);
    d = d.min((alpha + gamma - PI / n as f64).abs() / sqrt2);
    if alpha > PI / 2.0 && alpha < PI {
        if let Ok(curve) = dgn(n, alpha) {
            d = d.min((gamma - curve).abs());
        }
    }
    if gamma > PI / 2.0 && gamma < PI {
        if let Ok(curve) = dgn(n, gamma) {
            d = d.min((alpha - curve).abs());
        }
    }
    d
}
