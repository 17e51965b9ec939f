//! Property-based and randomized invariants for the geometry kernel, the
//! tile algebra and the assembled tilings.

mod common;

use common::{boundary_distance, sample_region, PI, TAU};
use pdw_core::exec;
use pdw_core::quadcore::{
    axis_of_parabola, boundary_values_closed_form, build_quadrangle, classify, dgn, eval_f,
    oracle_edge_lengths_seq, solve_tiles, Branch, RegionTag, TileParams,
};
use pdw_core::sphgeom::{corner_angle, distance, triangle_from_angles, UnitVector};
use pdw_core::tiling::{
    assemble, detect_axes, from_coords, is_isohedral, to_coords, verify, CoordRegion, Coords,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn point_strategy() -> impl Strategy<Value = UnitVector> {
    (0.0..PI, -PI..PI).prop_map(|(colat, lon)| UnitVector::from_polar(colat, lon).unwrap())
}

proptest! {
    #[test]
    fn distance_symmetric_and_triangular(
        p in point_strategy(),
        q in point_strategy(),
        r in point_strategy(),
    ) {
        prop_assert!((distance(p, q) - distance(q, p)).abs() < 1e-12);
        prop_assert!(distance(p, q) + distance(q, r) >= distance(p, r) - 1e-12);
    }

    #[test]
    fn corner_angles_complement(
        p in point_strategy(),
        q in point_strategy(),
        r in point_strategy(),
    ) {
        let near = |a: UnitVector, b: UnitVector| distance(a, b) < 1e-3 || distance(a, b) > PI - 1e-3;
        prop_assume!(!near(p, q) && !near(r, q));
        prop_assume!(distance(p, r) > 1e-6 && distance(p, r) < PI - 1e-6);
        let one = corner_angle(p, q, r).unwrap();
        let two = corner_angle(r, q, p).unwrap();
        prop_assert!((one + two - TAU).abs() < 1e-10);
    }

    #[test]
    fn triangles_satisfy_both_cosine_laws(
        a in 0.05f64..3.1,
        b in 0.05f64..3.1,
        c in 0.05f64..3.1,
    ) {
        prop_assume!(a + b + c > PI + 1e-3);
        prop_assume!(-a + b + c < PI - 1e-3 && a - b + c < PI - 1e-3 && a + b - c < PI - 1e-3);
        let t = triangle_from_angles(a, b, c).unwrap();
        prop_assert!(t.cosine_law_residual() < 1e-10);
        prop_assert!(t.dual_law_residual() < 1e-10);
    }

    #[test]
    fn quadratic_boundary_identity(
        n in 3u32..=40,
        alpha in 0.05f64..6.23,
        gamma in 0.05f64..6.23,
    ) {
        // Away from the cotangent singularities the closed product form of
        // f(1) and f(-1) matches direct evaluation.
        prop_assume!((alpha - PI).abs() > 0.05 && (gamma - PI).abs() > 0.05);
        prop_assume!(alpha < TAU - 0.05 && gamma < TAU - 0.05);
        let Ok(p) = TileParams::new(n, alpha, gamma) else { return Ok(()); };
        let (at1, at_neg1) = boundary_values_closed_form(&p);
        prop_assert!((eval_f(&p, 1.0) - at1).abs() < 1e-10);
        prop_assert!((eval_f(&p, -1.0) - at_neg1).abs() < 1e-10);
    }

    #[test]
    fn coeffs_symmetric(n in 3u32..=40, alpha in 0.05f64..6.23, gamma in 0.05f64..6.23) {
        let Ok(p) = TileParams::new(n, alpha, gamma) else { return Ok(()); };
        let c = pdw_core::quadcore::f_coeffs(&p);
        let d = pdw_core::quadcore::f_coeffs(&p.swapped());
        prop_assert_eq!(c, d);
    }
}

#[test]
fn duality_swaps_small_and_large_roots() {
    // Replacing (alpha, gamma) by (pi - alpha, pi - gamma) complements the
    // admissible edge length: the convex pentagon family pairs with the
    // concave one.
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let n = [3u32, 4, 6, 9][rng.random_range(0..4)];
        let p = sample_region(&mut rng, n, RegionTag::B1, 1e-3);
        let q = TileParams::new(n, PI - p.alpha(), PI - p.gamma()).unwrap();
        let cp = classify(&p);
        let cq = classify(&q);
        assert_eq!(cp.region.tag, RegionTag::B1);
        assert_eq!(cq.region.tag, RegionTag::B5);
        assert_eq!(cp.roots[0].1, Branch::Minus);
        assert_eq!(cq.roots[0].1, Branch::Plus);
        assert!(
            (cp.roots[0].0 + cq.roots[0].0 - PI).abs() < 1e-9,
            "roots should complement to pi"
        );
    }
}

#[test]
fn classify_multiplicity_matches_oracle_on_random_samples() {
    // 10^4 uniform samples over the full parameter square, excluding only
    // points that sit within 1e-6 of a region boundary.
    let total = 10_000usize;
    let draws: Vec<(u32, f64, f64)> = {
        let mut rng = StdRng::seed_from_u64(20260808);
        (0..total)
            .map(|_| {
                let n = [3u32, 4, 6, 9][rng.random_range(0..4)];
                (n, rng.random_range(0.0..TAU), rng.random_range(0.0..TAU))
            })
            .collect()
    };
    let failures: Vec<String> = exec::indexed_map(total, |i| {
        let (n, alpha, gamma) = draws[i];
        if boundary_distance(n, alpha, gamma) <= 1e-6 {
            return None;
        }
        let Ok(p) = TileParams::new(n, alpha, gamma) else {
            return None;
        };
        let want = classify(&p);
        let got = oracle_edge_lengths_seq(&p);
        if got.len() != want.roots.len() {
            return Some(format!(
                "n={n} alpha={alpha} gamma={gamma}: classify {} vs oracle {}",
                want.roots.len(),
                got.len()
            ));
        }
        for (o, (w, _)) in got.iter().zip(want.roots.iter()) {
            if (o - w).abs() > 1e-6 {
                return Some(format!(
                    "n={n} alpha={alpha} gamma={gamma}: root {o} vs {w}"
                ));
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{} disagreements:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn admitted_tiles_assemble_into_verified_isohedral_tilings() {
    let regions = [
        RegionTag::B1,
        RegionTag::B2,
        RegionTag::B3,
        RegionTag::B4,
        RegionTag::B5,
        RegionTag::B6,
        RegionTag::B7,
        RegionTag::B8,
    ];
    let mut rng = StdRng::seed_from_u64(99);
    let mut cases = Vec::new();
    for round in 0..125 {
        let n = [3u32, 4, 6, 11][round % 4];
        for tag in regions {
            cases.push((n, sample_region(&mut rng, n, tag, 2e-3)));
        }
    }
    let failures: Vec<String> = exec::indexed_map(cases.len(), |i| {
        let (n, p) = &cases[i];
        let c = classify(p);
        if c.roots.is_empty() {
            return Some(format!("{p:?}: no admissible root"));
        }
        for &(a, _) in &c.roots {
            let q = match build_quadrangle(p, a) {
                Ok(q) => q,
                Err(e) => return Some(format!("{p:?} a={a}: build failed: {e}")),
            };
            if q.check(1e-9).is_err() {
                return Some(format!("{p:?} a={a}: quadrangle invariants"));
            }
            let t = match assemble(*n, &q) {
                Ok(t) => t,
                Err(e) => return Some(format!("{p:?} a={a}: assemble failed: {e}")),
            };
            let report = verify(&t);
            if !report.all_pass() {
                return Some(format!("{p:?} a={a}: verify failed\n{report}"));
            }
            match is_isohedral(&t) {
                Ok(rep) if rep.isohedral && rep.transitive => {}
                Ok(_) => return Some(format!("{p:?} a={a}: standard assembly not transitive")),
                Err(e) => return Some(format!("{p:?} a={a}: isohedral check failed: {e}")),
            }
            // The concave branch keeps its meridian edge short.
            if (p.alpha() > PI || p.gamma() > PI) && a >= PI / 2.0 {
                return Some(format!("{p:?}: meridian edge {a} not below pi/2"));
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn standard_assemblies_expose_polar_and_equatorial_axes() {
    let mut rng = StdRng::seed_from_u64(4242);
    for n in [3u32, 4, 6] {
        for tag in [RegionTag::B1, RegionTag::B5, RegionTag::B2] {
            for _ in 0..5 {
                let p = sample_region(&mut rng, n, tag, 5e-3);
                let c = classify(&p);
                let (a, _) = c.roots[0];
                let q = build_quadrangle(&p, a).unwrap();
                let t = assemble(n, &q).unwrap();
                let axes = detect_axes(&t);
                let polar = axes
                    .iter()
                    .filter(|ax| ax.order as usize == n as usize)
                    .filter(|ax| (ax.direction.z.abs() - 1.0).abs() < 1e-7)
                    .count();
                assert!(polar >= 1, "missing {n}-fold polar axis for {p:?}");
                let equatorial = axes
                    .iter()
                    .filter(|ax| ax.order == 2 && ax.direction.z.abs() < 1e-7)
                    .count();
                assert_eq!(equatorial, n as usize, "two-fold axes for {p:?}");
            }
        }
    }
}

#[test]
fn chart_grid_roundtrips_and_verifies() {
    // A 100 x 100 grid inside each open rectangle.
    let n = 6u32;
    let beta = TAU / n as f64;
    let rects = [
        (beta - PI, 0.0, 0.0, PI / 2.0),
        (0.0, beta, 0.0, PI / 2.0),
        (beta, PI, 0.0, PI / 2.0),
        (0.0, beta, PI / 2.0, PI),
    ];
    let m = 100usize;
    for (phi_lo, phi_hi, a_lo, a_hi) in rects {
        let worst = exec::indexed_map(m, |i| {
            let mut worst: f64 = 0.0;
            for j in 0..m {
                let c = Coords {
                    phi: phi_lo + (phi_hi - phi_lo) * (i as f64 + 0.5) / m as f64,
                    a: a_lo + (a_hi - a_lo) * (j as f64 + 0.5) / m as f64,
                };
                let t = from_coords(n, c).expect("interior grid point");
                let back = to_coords(&t).expect("coords of a realized tiling");
                worst = worst
                    .max((back.phi - c.phi).abs())
                    .max((back.a - c.a).abs());
                let report = verify(&t);
                assert!(report.all_pass(), "({}, {}) fails verify\n{report}", c.phi, c.a);
            }
            worst
        })
        .into_iter()
        .fold(0.0f64, f64::max);
        assert!(worst < 1e-9, "roundtrip residual {worst}");
    }
}

#[test]
fn chart_regions_match_parameter_regions() {
    // The convex pentagon lands in the second rectangle, the concave family
    // in the fourth, the reflex-gamma families in the first.
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let p = sample_region(&mut rng, 6, RegionTag::B1, 1e-3);
        let tiles = solve_tiles(&p).unwrap();
        assert_eq!(
            pdw_core::tiling::region_of_coords(6, Coords { phi: tiles[0].phi, a: tiles[0].a }),
            Some(CoordRegion::A2)
        );
        let p = sample_region(&mut rng, 6, RegionTag::B5, 1e-3);
        let tiles = solve_tiles(&p).unwrap();
        assert_eq!(
            pdw_core::tiling::region_of_coords(6, Coords { phi: tiles[0].phi, a: tiles[0].a }),
            Some(CoordRegion::A4)
        );
        let p = sample_region(&mut rng, 6, RegionTag::B2, 1e-3);
        for t in solve_tiles(&p).unwrap() {
            assert_eq!(
                pdw_core::tiling::region_of_coords(6, Coords { phi: t.phi, a: t.a }),
                Some(CoordRegion::A1)
            );
        }
    }
}

#[test]
fn double_root_axis_identity_on_the_curve() {
    // axis(n, alpha, dgn_n(alpha)) stays the cosine of the single edge
    // length: the parabola's vertex pins the merged root.
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..500 {
        let n = [3u32, 5, 8, 21][rng.random_range(0..4)];
        let p = sample_region(&mut rng, n, RegionTag::B3, 1e-4);
        let axis = axis_of_parabola(&p);
        let roots = classify(&p).roots;
        assert_eq!(roots.len(), 1);
        assert!((roots[0].0.cos() - axis).abs() < 1e-7);
        let _ = dgn(n, p.alpha()).unwrap();
    }
}
