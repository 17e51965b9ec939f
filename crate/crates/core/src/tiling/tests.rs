use super::*;
use crate::quadcore::{build_quadrangle, classify, TileParams};

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

fn double_root_quadrangle() -> Quadrangle {
    let p = special_tile_params();
    build_quadrangle(&p, (1.0f64 / 3.0).acos()).unwrap()
}

fn b1_quadrangle(n: u32, alpha: f64, gamma: f64) -> Quadrangle {
    let p = TileParams::new(n, alpha, gamma).unwrap();
    let (a, _) = classify(&p).roots[0];
    build_quadrangle(&p, a).unwrap()
}

#[test]
fn assemble_double_root_tile_verifies() {
    let t = assemble(6, &double_root_quadrangle()).unwrap();
    let report = verify(&t);
    assert!(report.all_pass(), "{report}");
    assert!(
        report.check("total_area").unwrap().max_residual < tol::ANGLE,
        "area must close to 4*pi"
    );
}

#[test]
fn assemble_matches_chart_coordinates() {
    let t = assemble(6, &double_root_quadrangle()).unwrap();
    let c = to_coords(&t).unwrap();
    assert!((c.phi + PI / 3.0).abs() < 1e-12, "phi = {}", c.phi);
    assert!((c.a - (1.0f64 / 3.0).acos()).abs() < 1e-12);
    assert_eq!(region_of_coords(6, c), Some(CoordRegion::A1));
}

#[test]
fn corner_angle_at_v1_is_delta() {
    let t = assemble(6, &double_root_quadrangle()).unwrap();
    let angles = t.measured_angles(0).unwrap();
    let delta = (5.0 / (2.0 * 7.0f64.sqrt())).acos();
    assert!((angles[2] - delta).abs() < 1e-9);
}

#[test]
fn cube_projection_assembles_and_is_isohedral() {
    let q = b1_quadrangle(3, 2.0 * PI / 3.0, 2.0 * PI / 3.0);
    let t = assemble(3, &q).unwrap();
    assert!(verify(&t).all_pass());
    let report = is_isohedral(&t).unwrap();
    assert!(report.isohedral);
    assert!(report.transitive);
}

#[test]
fn generic_assembly_is_isohedral_for_larger_hubs() {
    let q = b1_quadrangle(6, 1.9, 2.2);
    let t = assemble(6, &q).unwrap();
    assert!(verify(&t).all_pass());
    let report = is_isohedral(&t).unwrap();
    assert!(report.isohedral);
    assert!(report.all_automorphisms_preserving);
    assert!(report.transitive);
    assert!(report.witness.is_none());
}

#[test]
fn perturbed_tiling_fails_edge_agreement() {
    let mut t = assemble(6, &double_root_quadrangle()).unwrap();
    let p = t.positions[4];
    t.positions[4] = UnitVector::normalized(p.x + 1e-3, p.y, p.z).unwrap();
    let report = verify(&t);
    assert!(!report.check("edge_lengths_agree").unwrap().pass);
    assert!(!report.all_pass());
}

#[test]
fn coords_roundtrip_in_all_rectangles() {
    for n in [3u32, 6] {
        let beta = TAU / n as f64;
        let samples = [
            Coords {
                phi: (beta - PI) * 0.4,
                a: 0.7,
            },
            Coords {
                phi: beta * 0.3,
                a: 1.1,
            },
            Coords {
                phi: (beta + PI) / 2.0,
                a: 0.9,
            },
            Coords {
                phi: beta * 0.6,
                a: 2.0,
            },
        ];
        for c in samples {
            let t = from_coords(n, c).unwrap();
            assert!(verify(&t).all_pass(), "coords {c:?} n = {n}");
            let back = to_coords(&t).unwrap();
            assert!(
                (back.phi - c.phi).abs() < 1e-9 && (back.a - c.a).abs() < 1e-9,
                "roundtrip {c:?} -> {back:?}"
            );
        }
    }
}

#[test]
fn boundary_coords_are_rejected() {
    let err = from_coords(6, Coords { phi: PI / 6.0, a: FRAC_PI_2 }).unwrap_err();
    assert!(matches!(err, Error::CoordsOutsideChart { .. }));
    let msg = err.to_string();
    assert!(msg.contains("pi/2"), "bounds named in {msg}");
}

#[test]
fn fourth_rectangle_gives_concave_tiles() {
    let c = Coords {
        phi: PI / 8.0,
        a: 1.9,
    };
    let t = from_coords(6, c).unwrap();
    let angles = t.measured_angles(0).unwrap();
    assert!(angles[2] > PI, "delta = {} should be reflex", angles[2]);
    assert!(verify(&t).all_pass());
}

#[test]
fn region_of_coords_examples() {
    assert_eq!(
        region_of_coords(3, Coords { phi: -PI / 3.0 + 1e-3, a: 0.3 }),
        Some(CoordRegion::A1)
    );
    assert_eq!(
        region_of_coords(6, Coords { phi: PI / 6.0, a: PI / 4.0 }),
        Some(CoordRegion::A2)
    );
    assert_eq!(region_of_coords(6, Coords { phi: PI / 6.0, a: FRAC_PI_2 }), None);
    assert_eq!(
        region_of_coords(6, Coords { phi: PI / 2.0, a: 0.4 }),
        Some(CoordRegion::A3)
    );
    assert_eq!(
        region_of_coords(6, Coords { phi: PI / 6.0, a: 2.0 }),
        Some(CoordRegion::A4)
    );
}

#[test]
fn axes_of_standard_assembly() {
    let t = assemble(6, &double_root_quadrangle()).unwrap();
    let axes = detect_axes(&t);
    let six: Vec<_> = axes.iter().filter(|ax| ax.order == 6).collect();
    assert_eq!(six.len(), 1);
    assert!((six[0].direction.z.abs() - 1.0).abs() < 1e-9);
    let two: Vec<_> = axes.iter().filter(|ax| ax.order == 2).collect();
    assert_eq!(two.len(), 6);
    for ax in two {
        assert!(ax.direction.z.abs() < tol::AXIS, "two-fold axes lie in the equator");
    }
}

#[test]
fn cube_tiling_has_threefold_polar_axis() {
    let q = b1_quadrangle(3, 1.95, 2.25);
    let t = assemble(3, &q).unwrap();
    let axes = detect_axes(&t);
    assert!(axes
        .iter()
        .any(|ax| ax.order == 3 && (ax.direction.z.abs() - 1.0).abs() < 1e-9));
    assert_eq!(axes.iter().filter(|ax| ax.order == 2).count(), 3);
}

#[test]
fn json_roundtrip_preserves_everything() {
    let t = assemble(6, &double_root_quadrangle()).unwrap();
    let text = json::to_json(&t).unwrap();
    let back = json::from_json(&text).unwrap();
    for (p, q) in t.positions.iter().zip(back.positions.iter()) {
        assert_eq!((p.x, p.y, p.z), (q.x, q.y, q.z), "positions roundtrip bit-exactly");
    }
    for (a, b) in t.faces.iter().zip(back.faces.iter()) {
        assert_eq!(a, b);
    }
}

#[test]
fn json_rejects_garbage() {
    assert!(matches!(
        json::from_json("{\"n\": 6}"),
        Err(Error::MalformedDocument(_))
    ));
}

#[test]
fn layout_search_recovers_the_standard_class() {
    // A tile with all labels distinct pins the layout completely.
    let q = b1_quadrangle(6, 1.9, 2.2);
    let layouts = exhaustive_layouts(6, &q, false).unwrap();
    assert_eq!(layouts.len(), 1, "expected exactly the standard class");
    assert!(is_isohedral(&layouts[0]).unwrap().isohedral);
    // With mirrored copies allowed, a chiral tile adds only the mirror
    // image of the standard layout; both are tile-transitive.
    let layouts = exhaustive_layouts(6, &q, true).unwrap();
    assert_eq!(layouts.len(), 2);
    for t in &layouts {
        assert!(is_isohedral(t).unwrap().isohedral);
    }
}

#[test]
fn layout_search_with_mirror_symmetric_tile() {
    // alpha = gamma gives the tile a mirror symmetry, so reflected
    // placements collapse onto the same geometric class.
    let q = b1_quadrangle(6, 2.0 * PI / 3.0, 2.0 * PI / 3.0);
    let layouts = exhaustive_layouts(6, &q, true).unwrap();
    assert_eq!(layouts.len(), 1);
    assert!(is_isohedral(&layouts[0]).unwrap().isohedral);
}

#[test]
fn one_step_rim_rotation_preserves_standard_labels() {
    // v_i -> v_{i+1} with the hubs swapped reverses the rotation system; it
    // carries the standard labeling onto its own mirror, which counts as
    // label-preserving.
    use crate::pdwgraph::{is_label_preserving, rim, Automorphism, NORTH, SOUTH};
    let q = b1_quadrangle(6, 1.9, 2.2);
    let t = assemble(6, &q).unwrap();
    let sk = &t.skeleton;
    let f = sk.face_count();
    let mut perm = vec![0; sk.vertex_count()];
    perm[NORTH] = SOUTH;
    perm[SOUTH] = NORTH;
    for i in 0..f {
        perm[rim(i, f)] = rim(i + 1, f);
    }
    let action = sk.rotation_action(&perm).expect("a map automorphism");
    assert_eq!(action, crate::pdwgraph::RotationAction::Reverses);
    let auto = Automorphism { perm, action };
    assert!(is_label_preserving(sk, &auto, &t.labels(), 1e-9).unwrap());
}

#[test]
fn label_violating_automorphisms_are_rejected() {
    // On the searched non-transitive layout some automorphism maps an
    // a-edge onto the b-edge; such a map can never respect the labels.
    use crate::pdwgraph::{automorphisms, is_label_preserving};
    let (_, t) = special_pair().unwrap();
    let labels = t.labels();
    let sk = &t.skeleton;
    let mut saw_length_violation = false;
    for auto in automorphisms(sk) {
        if auto.action != crate::pdwgraph::RotationAction::Preserves {
            continue;
        }
        let moves_a_onto_b = sk.edges().iter().enumerate().any(|(e, _)| {
            let image = auto.map_edge(sk, e).unwrap();
            (labels.edge_lengths[e] - labels.edge_lengths[image]).abs() > 1e-6
        });
        if moves_a_onto_b {
            saw_length_violation = true;
            assert!(!is_label_preserving(sk, &auto, &labels, 1e-9).unwrap());
        }
    }
    assert!(saw_length_violation, "some rotation mixes the edge classes");
}

#[test]
fn meridian_swap_pairs_complementary_tiles() {
    // Rejoining the hubs to the opposite rim vertices of a convex-family
    // tiling yields the tiling of the complementary parameters with the
    // roles of the two bend angles exchanged: the new tile is
    // Q(n, pi - gamma, pi - alpha) with meridian length pi - a.
    let (alpha, gamma) = (1.9, 2.1);
    let p1 = TileParams::new(6, alpha, gamma).unwrap();
    let (a1, _) = classify(&p1).roots[0];
    let t = assemble(6, &build_quadrangle(&p1, a1).unwrap()).unwrap();

    let p2 = TileParams::new(6, PI - gamma, PI - alpha).unwrap();
    let (a2, _) = classify(&p2).roots[0];
    assert!((a1 + a2 - PI).abs() < 1e-9, "edge lengths complement");
    let q2 = build_quadrangle(&p2, a2).unwrap();

    // New tile read off the old positions: (N, v1, v2, v3).
    use crate::pdwgraph::rim;
    let f = t.skeleton.face_count();
    let corners = [
        t.positions[crate::pdwgraph::NORTH],
        t.positions[rim(1, f)],
        t.positions[rim(2, f)],
        t.positions[rim(3, f)],
    ];
    let expect_edges = [q2.a, q2.b, q2.c, q2.a];
    for k in 0..4 {
        let arc = crate::sphgeom::distance(corners[k], corners[(k + 1) % 4]);
        assert!(
            (arc - expect_edges[k]).abs() < 1e-9,
            "edge {k}: {arc} vs {}",
            expect_edges[k]
        );
    }
    let mut angles = [0.0; 4];
    for k in 0..4 {
        angles[k] =
            corner_angle(corners[(k + 1) % 4], corners[k], corners[(k + 3) % 4]).unwrap();
    }
    let expect_angles = [q2.beta, q2.alpha, q2.delta, q2.gamma];
    for k in 0..4 {
        assert!(
            (angles[k] - expect_angles[k]).abs() < 1e-9,
            "angle {k}: {} vs {}",
            angles[k],
            expect_angles[k]
        );
    }
}

#[test]
fn special_pair_shapes() {
    let (standard, other) = special_pair().unwrap();
    assert!(verify(&standard).all_pass());
    assert!(verify(&other).all_pass());
    assert!(is_isohedral(&standard).unwrap().isohedral);
    let report = is_isohedral(&other).unwrap();
    assert!(!report.isohedral);
    assert!(!report.transitive);
    assert!(report.witness.is_some());
}
