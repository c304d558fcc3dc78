use proptest::prelude::*;
use systole_core::balls::{ball_vertices, BallProfile};
use systole_core::covering::DistanceModel;
use systole_core::generators::{generate, Builtin, GeneratorParams};
use systole_core::{Surface, SurfaceError, Violation};

fn builtins() -> Vec<(Builtin, Surface)> {
    Builtin::ALL
        .into_iter()
        .map(|b| (b, generate(b, &GeneratorParams::default()).unwrap()))
        .collect()
}

#[test]
fn balls_grow_with_radius() {
    for (name, s) in builtins() {
        let model = DistanceModel::auto(&s);
        for v in [0, s.vertex_count() / 2, s.vertex_count() - 1] {
            let profile = BallProfile::new(&s, v, 2.0, model).unwrap();
            let radii = [0.0, 0.1, 0.25, 0.5, 0.8, 1.3, 2.0];
            for w in radii.windows(2) {
                let (small, big) = (ball_vertices(&s, v, w[0]), ball_vertices(&s, v, w[1]));
                assert!(small.iter().all(|x| big.contains(x)), "{name} v={v}");
                let (a, b) = (profile.area(w[0]), profile.area(w[1]));
                assert!(a.lower <= a.upper + 1e-12);
                assert!(a.lower <= b.lower + 1e-12 && a.upper <= b.upper + 1e-12, "{name} v={v} {w:?}");
                assert!(b.upper <= s.area().unwrap() + 1e-9);
            }
        }
    }
}

#[test]
fn subdivision_preserves_area() {
    for (name, s) in builtins() {
        let area = s.area().unwrap();
        for k in 1..=5 {
            let a = s.subdivide(k).unwrap().area().unwrap();
            assert!((a - area).abs() <= 1e-12 * area.max(1.0), "{name} k={k}: {a} vs {area}");
        }
    }
}

#[test]
fn subdivision_does_not_lengthen_distances() {
    for (name, s) in builtins() {
        let fine = s.subdivide(1).unwrap();
        for v in 0..s.vertex_count() {
            let before = s.graph_distances(v, f64::INFINITY);
            let after = fine.graph_distances(v, f64::INFINITY);
            for w in 0..s.vertex_count() {
                assert!(after[w] <= before[w] + 1e-12, "{name} {v}->{w}");
            }
        }
    }
}

#[test]
fn builtins_survive_a_spec_round_trip() {
    for (_, s) in builtins() {
        let again = Surface::from_spec(s.to_spec()).unwrap();
        assert_eq!(again.triangles(), s.triangles());
        assert_eq!(again.edge_lengths(), s.edge_lengths());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn removing_a_triangle_opens_the_surface(which in 0usize..6, pick in any::<prop::sample::Index>()) {
        let s = generate(Builtin::ALL[which], &GeneratorParams::default()).unwrap();
        let i = pick.index(s.triangle_count());
        let mut triangles = s.triangles().to_vec();
        let mut lengths = s.triangle_lengths().to_vec();
        let removed = triangles.remove(i);
        lengths.remove(i);
        let err = Surface::new(triangles, lengths).unwrap_err();
        let SurfaceError::Invalid(violations) = err else {
            panic!("expected violations, got {err:?}");
        };
        for pair in [[removed[0], removed[1]], [removed[1], removed[2]], [removed[2], removed[0]]] {
            let key = [pair[0].min(pair[1]), pair[0].max(pair[1])];
            let found = violations
                .iter()
                .any(|v| matches!(v, Violation::NotClosed { edge, faces: 1 } if *edge == key));
            prop_assert!(found, "edge {:?} not reported", key);
        }
    }

    #[test]
    fn scaling_lengths_keeps_validity(which in 0usize..6, c in 0.01f64..100.0) {
        let s = generate(Builtin::ALL[which], &GeneratorParams::default()).unwrap();
        let scaled: Vec<f64> = s.edge_lengths().iter().map(|l| l * c).collect();
        let t = s.with_edge_lengths(&scaled).unwrap();
        prop_assert!((t.area().unwrap() - c * c * s.area().unwrap()).abs() <= 1e-9 * c * c * s.area().unwrap());
    }
}
