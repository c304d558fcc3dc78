use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use systole_core::covering::{homotopy_systole, is_contractible, loop_class_count, DistanceModel};
use systole_core::generators::{self, generate, Builtin, GeneratorParams};
use systole_core::homology::{homology_systole_z2, HomologyBasis};
use systole_core::lattice::FlatTorus;
use systole_core::Surface;

fn nonsimple_surfaces() -> Vec<(String, Surface)> {
    let mut out = Vec::new();
    for b in Builtin::ALL.into_iter().filter(|b| *b != Builtin::SphereTetra) {
        for k in 0..=1 {
            let s = generate(b, &GeneratorParams { k, ..Default::default() }).unwrap();
            out.push((format!("{b} k={k}"), s));
        }
    }
    let torus = generators::torus_square(1.0).subdivide(1).unwrap();
    let bumped: Vec<f64> = torus
        .edge_lengths()
        .iter()
        .enumerate()
        .map(|(i, l)| l * (1.0 + 0.2 * ((i * 5 % 7) as f64 / 7.0)))
        .collect();
    out.push(("bumped torus".into(), torus.with_edge_lengths(&bumped).unwrap()));
    out
}

#[test]
fn homotopy_systole_is_at_most_homology_systole() {
    for (name, s) in nonsimple_surfaces() {
        let h = homotopy_systole(&s).unwrap();
        let z = homology_systole_z2(&s).unwrap();
        assert!(h.length <= z.length + 1e-12, "{name}: {} > {}", h.length, z.length);
    }
}

#[test]
fn representatives_are_nontrivial() {
    for (name, s) in nonsimple_surfaces() {
        let h = homotopy_systole(&s).unwrap();
        assert!(!is_contractible(&s, &h.representative).unwrap(), "{name}");
        assert!(h.certified, "{name}");
        assert!((s.walk_length(&h.representative).unwrap() - h.length).abs() < 1e-12);
        let z = homology_systole_z2(&s).unwrap();
        let basis = HomologyBasis::new(&s);
        assert_ne!(basis.class_of(&s, &z.representative).unwrap(), 0, "{name}");
    }
}

#[test]
fn systole_does_not_grow_under_subdivision() {
    for b in [Builtin::TorusSquare, Builtin::TorusHex, Builtin::Genus2Octagon, Builtin::Rp2Icosa] {
        let base = generate(b, &GeneratorParams::default()).unwrap();
        let mut previous = f64::INFINITY;
        for k in 0..=2 {
            let sys = homotopy_systole(&base.subdivide(k).unwrap()).unwrap().length;
            assert!(sys <= previous + 1e-12, "{b} k={k}");
            previous = sys;
        }
    }
}

#[test]
fn lift_counts_match_lattice_orbits() {
    let cases = [
        (generators::torus_square(1.0), vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
        (generators::torus_hex(1.0), vec![vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]),
    ];
    for (base, rows) in cases {
        let torus = FlatTorus::new(rows).unwrap();
        for k in 0..=2 {
            let s = base.subdivide(k).unwrap();
            for l in 0..=6 {
                let l = l as f64;
                let lifts = loop_class_count(&s, 0, l, DistanceModel::Developed).unwrap();
                assert_eq!(lifts, torus.orbit_count(l).unwrap(), "k={k} L={l}");
            }
        }
    }
    let s = generators::torus_square(1.0);
    assert_eq!(loop_class_count(&s, 0, 2.0, DistanceModel::Developed).unwrap(), 13);
}

/// Same surface with vertex ids and triangle order shuffled.
fn relabel(s: &Surface, rng: &mut ChaCha8Rng) -> (Surface, Vec<usize>) {
    let mut perm: Vec<usize> = (0..s.vertex_count()).collect();
    perm.shuffle(rng);
    let mut order: Vec<usize> = (0..s.triangle_count()).collect();
    order.shuffle(rng);
    let triangles = order.iter().map(|&t| s.triangles()[t].map(|v| perm[v])).collect();
    let lengths = order.iter().map(|&t| s.triangle_lengths()[t]).collect();
    (Surface::new(triangles, lengths).unwrap(), perm)
}

#[test]
fn lift_counts_do_not_depend_on_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [
        (generators::torus_hex(1.0).subdivide(1).unwrap(), DistanceModel::Developed, 3.0),
        (generators::genus2_octagon(), DistanceModel::Graph, 3.0),
        (generators::rp2_icosa(1).unwrap(), DistanceModel::Graph, 6.0),
    ];
    for (s, model, l) in cases {
        for _ in 0..3 {
            let (t, perm) = relabel(&s, &mut rng);
            for v in [0, s.vertex_count() - 1] {
                assert_eq!(
                    loop_class_count(&s, v, l, model).unwrap(),
                    loop_class_count(&t, perm[v], l, model).unwrap()
                );
            }
            let (a, b) = (homotopy_systole(&s).unwrap(), homotopy_systole(&t).unwrap());
            assert!((a.length - b.length).abs() < 1e-12);
        }
    }
}
