use proptest::prelude::*;
use systole_core::covering::DistanceModel;
use systole_core::entropy::{
    check_burago_hebda, check_gate, check_sabourau_lemma, fit_entropy, growth_series_cover,
    growth_series_lattice, length_grid, GrowthSeries, SabourauOptions,
};
use systole_core::generators::{self, generate, Builtin, GeneratorParams};
use systole_core::lattice::{FlatTorus, ModuliPoint};

fn assert_monotone(series: &GrowthSeries, name: &str) {
    assert!(series.counts.iter().all(|&c| c >= 1), "{name}: {:?}", series.counts);
    assert!(series.counts.windows(2).all(|w| w[0] <= w[1]), "{name}: {:?}", series.counts);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_series_grow_with_nonnegative_slope(x in -2.0f64..2.0, y in 0.3f64..3.0) {
        let torus = FlatTorus::from_tau(ModuliPoint::new(x, y).unwrap()).unwrap();
        let ls = length_grid(0.0, 8.0, 17);
        let series = growth_series_lattice(&torus, &ls).unwrap();
        prop_assert_eq!(series.counts[0], 1);
        assert_monotone(&series, "lattice");
        let fit = fit_entropy(&series, (2.0, 8.0)).unwrap();
        prop_assert!(fit.slope >= 0.0 && fit.residual >= 0.0);
    }
}

#[test]
fn cover_series_grow_on_every_builtin() {
    let ls = length_grid(0.0, 3.0, 7);
    for b in Builtin::ALL {
        let s = generate(b, &GeneratorParams::default()).unwrap();
        let model = DistanceModel::auto(&s);
        let series = growth_series_cover(&s, 0, &ls, model).unwrap();
        assert_monotone(&series, &b.to_string());
        if s.topology().is_sphere() {
            assert!(series.counts.iter().all(|&c| c == 1), "{b}");
        } else {
            assert!(fit_entropy(&series, (1.0, 3.0)).unwrap().slope >= 0.0, "{b}");
        }
    }
}

#[test]
fn octagon_slopes_agree_on_adjacent_windows() {
    let s = generators::genus2_octagon();
    let ls = length_grid(1.5, 6.0, 37);
    let series = growth_series_cover(&s, 0, &ls, DistanceModel::Graph).unwrap();
    let a = fit_entropy(&series, (1.5, 3.0)).unwrap().slope;
    let b = fit_entropy(&series, (3.0, 6.0)).unwrap().slope;
    assert!(a > 0.0 && b > 0.0);
    assert!((a - b).abs() <= 0.2 * a.max(b), "{a} vs {b}");
}

#[test]
fn sabourau_lemma_holds_on_the_parameter_grid() {
    for b in Builtin::ALL.into_iter().filter(|b| *b != Builtin::SphereTetra) {
        let s = generate(b, &GeneratorParams::default()).unwrap();
        for alpha in [0.02, 0.05] {
            for beta in [0.05, 0.1] {
                let report = check_sabourau_lemma(&s, alpha, beta, &SabourauOptions::default()).unwrap();
                assert!(report.verdict, "{b} α={alpha} β={beta}: {} > {}", report.lhs, report.rhs);
            }
        }
    }
    assert!(check_gate(0.1, 0.1).is_err());
    assert!(check_gate(0.05, 0.25).is_ok());
}

#[test]
fn burago_hebda_holds_at_k3() {
    for b in Builtin::ALL.into_iter().filter(|b| *b != Builtin::SphereTetra) {
        let s = generate(b, &GeneratorParams { k: 3, ..Default::default() }).unwrap();
        let report = check_burago_hebda(&s).unwrap();
        assert!(report.verdict, "{b}: {} < {}", report.lhs, report.rhs);
    }
}
