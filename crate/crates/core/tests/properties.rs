use holomimo::em::{mu_coefficient, DipoleParams};
use holomimo::link::Combiner;
use holomimo::matching::MatchingKind;
use holomimo::scenario::{run_uplink, DropConfig, Layout, ScenarioConfig};
use holomimo::system::RadioFrontEnd;
use proptest::prelude::*;

fn aperture_cell(x: f64, seed: u64) -> holomimo::scenario::SweepCell {
    run_uplink(&ScenarioConfig {
        front_end: RadioFrontEnd::reference(),
        layout: Layout::FixedAperture(6.0),
        spacing_over_lambda: x,
        rx_matching: MatchingKind::Full,
        tx_matching: MatchingKind::Full,
        combiner: Combiner::Mmse,
        drops: DropConfig { users: 4, ..Default::default() },
        num_drops: 40,
        seed,
    })
    .unwrap()
}

#[test]
fn fixed_aperture_rate_falls_and_gain_rises_with_spacing() {
    let cells: Vec<_> = [0.1, 0.25, 0.5, 1.0].iter().map(|&x| aperture_cell(x, 3)).collect();
    for w in cells.windows(2) {
        assert!(w[1].elements < w[0].elements);
        assert!(w[1].mean_gain_db > w[0].mean_gain_db);
        assert!(w[1].mean_se <= w[0].mean_se + 2.0 * (w[0].stderr_se + w[1].stderr_se));
    }
}

#[test]
fn mutual_resistance_nulls() {
    let p = DipoleParams::half_wave(1.0).unwrap().with_dissipation_ratio(1e-3).unwrap();
    let mu = |x: f64| mu_coefficient(x, &p).unwrap();
    assert!(mu(0.42) > 0.0 && mu(0.44) < 0.0);
    assert!(mu(0.95) < 0.0 && mu(0.97) > 0.0);
    assert!(mu(1.0) > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn mutual_resistance_is_bounded(x in 0.01_f64..5.0) {
        let p = DipoleParams::half_wave(1.0).unwrap().with_dissipation_ratio(1e-3).unwrap();
        prop_assert!(mu_coefficient(x, &p).unwrap().abs() < 1.0);
    }

    #[test]
    fn seeds_only_move_results_within_noise(seed in 0_u64..1000) {
        let a = aperture_cell(0.5, seed);
        let b = aperture_cell(0.5, seed + 1);
        prop_assert!((a.mean_se - b.mean_se).abs() < 6.0 * (a.stderr_se + b.stderr_se) + 1e-9);
    }
}
