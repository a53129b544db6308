//! Monte Carlo ensemble against the closed forms.

use std::f64::consts::SQRT_2;

use g2abs::alternatives::PhaseModel;
use g2abs::analytic::g2_analytic;
use g2abs::montecarlo::{g2_monte_carlo, visibility_monte_carlo, McSettings};
use g2abs::{path_probabilities, BeamSplitter, Execution, ExperimentConfig, PairKind};

fn cfg(pair: PairKind, x: f64, r: f64, tau: Vec<f64>) -> ExperimentConfig {
    ExperimentConfig::new(pair, x, BeamSplitter::new(r).unwrap(), 1e6, tau).unwrap()
}

fn default_grid() -> Vec<f64> {
    ExperimentConfig::default_tau_grid(1e6).unwrap()
}

/// 41 points over ±1 µs.
fn grid_41() -> Vec<f64> {
    (0..41).map(|i| -1e-6 + i as f64 * 0.05e-6).collect()
}

fn within_3se(curve: &g2abs::G2Curve, pair: PairKind, x: f64, r: f64) {
    let p = path_probabilities(x, BeamSplitter::new(r).unwrap()).unwrap();
    let se = curve.stderr.as_ref().unwrap();
    for ((t, g), s) in curve.tau.iter().zip(&curve.g2).zip(se) {
        let exact = g2_analytic(pair, &p, 1e6, *t);
        assert!(
            (g - exact).abs() <= 3.0 * s + 1e-9,
            "{pair} τ={t}: {g} vs {exact} (se {s})"
        );
    }
}

#[test]
fn laser_thermal_dip_converges() {
    let c = cfg(PairKind::LT, 1.0, 0.5, vec![0.0, 0.25e-6]);
    let curve = g2_monte_carlo(&c, &McSettings::new(100_000, 11)).unwrap();
    let se = curve.stderr.as_ref().unwrap();
    assert!(
        (curve.g2[0] - 0.75).abs() <= 3.0 * se[0],
        "{} ± {}",
        curve.g2[0],
        se[0]
    );
}

#[test]
fn laser_pair_curve_matches_closed_form() {
    let c = cfg(PairKind::LL, 1.0, 0.5, grid_41());
    let curve = g2_monte_carlo(&c, &McSettings::new(100_000, 3)).unwrap();
    within_3se(&curve, PairKind::LL, 1.0, 0.5);
    let se = curve.stderr.as_ref().unwrap();
    // grid index 20 is τ = 0, indices 10 and 30 are τ = ∓0.5 µs
    assert!((curve.g2[20] - 0.5).abs() <= 3.0 * se[20]);
    assert!((curve.g2[10] - 1.5).abs() <= 3.0 * se[10]);
    assert!((curve.g2[30] - 1.5).abs() <= 3.0 * se[30]);
    assert_eq!(curve.n_realizations, 100_000);
    assert_eq!(curve.seed, Some(3));
}

#[test]
fn single_photon_curve_ignores_ratio() {
    let a = g2_monte_carlo(
        &cfg(PairKind::SS, 7.0, 0.5, grid_41()),
        &McSettings::new(100_000, 5),
    )
    .unwrap();
    let b = g2_monte_carlo(
        &cfg(PairKind::SS, 1.0, 0.5, grid_41()),
        &McSettings::new(100_000, 5),
    )
    .unwrap();
    // proportional units: compare after normalizing by the mean level
    let mean = |c: &g2abs::G2Curve| c.g2.iter().sum::<f64>() / c.g2.len() as f64;
    let (ma, mb) = (mean(&a), mean(&b));
    for (ga, gb) in a.g2.iter().zip(&b.g2) {
        assert!((ga / ma - gb / mb).abs() < 1e-9);
    }
    within_3se(&a, PairKind::SS, 7.0, 0.5);
}

#[test]
fn thermal_pair_at_zero_delay() {
    let c = cfg(PairKind::TT, 1.0, 0.5, vec![0.0]);
    let curve = g2_monte_carlo(&c, &McSettings::new(100_000, 17)).unwrap();
    let se = curve.stderr.as_ref().unwrap()[0];
    assert!(
        (curve.g2[0] - 1.0).abs() <= 3.0 * se,
        "{} ± {se}",
        curve.g2[0]
    );
}

#[test]
fn laser_thermal_maximum_visibility() {
    let c = cfg(PairKind::LT, SQRT_2 / 2.0, 0.5, default_grid());
    let run = visibility_monte_carlo(&c, &McSettings::new(100_000, 23)).unwrap();
    assert!(
        (run.result.v - 1.0 / (SQRT_2 + 1.0)).abs() <= 0.01,
        "{}",
        run.result.v
    );
    assert!(run.stderr < 0.005);
}

#[test]
fn breaking_the_laser_phase_model_kills_the_beat() {
    let c = cfg(PairKind::LL, 1.0, 0.5, default_grid());
    let physical = visibility_monte_carlo(&c, &McSettings::new(100_000, 29)).unwrap();
    let broken = visibility_monte_carlo(
        &c,
        &McSettings {
            phase_model: PhaseModel::Independent,
            ..McSettings::new(100_000, 29)
        },
    )
    .unwrap();
    assert!((physical.result.v - 0.5).abs() <= 3.0 * physical.stderr);
    assert!(
        broken.estimate.abs() <= 3.0 * broken.stderr,
        "{} ± {}",
        broken.estimate,
        broken.stderr
    );
    assert!(broken.result.v <= 3.0 * broken.stderr);
}

#[test]
fn identical_across_thread_counts() {
    let c = cfg(PairKind::TT, 0.8, 0.3, default_grid());
    let mc = McSettings::new(20_000, 41);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| visibility_monte_carlo(&c, &mc).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.curve, four.curve);
    assert_eq!(one.result, four.result);
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());

    let sequential = visibility_monte_carlo(
        &c,
        &McSettings {
            execution: Execution::Sequential,
            ..mc
        },
    )
    .unwrap();
    assert_eq!(one.curve, sequential.curve);
}

#[test]
fn different_seeds_differ() {
    let c = cfg(PairKind::LT, 1.0, 0.5, vec![0.0]);
    let a = g2_monte_carlo(&c, &McSettings::new(1000, 1)).unwrap();
    let b = g2_monte_carlo(&c, &McSettings::new(1000, 2)).unwrap();
    assert_ne!(a.g2, b.g2);
}
