use std::f64::consts::SQRT_2;

use approx::assert_abs_diff_eq;
use g2abs::analytic::visibility_analytic;
use g2abs::optimize::{
    feasible_reflectivity_interval, maximize_visibility, threshold_min_ratio, RatioOptimum,
    SearchBox,
};
use g2abs::{BeamSplitter, Execution, PairKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(pair: PairKind, x: f64, r: f64) -> f64 {
    visibility_analytic(pair, x, BeamSplitter::new(r).unwrap()).unwrap()
}

#[test]
fn like_and_mixed_classical_rows() {
    let search = SearchBox::default();
    let expected = [
        (PairKind::LT, 1.0 / (SQRT_2 + 1.0), SQRT_2 / 2.0),
        (PairKind::LL, 0.5, 1.0),
        (PairKind::TT, 1.0 / 3.0, 1.0),
    ];
    for (pair, v_max, x_star) in expected {
        let m = maximize_visibility(pair, &search).unwrap();
        assert_abs_diff_eq!(m.v_max, v_max, epsilon = 1e-6);
        assert_abs_diff_eq!(m.r_star, 0.5, epsilon = 1e-4);
        match m.x_star {
            RatioOptimum::At(x) => assert_abs_diff_eq!(x, x_star, epsilon = 1e-4),
            other => panic!("{pair}: {other:?}"),
        }
    }
}

#[test]
fn single_photon_rows() {
    let search = SearchBox::default();
    let ss = maximize_visibility(PairKind::SS, &search).unwrap();
    assert_abs_diff_eq!(ss.v_max, 1.0, epsilon = 1e-6);
    assert_abs_diff_eq!(ss.r_star, 0.5, epsilon = 1e-4);
    assert_eq!(ss.x_star, RatioOptimum::Any);

    for pair in [PairKind::SL, PairKind::ST] {
        let m = maximize_visibility(pair, &search).unwrap();
        assert_eq!(m.x_star, RatioOptimum::Capped(1e3), "{pair}");
        assert_abs_diff_eq!(m.r_star, 0.5, epsilon = 1e-4);
        assert!(m.v_max < 1.0 && m.v_max > 0.99, "{pair} {}", m.v_max);
        // raising the cap raises the maximum toward the ss value
        let wider = SearchBox {
            x_range: (1e-3, 1e5),
            ..search
        };
        let m2 = maximize_visibility(pair, &wider).unwrap();
        assert!(m2.v_max > m.v_max && m2.v_max < 1.0);
    }
}

#[test]
fn sequential_scan_agrees_with_parallel() {
    for pair in PairKind::ALL {
        let par = maximize_visibility(pair, &SearchBox::default()).unwrap();
        let seq = maximize_visibility(
            pair,
            &SearchBox {
                execution: Execution::Sequential,
                ..SearchBox::default()
            },
        )
        .unwrap();
        assert_eq!(par, seq);
    }
}

#[test]
fn threshold_consistency_on_random_reflectivities() {
    let (lo, hi) = feasible_reflectivity_interval();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let r = lo + (hi - lo) * rng.random::<f64>();
        let bs = BeamSplitter::new(r).unwrap();
        for pair in [PairKind::SL, PairKind::ST] {
            let x_min = threshold_min_ratio(pair, bs).unwrap().expect("feasible");
            assert_abs_diff_eq!(v(pair, x_min, r), 0.5, epsilon = 1e-9);
            assert!(v(pair, x_min * 0.99, r) < 0.5);
            assert!(v(pair, x_min * 1.01, r) > 0.5);
        }
    }
}

#[test]
fn outside_the_interval_no_ratio_suffices() {
    let (lo, hi) = feasible_reflectivity_interval();
    for r in [0.01, 0.1, 0.2, lo, hi, 0.8, 0.95] {
        let bs = BeamSplitter::new(r).unwrap();
        for pair in [PairKind::SL, PairKind::ST] {
            assert_eq!(threshold_min_ratio(pair, bs).unwrap(), None, "{pair} R={r}");
            // even a huge ratio stays at or below the classical limit
            assert!(v(pair, 1e9, r) <= 0.5 + 1e-9);
        }
    }
}

#[test]
fn sl_approaches_ss_monotonically() {
    for r in [0.2, 0.35, 0.5, 0.8] {
        let target = v(PairKind::SS, 1.0, r);
        let mut previous = 0.0;
        for x in [10.0, 1e2, 1e3, 1e4] {
            let value = v(PairKind::SL, x, r);
            assert!(value > previous && value < target);
            previous = value;
        }
        assert!(target - previous < 1e-3);
    }
}
