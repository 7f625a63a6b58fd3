//! Property tests for the algebraic invariants of the filter family and
//! the signal model.

use asce::algorithms::{
    compute_error, lms_step, lmsf_step, rza_lms_step, rza_lmsf_step, sign_vector, step,
    variable_step_gain, za_lms_step, za_lmsf_step, AlgorithmKind, AlgorithmParams, FilterState,
};
use asce::experiment::LearningCurve;
use asce::signal::{snr_to_noise_variance, RegressorWindow, SparseChannel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bits(state: &FilterState<f64>) -> Vec<u64> {
    state.weights().iter().map(|w| w.to_bits()).collect()
}

fn finite_vec(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, len)
}

proptest! {
    #[test]
    fn sign_vector_is_strict_componentwise_sign(v in prop::collection::vec(-1e3f64..1e3, 1..16)) {
        let signs = sign_vector(&v);
        prop_assert_eq!(signs.len(), v.len());
        for (s, x) in signs.iter().zip(&v) {
            let expected = if *x > 0.0 { 1 } else if *x < 0.0 { -1 } else { 0 };
            prop_assert_eq!(*s, expected);
        }
    }

    #[test]
    fn variable_gain_bounded_and_monotone(
        e2a in 0.0f64..100.0,
        delta in 1e-6f64..100.0,
        lambda in 1e-3f64..10.0,
    ) {
        let lo = variable_step_gain(e2a, lambda);
        let hi = variable_step_gain(e2a + delta, lambda);
        prop_assert!((0.0..1.0).contains(&lo));
        prop_assert!((0.0..1.0).contains(&hi));
        prop_assert!(hi > lo);
    }

    #[test]
    fn squared_error_identity_is_exact(y in -1e3f64..1e3, pred in -1e3f64..1e3) {
        let r = compute_error(y, pred);
        prop_assert_eq!(r.error.to_bits(), (y - pred).to_bits());
        prop_assert_eq!(r.squared_error.to_bits(), (r.error * r.error).to_bits());
    }

    #[test]
    fn penalty_off_sparse_kinds_match_plain_kinds_bitwise(
        weights in finite_vec(6),
        samples in finite_vec(6),
        y in -5.0f64..5.0,
        mu in 1e-4f64..0.5,
        lambda in 1e-3f64..5.0,
        eps in 1.0f64..50.0,
    ) {
        let w = RegressorWindow::from_samples(samples);

        let mut plain_f = FilterState::from_weights(weights.clone());
        lmsf_step(&mut plain_f, &w, y, &AlgorithmParams::lmsf(mu, lambda)).unwrap();

        let mut za_f = FilterState::from_weights(weights.clone());
        za_lmsf_step(&mut za_f, &w, y, &AlgorithmParams::za_lmsf(mu, lambda, 0.0)).unwrap();
        prop_assert_eq!(bits(&plain_f), bits(&za_f));

        let mut rza_f = FilterState::from_weights(weights.clone());
        rza_lmsf_step(&mut rza_f, &w, y, &AlgorithmParams::rza_lmsf(mu, lambda, 0.0, eps)).unwrap();
        prop_assert_eq!(bits(&plain_f), bits(&rza_f));

        let mut plain = FilterState::from_weights(weights.clone());
        lms_step(&mut plain, &w, y, &AlgorithmParams::lms(mu)).unwrap();

        let mut za = FilterState::from_weights(weights.clone());
        za_lms_step(&mut za, &w, y, &AlgorithmParams::za_lms(mu, 0.0)).unwrap();
        prop_assert_eq!(bits(&plain), bits(&za));

        let mut rza = FilterState::from_weights(weights);
        rza_lms_step(&mut rza, &w, y, &AlgorithmParams::rza_lms(mu, 0.0, eps)).unwrap();
        prop_assert_eq!(bits(&plain), bits(&rza));
    }

    #[test]
    fn zero_tap_with_zero_regressor_component_stays_zero(
        other_weight in -2.0f64..2.0,
        x0 in -2.0f64..2.0,
        y in -2.0f64..2.0,
    ) {
        // tap 1 is zero and sees a zero regressor component: with sgn(0)=0
        // no algorithm may move it
        let w = RegressorWindow::from_samples(vec![x0, 0.0]);
        for kind in AlgorithmKind::ALL {
            let params = match kind {
                AlgorithmKind::Lms => AlgorithmParams::lms(0.04),
                AlgorithmKind::Lmf => AlgorithmParams::lmf(0.05),
                AlgorithmKind::Lmsf => AlgorithmParams::lmsf(0.05, 0.8),
                AlgorithmKind::ZaLms => AlgorithmParams::za_lms(0.04, 0.01),
                AlgorithmKind::RzaLms => AlgorithmParams::rza_lms(0.04, 0.01, 20.0),
                AlgorithmKind::ZaLmsf => AlgorithmParams::za_lmsf(0.05, 0.8, 0.01),
                AlgorithmKind::RzaLmsf => AlgorithmParams::rza_lmsf(0.05, 0.8, 0.01, 20.0),
            };
            let mut state = FilterState::from_weights(vec![other_weight, 0.0]);
            step(&mut state, &w, y, &params).unwrap();
            prop_assert_eq!(state.weights()[1], 0.0, "{} moved an absorbed zero", kind);
        }
    }

    #[test]
    fn rza_attractor_decreases_with_magnitude(
        h_small in 1e-3f64..1.0,
        extra in 1e-3f64..2.0,
        eps in 1.0f64..50.0,
        rho in 1e-4f64..0.5,
        mu in 1e-3f64..0.5,
    ) {
        let h_large = h_small + extra;
        let params = AlgorithmParams::rza_lmsf(mu, 0.8, rho, eps);
        let gamma = params.attractor_strength();
        let w = RegressorWindow::from_samples(vec![0.0]);

        let mut small = FilterState::from_weights(vec![h_small]);
        rza_lmsf_step(&mut small, &w, 0.0, &params).unwrap();
        let pull_small = h_small - small.weights()[0];

        let mut large = FilterState::from_weights(vec![h_large]);
        rza_lmsf_step(&mut large, &w, 0.0, &params).unwrap();
        let pull_large = h_large - large.weights()[0];

        prop_assert!(pull_small > pull_large);
        prop_assert!(pull_small <= gamma);
        prop_assert!(pull_large > 0.0);
    }

    #[test]
    fn generated_channels_satisfy_invariants(
        n in 1usize..40,
        k_frac in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let k = ((n as f64 * k_frac) as usize).clamp(1, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = SparseChannel::<f64>::generate(n, k, &mut rng).unwrap();
        prop_assert_eq!(ch.n_taps(), n);
        prop_assert_eq!(ch.sparsity(), k);
        // support is sorted, in range, and exactly the nonzero positions
        let support = ch.support();
        prop_assert!(support.windows(2).all(|w| w[0] < w[1]));
        for (i, t) in ch.taps().iter().enumerate() {
            if support.contains(&i) {
                prop_assert!(*t != 0.0);
            } else {
                prop_assert_eq!(*t, 0.0);
            }
        }
        let norm2: f64 = ch.taps().iter().map(|t| t * t).sum();
        prop_assert!((norm2.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_push_shifts_and_drops_oldest(
        initial in prop::collection::vec(-10.0f64..10.0, 1..12),
        sample in -10.0f64..10.0,
    ) {
        let mut w = RegressorWindow::from_samples(initial.clone());
        w.push(sample);
        prop_assert_eq!(w.len(), initial.len());
        prop_assert_eq!(w.samples()[0], sample);
        prop_assert_eq!(&w.samples()[1..], &initial[..initial.len() - 1]);
    }

    #[test]
    fn averaging_repeated_curves_is_near_identity(
        values in prop::collection::vec(0.0f64..10.0, 1..32),
        copies in 1usize..8,
    ) {
        // exact for power-of-two counts, within a couple of ulps otherwise
        let curve = LearningCurve::new(values);
        let avg = LearningCurve::mean_of(&vec![curve.clone(); copies]).unwrap();
        for (a, c) in avg.values().iter().zip(curve.values()) {
            let ulps = (a.to_bits() as i64 - c.to_bits() as i64).abs();
            prop_assert!(ulps <= 2, "{a} vs {c} differ by {ulps} ulps");
        }
        if copies.is_power_of_two() {
            prop_assert_eq!(avg, curve);
        }
    }

    #[test]
    fn snr_conversion_round_trips(snr_db in -40.0f64..40.0) {
        let variance = snr_to_noise_variance(snr_db);
        let back = 10.0 * (1.0 / variance).log10();
        prop_assert!((back - snr_db).abs() < 1e-12);
    }

    #[test]
    fn squared_deviation_is_squared_l2_distance(
        a in finite_vec(5),
        b in finite_vec(5),
    ) {
        prop_assume!(a.iter().any(|x| *x != 0.0));
        prop_assume!(b.iter().any(|x| *x != 0.0));
        let channel_a = SparseChannel::from_taps(a.clone()).unwrap();
        let channel_b = SparseChannel::from_taps(b.clone()).unwrap();
        let state_a = FilterState::from_weights(a.clone());
        let state_b = FilterState::from_weights(b.clone());

        let ab = asce::signal::squared_deviation(&channel_a, &state_b).unwrap();
        let ba = asce::signal::squared_deviation(&channel_b, &state_a).unwrap();
        prop_assert_eq!(ab.to_bits(), ba.to_bits());

        let manual: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        prop_assert_eq!(ab.to_bits(), manual.to_bits());

        let self_dev = asce::signal::squared_deviation(&channel_a, &state_a).unwrap();
        prop_assert_eq!(self_dev, 0.0);
        if a.iter().zip(&b).any(|(x, y)| (x - y).abs() > 1e-9) {
            prop_assert!(ab > 0.0);
        }
    }

    #[test]
    fn lmsf_direction_approaches_lms_for_large_errors(
        e in 0.5f64..5.0,
        lambda_scale in 1e-9f64..1.0,
        x in -3.0f64..3.0,
    ) {
        prop_assume!(x.abs() > 1e-3);
        // lambda <= e^2 / 1e6: LMS/F direction within 1e-5 of the LMS one
        let lambda = e * e / 1e6 * lambda_scale;
        prop_assume!(lambda > 0.0);
        let lmsf_dir = e * e * e * x / (e * e + lambda);
        let lms_dir = e * x;
        prop_assert!(((lmsf_dir - lms_dir) / lms_dir).abs() <= 1e-5);
    }

    #[test]
    fn lmsf_direction_approaches_scaled_lmf_for_small_errors(
        e in 1e-3f64..1.0,
        lambda_scale in 1.0f64..1e3,
        x in -3.0f64..3.0,
    ) {
        prop_assume!(x.abs() > 1e-3);
        // lambda >= 1e6 * e^2: LMS/F equals (1/lambda) * LMF within 1e-5
        let lambda = e * e * 1e6 * lambda_scale;
        let lmsf_dir = e * e * e * x / (e * e + lambda);
        let scaled_lmf_dir = e * e * e * x / lambda;
        prop_assert!(((lmsf_dir - scaled_lmf_dir) / scaled_lmf_dir).abs() <= 1e-5);
    }
}
