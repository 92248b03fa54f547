use proptest::prelude::*;
use sharphy::corpus::random_radial_bumps;
use sharphy::exponents::babenko_beckner;
use sharphy::heisenberg::{
    flq_integrand, flq_norm_tensor, flq_norm_tensor_with, heis_ratio_tensor, LambdaQuadrature, PlaneFunction,
    TemporalProfile, TensorFunction,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn integrand_is_even_in_lambda(t in 0.3f64..4.0, mu in 0.05f64..2.0, lambda in 0.05f64..3.0, q in 2.0f64..6.0) {
        let f = TensorFunction::gaussian(t, mu, 0.0).unwrap();
        let a = flq_integrand(&f, q, lambda).unwrap();
        let b = flq_integrand(&f, q, -lambda).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1e-300), "{a} {b}");
    }

    #[test]
    fn ratio_stays_below_the_cube(t in 0.1f64..100.0, mu in 1e-3f64..1.0, l0 in -3.0f64..3.0, p in 1.1f64..1.9) {
        let f = TensorFunction::gaussian(t, mu, l0).unwrap();
        let bound = babenko_beckner(p).unwrap().powi(3) * (1.0 + 1e-3);
        prop_assert!(heis_ratio_tensor(&f, p).unwrap() <= bound);
    }

    #[test]
    fn doubling_the_window_changes_little(t in 0.3f64..5.0, mu in 0.01f64..2.0, l0 in -2.0f64..2.0, q in 2.0f64..8.0) {
        let f = TensorFunction::gaussian(t, mu, l0).unwrap();
        let a = flq_norm_tensor(&f, q).unwrap();
        let b = flq_norm_tensor_with(&f, q, &LambdaQuadrature::for_temporal(&f.temporal, q, 2.0)).unwrap();
        prop_assert!((a - b).abs() < 1e-8 * a, "{a} {b}");
    }
}

proptest! {
    // compact spatial factors recompute the spectrum at every lambda, and it
    // gets long near lambda = 0, so the temporal window is kept away from 0
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn bump_tensors_stay_below_the_cube(
        seed in 0u64..500,
        mu in 0.05f64..0.2,
        l0 in 1.5f64..2.5,
        flip in any::<bool>(),
    ) {
        let spatial = PlaneFunction::Radial(random_radial_bumps(seed, 1).remove(0));
        let l0 = if flip { -l0 } else { l0 };
        let f = TensorFunction::new(spatial, TemporalProfile::gaussian(mu, l0).unwrap());
        let p = 4.0 / 3.0;
        let bound = babenko_beckner(p).unwrap().powi(3) * (1.0 + 1e-3);
        prop_assert!(heis_ratio_tensor(&f, p).unwrap() <= bound);
    }
}
