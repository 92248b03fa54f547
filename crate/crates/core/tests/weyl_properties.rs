use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use sharphy::corpus::random_radial_bumps;
use sharphy::euclidean::{GridFunction, GridSpec};
use sharphy::exponents::LpIndex;
use sharphy::radial::RadialProfile;
use sharphy::weyl::{schatten_norm, schatten_norm_diag, twisted_convolve, weyl_diag_radial, weyl_matrix};

fn shifted(spec: &GridSpec, c: Complex64, t: f64) -> GridFunction {
    GridFunction::from_fn_2d(spec, |z| Complex64::from((-PI * t * (z - c).norm_sqr()).exp()))
}

const QS: [LpIndex; 4] = [LpIndex::Finite(1.0), LpIndex::Finite(2.0), LpIndex::Finite(4.0), LpIndex::Infinity];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn twisted_convolution_is_the_matrix_product(
        (ax, ay, bx, by) in (-0.4f64..0.4, -0.4f64..0.4, -0.4f64..0.4, -0.4f64..0.4),
        s in 0.8f64..2.0,
        t in 0.8f64..2.0,
    ) {
        let spec = GridSpec::new(4.0, 64).unwrap();
        let f = shifted(&spec, Complex64::new(ax, ay), s);
        let g = shifted(&spec, Complex64::new(bx, by), t);
        let fg = twisted_convolve(&f, &g).unwrap();
        let m = 24;
        let rf = weyl_matrix(&f, m).unwrap().value.into_entries();
        let rg = weyl_matrix(&g, m).unwrap().value.into_entries();
        let rfg = weyl_matrix(&fg, m).unwrap().value.into_entries();
        let err = (&rf * &rg - &rfg).norm();
        prop_assert!(err <= 1e-4 * rf.norm() * rg.norm(), "{err}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn matrix_and_spectrum_agree_for_radial(t in 0.6f64..3.0, k in 0usize..4, pick in 0usize..3) {
        let profile = match pick {
            0 => RadialProfile::gaussian(1.0, t).unwrap(),
            1 => RadialProfile::Laguerre { k },
            _ => random_radial_bumps(k as u64, 1).remove(0),
        };
        let spec = GridSpec::default_for(2);
        let m = 32;
        let w = weyl_matrix(&GridFunction::from_radial(&spec, &profile), m).unwrap().value;
        let s = weyl_diag_radial(&profile, m - 1).unwrap();
        // the spacing 1/16 resolves the narrow bumps only to about 1e-3
        let tol = if pick == 2 { 2e-3 } else { 1e-5 };
        for q in QS {
            let a = schatten_norm(&w, q);
            let b = schatten_norm_diag(&s, q).value;
            prop_assert!((a - b).abs() <= tol * b.max(1e-3), "q = {q:?}: {a} {b}");
        }
    }

    #[test]
    fn truncated_norms_grow_and_settle(t in 1.0f64..3.0, cx in -0.3f64..0.3, cy in -0.3f64..0.3) {
        let f = shifted(&GridSpec::default_for(2), Complex64::new(cx, cy), t);
        let big = weyl_matrix(&f, 96).unwrap().value;
        for q in QS {
            let norms: Vec<f64> = [12usize, 24, 48, 96].iter().map(|&m| schatten_norm(&big.truncate(m), q)).collect();
            prop_assert!(norms.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{q:?}: {norms:?}");
            let (late, early) = ((norms[3] - norms[2]).abs(), (norms[2] - norms[1]).abs());
            prop_assert!(late <= early + 1e-14 && late < 1e-6 * norms[3], "{q:?}: {norms:?}");
        }
    }

    #[test]
    fn log_norm_is_convex_in_reciprocal_exponent(seed in 0u64..1000) {
        let profile = random_radial_bumps(seed, 1).remove(0);
        let s = weyl_diag_radial(&profile, 200).unwrap();
        let log_norm = |inv: f64| {
            let q = if inv == 0.0 { LpIndex::Infinity } else { LpIndex::Finite(1.0 / inv) };
            schatten_norm_diag(&s, q).value.ln()
        };
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        for w in grid.windows(3) {
            let mid = log_norm(w[1]);
            let chord = 0.5 * (log_norm(w[0]) + log_norm(w[2]));
            prop_assert!(mid <= chord + 1e-9, "1/q = {}: {mid} > {chord}", w[1]);
        }
    }
}
