//! Fixed and seeded test functions shared by the experiments.
//!
//! Every random family is drawn from a ChaCha stream seeded by the caller, so
//! a seed pins the corpus exactly on every platform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::euclidean::{GridFunction, GridSpec};
use crate::radial::{Bump, RadialProfile};
use crate::su2::CentralFunction;
use crate::torus::TorusFunction;

/// A planar test function, with its radial profile when it has one.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub function: GridFunction,
    pub radial: Option<RadialProfile>,
}

fn gaussian_at(z: Complex64, c: Complex64, t: f64) -> f64 {
    (-PI * t * (z - c).norm_sqr()).exp()
}

/// Ten smooth planar functions, radial and not, that fit the given grid.
pub fn plane_corpus(spec: &GridSpec) -> Vec<CorpusEntry> {
    let radial = |name: &str, p: RadialProfile| CorpusEntry {
        name: name.to_string(),
        function: GridFunction::from_radial(spec, &p),
        radial: Some(p),
    };
    let other = |name: &str, f: &dyn Fn(Complex64) -> Complex64| CorpusEntry {
        name: name.to_string(),
        function: GridFunction::from_fn_2d(spec, f),
        radial: None,
    };
    let bump = RadialProfile::bumps(vec![Bump {
        amplitude: 1.0,
        center: 0.0,
        width: 1.5,
    }])
    .expect("valid bump");
    vec![
        radial("gaussian t=1/2", RadialProfile::gaussian(1.0, 0.5).expect("t > 0")),
        radial("gaussian t=1", RadialProfile::gaussian(1.0, 1.0).expect("t > 0")),
        radial("gaussian t=2", RadialProfile::gaussian(1.0, 2.0).expect("t > 0")),
        radial("laguerre k=1", RadialProfile::Laguerre { k: 1 }),
        radial("laguerre k=2", RadialProfile::Laguerre { k: 2 }),
        radial("bump radius 1.5", bump),
        other("shifted gaussian", &|z| {
            Complex64::from(gaussian_at(z, Complex64::new(0.4, -0.3), 1.2))
        }),
        other("anisotropic gaussian", &|z| {
            Complex64::from((-PI * (z.re * z.re + 2.0 * z.im * z.im)).exp())
        }),
        other("modulated gaussian", &|z| {
            Complex64::from_polar(gaussian_at(z, Complex64::new(0.0, 0.0), 1.0), PI * z.re)
        }),
        other("holomorphic times gaussian", &|z| {
            z * gaussian_at(z, Complex64::new(0.0, 0.0), 1.0)
        }),
    ]
}

/// Radial profiles made of one to three smooth bumps inside the disc of
/// radius 1.5, with amplitudes in `[-1, 1]`.
pub fn random_radial_bumps(seed: u64, count: usize) -> Vec<RadialProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let pieces = rng.random_range(1..=3);
            let bumps = (0..pieces)
                .map(|_| {
                    let width = rng.random_range(0.2..0.6);
                    Bump {
                        amplitude: rng.random_range(-1.0..1.0),
                        center: rng.random_range(0.0..(1.5 - width)),
                        width,
                    }
                })
                .collect();
            RadialProfile::bumps(bumps).expect("bump parameters are in range")
        })
        .collect()
}

/// `count` smooth fields on a grid: sums of three Gaussians with random
/// complex weights, centers and widths.
pub fn random_smooth_fields(seed: u64, count: usize, spec: &GridSpec, dim: usize) -> Vec<GridFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = spec.half_width() / 3.0;
    (0..count)
        .map(|_| {
            let terms: Vec<(Complex64, Complex64, f64)> = (0..3)
                .map(|_| {
                    let w = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    let c = Complex64::new(rng.random_range(-r..r), if dim == 1 { 0.0 } else { rng.random_range(-r..r) });
                    (w, c, rng.random_range(0.5..4.0))
                })
                .collect();
            let eval = |z: Complex64| -> Complex64 {
                terms.iter().map(|(w, c, t)| w * gaussian_at(z, *c, *t)).sum()
            };
            match dim {
                1 => GridFunction::from_fn_1d(spec, |x| eval(Complex64::new(x, 0.0))),
                _ => GridFunction::from_fn_2d(spec, eval),
            }
        })
        .collect()
}

/// Torus functions supported in `[-a, a]^d`: random sums of smooth bumps.
pub fn random_torus_bumps(seed: u64, count: usize, dim: usize, points: usize, a: f64) -> Vec<TorusFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms: Vec<(f64, [f64; 2], f64)> = (0..2)
                .map(|_| {
                    let width = rng.random_range(0.3 * a..0.6 * a);
                    let reach = a - width;
                    let c = [rng.random_range(-reach..reach), rng.random_range(-reach..reach)];
                    (rng.random_range(0.2..1.0), c, width)
                })
                .collect();
            TorusFunction::from_fn(dim, points, move |x, y| {
                let v: f64 = terms
                    .iter()
                    .map(|(amp, c, w)| {
                        let b = Bump {
                            amplitude: 1.0,
                            center: 0.0,
                            width: *w,
                        };
                        let bx = b.eval((x - c[0]).abs());
                        let by = if dim == 1 { 1.0 } else { b.eval((y - c[1]).abs()) };
                        amp * bx * by
                    })
                    .sum();
                Complex64::from(v)
            })
            .expect("dimension and grid are valid")
        })
        .collect()
}

/// Central functions on `SU(2)` supported in `θ < δ` with `δ` drawn from
/// `[δ_max/4, δ_max]`: positive mixtures of a bump and a Gaussian.
pub fn random_central(seed: u64, count: usize, delta_max: f64) -> Vec<CentralFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let delta = rng.random_range(0.25 * delta_max..delta_max);
            let mix = rng.random_range(0.0..1.0);
            let bump = CentralFunction::bump(delta).expect("delta in range");
            let gauss = CentralFunction::gaussian(delta).expect("delta in range");
            CentralFunction::new(format!("central mixture {i}"), delta, move |t| {
                bump.eval(t) * mix + gauss.eval(t) * (1.0 - mix)
            })
            .expect("delta in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_pin_the_corpus() {
        assert_eq!(random_radial_bumps(7, 5), random_radial_bumps(7, 5));
        assert_ne!(random_radial_bumps(7, 5), random_radial_bumps(8, 5));
        let spec = GridSpec::new(4.0, 32).unwrap();
        assert_eq!(random_smooth_fields(1, 2, &spec, 2), random_smooth_fields(1, 2, &spec, 2));
        let t = random_torus_bumps(3, 4, 1, 128, 0.1);
        assert!(t.iter().all(|f| f.is_supported_in(0.1)));
    }

    #[test]
    fn plane_corpus_fits_default_grid() {
        let c = plane_corpus(&GridSpec::default_for(2));
        assert_eq!(c.len(), 10);
        for e in &c {
            assert!(e.function.boundary_max() < 1e-6 * e.function.max_abs(), "{}", e.name);
        }
    }
}
