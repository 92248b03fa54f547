use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euclidean::{convolve, GridFunction, GridSpec, SUPPORT_TOLERANCE};
use crate::exponents::LpIndex;
use crate::radial::RadialProfile;

use super::spectrum::spectrum_norm;

fn check_support(f: &GridFunction, what: &str) -> Result<()> {
    if f.boundary_max() > SUPPORT_TOLERANCE * f.max_abs() {
        return Err(Error::SupportOverflow(format!("{what} reaches the grid boundary")));
    }
    Ok(())
}

/// `(f ×_λ g)(z) = ∫ f(z - w) g(w) e^{πiλ^2 Im(z̄w)} dw` on the grid of `f`.
///
/// Direct quadrature over grid points, `O(N^4)`; rows of the output are
/// computed in parallel with a fixed summation order.
pub fn twisted_convolve_scaled(f: &GridFunction, g: &GridFunction, lambda: f64) -> Result<GridFunction> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::OutOfRange {
            name: "lambda",
            range: "(0,1]",
            value: lambda,
        });
    }
    if f.dim() != 2 || g.dim() != 2 || f.spec() != g.spec() {
        return Err(Error::Invalid("twisted convolution needs two functions on the same planar grid".into()));
    }
    check_support(f, "first factor")?;
    check_support(g, "second factor")?;
    let spec = *f.spec();
    let n = spec.points();
    let half = (n / 2) as isize;
    let h = spec.spacing();
    let coords: Vec<f64> = (0..n).map(|i| spec.coord(i)).collect();
    // Im(z̄w) = x u' ... with z = c_a + i c_b, w = c_c + i c_d: c_a c_d - c_b c_c
    let s = PI * lambda * lambda;
    let phase: Vec<Complex64> = coords
        .iter()
        .flat_map(|&x| coords.iter().map(move |&y| Complex64::from_polar(1.0, s * x * y)))
        .collect();
    let gs = g.samples();
    let samples: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / n, idx % n);
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                let fi = a as isize - c as isize + half;
                if fi < 0 || fi >= n as isize {
                    continue;
                }
                let conj_bc = phase[b * n + c].conj();
                for d in 0..n {
                    let gv = gs[c * n + d];
                    if gv == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let fv = f.at(fi, b as isize - d as isize + half);
                    acc += fv * gv * phase[a * n + d] * conj_bc;
                }
            }
            acc * (h * h)
        })
        .collect();
    let out = GridFunction::new(2, spec, samples)?;
    check_support(&out, "twisted convolution")?;
    Ok(out)
}

/// `f × g`, the scaled product at `λ = 1`. Satisfies `ρ(f × g) = ρ(f)ρ(g)`.
pub fn twisted_convolve(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    twisted_convolve_scaled(f, g, 1.0)
}

/// `sup |f ×_λ g - f ∗ g|` for each `λ`, showing the `O(λ^2)` approach to
/// Euclidean convolution.
pub fn blowup_errors(f: &GridFunction, g: &GridFunction, lambdas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let flat = convolve(f, g)?;
    lambdas
        .iter()
        .map(|&l| Ok((l, twisted_convolve_scaled(f, g, l)?.max_diff(&flat))))
        .collect()
}

/// Both sides of `‖ρ(f)‖_{S^q}^q = ‖|T_f|^q‖_{L^1 → L^∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpNormCheck {
    /// Sup of the kernel of `|T_f|^q` on the grid.
    pub operator_value: f64,
    /// `Σ_k |f̃(k)|^q`.
    pub spectral_value: f64,
    pub residual: f64,
}

const OP_NORM_TOLERANCE: f64 = 5e-2;

/// Materializes the left twisted convolutor `T_f φ = f × φ` on a small planar
/// grid, forms `|T_f|^q` and compares the sup of its kernel with the
/// Schatten sum from the Laguerre spectrum.
///
/// The grid `R = 3, N = 24` is enough for the unit-scale Gaussians this is
/// meant for; `N` is capped at 48 since the matrix has `N^4` entries.
pub fn twisted_operator_schatten_check(profile: &RadialProfile, q: f64, grid: &GridSpec) -> Result<OpNormCheck> {
    if !(q >= 2.0) || !q.is_finite() {
        return Err(Error::OutOfRange {
            name: "q",
            range: "[2,inf)",
            value: q,
        });
    }
    let n = grid.points();
    if n > 48 {
        return Err(Error::OutOfRange {
            name: "N",
            range: "[8,48]",
            value: n as f64,
        });
    }
    let h = grid.spacing();
    let points: Vec<Complex64> = (0..n * n)
        .map(|idx| Complex64::new(grid.coord(idx / n), grid.coord(idx % n)))
        .collect();
    let dim = n * n;
    // uniform weights h^2: the symmetrized and plain discretizations coincide
    let a = DMatrix::from_fn(dim, dim, |i, j| {
        let (z, w) = (points[i], points[j]);
        profile.eval((z - w).norm()) * Complex64::from_polar(1.0, PI * (z.conj() * w).im) * (h * h)
    });
    let hermitian = (&a - a.adjoint()).norm() <= 1e-12 * a.norm().max(f64::MIN_POSITIVE);
    let power = if hermitian {
        let eig = a.symmetric_eigen();
        let d = eig.eigenvalues.map(|l| Complex64::from(l.abs().powf(q)));
        &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.adjoint()
    } else {
        // |A|^q = V diag(σ^q) V*
        let svd = a.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let d = svd.singular_values.map(|s| Complex64::from(s.powf(q)));
        v_t.adjoint() * DMatrix::from_diagonal(&d) * &v_t
    };
    let operator_value = power.iter().map(|v| v.norm()).fold(0.0, f64::max) / (h * h);
    let spectral_value = spectrum_norm(profile, LpIndex::Finite(q))?.value.powf(q);
    let residual = if spectral_value == 0.0 {
        operator_value
    } else {
        (operator_value - spectral_value).abs() / spectral_value
    };
    if residual > OP_NORM_TOLERANCE {
        return Err(Error::Resolution {
            what: "L1 to Linf norm of |T_f|^q".into(),
            residual,
            tolerance: OP_NORM_TOLERANCE,
        });
    }
    Ok(OpNormCheck {
        operator_value,
        spectral_value,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::lp_norm;
    use crate::weyl::weyl_matrix;

    fn shifted_gaussian(spec: &GridSpec, c: Complex64, t: f64) -> GridFunction {
        GridFunction::from_fn_2d(spec, move |z| Complex64::from((-PI * t * (z - c).norm_sqr()).exp()))
    }

    #[test]
    fn chi0_is_idempotent() {
        let spec = GridSpec::default_for(2);
        let chi0 = shifted_gaussian(&spec, Complex64::new(0.0, 0.0), 0.5);
        let sq = twisted_convolve(&chi0, &chi0).unwrap();
        let diff = sq.map_points_2d(|z, v| v - (-PI * z.norm_sqr() / 2.0).exp());
        let rel = lp_norm(&diff, LpIndex::Finite(2.0)) / lp_norm(&chi0, LpIndex::Finite(2.0));
        assert!(rel < 1e-3, "{rel}");
    }

    #[test]
    fn origin_value_has_no_phase() {
        let spec = GridSpec::new(4.0, 48).unwrap();
        let f = shifted_gaussian(&spec, Complex64::new(0.5, 0.25), 1.5);
        let g = shifted_gaussian(&spec, Complex64::new(-0.5, 0.5), 1.0);
        let fg = twisted_convolve(&f, &g).unwrap();
        let origin = 24 * 48 + 24;
        let h = spec.spacing();
        let direct: Complex64 = (0..48 * 48)
            .map(|idx| {
                let (c, d) = ((idx / 48) as isize, (idx % 48) as isize);
                f.at(48 - c, 48 - d) * g.samples()[idx] * h * h
            })
            .sum();
        assert!((fg.samples()[origin] - direct).norm() < 1e-13);
    }

    #[test]
    fn homomorphism() {
        let spec = GridSpec::default_for(2);
        let f = shifted_gaussian(&spec, Complex64::new(0.3, -0.2), 1.2);
        let g = shifted_gaussian(&spec, Complex64::new(-0.4, 0.1), 0.8);
        let fg = twisted_convolve(&f, &g).unwrap();
        let m = 24;
        let rf = weyl_matrix(&f, m).unwrap().value.into_entries();
        let rg = weyl_matrix(&g, m).unwrap().value.into_entries();
        let rfg = weyl_matrix(&fg, m).unwrap().value.into_entries();
        let err = (&rf * &rg - &rfg).norm();
        assert!(err <= 1e-4 * rf.norm() * rg.norm(), "{err}");
    }

    #[test]
    fn scaled_product_tends_to_convolution() {
        let spec = GridSpec::new(4.0, 48).unwrap();
        let f = shifted_gaussian(&spec, Complex64::new(0.2, 0.1), 2.0);
        let g = shifted_gaussian(&spec, Complex64::new(-0.1, 0.3), 1.5);
        let errs = blowup_errors(&f, &g, &[0.2, 0.1, 0.05]).unwrap();
        for w in errs.windows(2) {
            let ratio = w[0].1 / w[1].1;
            assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        }
        assert!(twisted_convolve_scaled(&f, &g, 0.0).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let spec = GridSpec::new(2.0, 32).unwrap();
        let wide = shifted_gaussian(&spec, Complex64::new(0.0, 0.0), 0.1);
        assert!(matches!(twisted_convolve(&wide, &wide), Err(Error::SupportOverflow(_))));
    }

    #[test]
    fn operator_norm_characterization() {
        let grid = GridSpec::new(3.0, 24).unwrap();
        let chi0 = RadialProfile::gaussian(1.0, 0.5).unwrap();
        let c = twisted_operator_schatten_check(&chi0, 2.0, &grid).unwrap();
        assert!(c.residual < 5e-2 && (c.spectral_value - 1.0).abs() < 1e-10);
        let g = RadialProfile::gaussian(1.0, 1.0).unwrap();
        let c = twisted_operator_schatten_check(&g, 4.0, &grid).unwrap();
        assert!(c.residual < 5e-2 && (c.spectral_value - 0.2).abs() < 1e-10);
        let z = twisted_operator_schatten_check(&RadialProfile::Zero, 2.0, &grid).unwrap();
        assert_eq!((z.operator_value, z.spectral_value), (0.0, 0.0));
    }
}
