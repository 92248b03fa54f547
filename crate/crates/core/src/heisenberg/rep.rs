use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euclidean::{GridFunction, GridSpec};
use crate::specfun::{hermite_extent, hermite_functions};
use crate::weyl::weyl_matrix_on;

use super::{partial_ft, z_scale, PlaneFunction, TensorFunction};

/// Largest truncation order for Schrödinger-representation matrices.
pub const MAX_REP_ORDER: usize = 64;

/// Spacing of the trapezoid rule in the representation variable `x`.
const X_STEP: f64 = 0.01;
/// Spacing of planar grids used to integrate against the representation.
const PLANE_STEP: f64 = 1.0 / 16.0;

fn check_order(m: usize) -> Result<()> {
    if m == 0 || m > MAX_REP_ORDER {
        return Err(Error::OutOfRange {
            name: "M",
            range: "[1,64]",
            value: m as f64,
        });
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::OutOfRange {
            name: "lambda",
            range: "R \\ {0}",
            value: lambda,
        });
    }
    Ok(())
}

/// `A_λ(z) = √|λ| z` for `λ > 0` and `√|λ| z̄` for `λ < 0`.
fn automorphism(lambda: f64, z: Complex64) -> Complex64 {
    let w = if lambda > 0.0 { z } else { z.conj() };
    w * lambda.abs().sqrt()
}

struct XNodes {
    xs: Vec<f64>,
    /// `hermite[i][k] = h_k(x_i)`
    hermite: Vec<Vec<f64>>,
}

impl XNodes {
    fn new(m: usize) -> Self {
        let reach = hermite_extent(m);
        let half = (reach / X_STEP).ceil() as isize;
        let xs: Vec<f64> = (-half..=half).map(|i| i as f64 * X_STEP).collect();
        let hermite = xs.par_iter().map(|&x| hermite_functions(m - 1, x)).collect();
        Self { xs, hermite }
    }
}

/// `Σ_x w(x) g(x) h_k(x + u) h_j(x)` into `out[(j, k)]`.
fn accumulate(out: &mut DMatrix<Complex64>, nodes: &XNodes, g: &[Complex64], u: f64, m: usize) {
    for (i, &x) in nodes.xs.iter().enumerate() {
        let gi = g[i] * X_STEP;
        if gi == Complex64::new(0.0, 0.0) {
            continue;
        }
        let shifted = hermite_functions(m - 1, x + u);
        let hj = &nodes.hermite[i];
        for k in 0..m {
            let a = gi * shifted[k];
            for j in 0..m {
                out[(j, k)] += a * hj[j];
            }
        }
    }
}

/// Hermite-basis matrix `⟨π_λ(z, t) h_k, h_j⟩`, `j, k < M`, where
/// `π(u+iv, t)φ(x) = e^{2πit + 2πivx + πiuv} φ(x + u)` and `π_λ = π ∘ A_λ`
/// with `A_λ(z, t) = (A_λ z, λt)`.
pub fn schrodinger_matrix(lambda: f64, z: Complex64, t: f64, m: usize) -> Result<DMatrix<Complex64>> {
    check_order(m)?;
    check_lambda(lambda)?;
    let w = automorphism(lambda, z);
    let (u, v) = (w.re, w.im);
    let nodes = XNodes::new(m);
    let g: Vec<Complex64> = nodes
        .xs
        .iter()
        .map(|&x| Complex64::from_polar(1.0, 2.0 * PI * v * x))
        .collect();
    let mut out = DMatrix::zeros(m, m);
    accumulate(&mut out, &nodes, &g, u, m);
    let central = Complex64::from_polar(1.0, 2.0 * PI * lambda * t + PI * u * v);
    Ok(out * central)
}

/// `∫ f(z) π_λ(z, 0) dz` in the Hermite basis, integrating the representation
/// directly rather than through the Weyl kernel.
pub fn rep_matrix(f: &PlaneFunction, lambda: f64, m: usize) -> Result<DMatrix<Complex64>> {
    check_order(m)?;
    check_lambda(lambda)?;
    let reach = f.reach();
    let half = (reach / PLANE_STEP).ceil() as usize;
    let spec = GridSpec::new(half as f64 * PLANE_STEP, 2 * half.max(4))?;
    let n = spec.points();
    let h = spec.spacing();
    let nodes = XNodes::new(m);
    let scale = lambda.abs().sqrt();
    let sign = lambda.signum();
    let coords: Vec<f64> = (0..n).map(|i| spec.coord(i)).collect();
    let partials: Vec<DMatrix<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let u = scale * coords[a];
            let row: Vec<Complex64> = coords
                .iter()
                .map(|&b| f.eval(Complex64::new(coords[a], b)) * (h * h))
                .collect();
            let mut out = DMatrix::zeros(m, m);
            if row.iter().all(|v| v.norm() < 1e-300) {
                return out;
            }
            // g(x) = Σ_b f(a, b) e^{πi v_b (u + 2x)}
            let g: Vec<Complex64> = nodes
                .xs
                .iter()
                .map(|&x| {
                    row.iter()
                        .zip(&coords)
                        .map(|(fv, &b)| fv * Complex64::from_polar(1.0, PI * sign * scale * b * (u + 2.0 * x)))
                        .sum()
                })
                .collect();
            accumulate(&mut out, &nodes, &g, u, m);
            out
        })
        .collect();
    let mut total = DMatrix::zeros(m, m);
    for p in partials {
        total += p;
    }
    Ok(total)
}

const REP_TOLERANCE: f64 = 1e-2;

/// Relative Frobenius distance between `π_λ(F)`, integrated against the
/// representation, and the Weyl matrix of `Z_λ F^λ`.
pub fn rep_weyl_consistency(f: &TensorFunction, lambda: f64, m: usize) -> Result<f64> {
    check_order(m)?;
    if !(0.25..=4.0).contains(&lambda.abs()) {
        return Err(Error::OutOfRange {
            name: "|lambda|",
            range: "[1/4,4]",
            value: lambda.abs(),
        });
    }
    let lhs = rep_matrix(&f.spatial, lambda, m)? * f.temporal.hat(lambda);
    let scaled = z_scale(&partial_ft(f, lambda), lambda)?;
    let reach = scaled.reach().max(hermite_extent(m));
    let half = (reach / PLANE_STEP).ceil() as usize;
    let spec = GridSpec::new(half as f64 * PLANE_STEP, 2 * half)?;
    let grid = GridFunction::from_fn_2d(&spec, |z| scaled.eval(z));
    let rhs = weyl_matrix_on(&grid, m)?.value.into_entries();
    let scale = rhs.norm().max(lhs.norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    let residual = (lhs - rhs).norm() / scale;
    if residual > REP_TOLERANCE {
        return Err(Error::Resolution {
            what: "representation versus Weyl transform".into(),
            residual,
            tolerance: REP_TOLERANCE,
        });
    }
    Ok(residual)
}
