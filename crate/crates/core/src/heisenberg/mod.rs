//! The Heisenberg group `H_1 = ℂ × ℝ` with law
//! `(z, t)(z', t') = (z + z', t + t' + Im(z̄z')/2)` and Lebesgue Haar measure.
//!
//! Only tensor functions `F(z, t) = f(z) φ(t)` are handled. Their partial
//! transform in `t` is `F^λ = φ̂(λ) f`, so `π_λ(F) = φ̂(λ) ρ(Z_λ f)` and every
//! Fourier–Lebesgue norm reduces to Weyl-transform spectra.

mod flq;
mod rep;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::euclidean::{lp_norm, GridFunction};
use crate::exponents::LpIndex;
use crate::radial::RadialProfile;

pub use flq::{
    flq_integrand, flq_norm_tensor, flq_norm_tensor_with, heis_ratio_tensor, heis_sweep, HeisSweep, LambdaQuadrature,
    SweepConfig, SweepPoint,
};
pub use rep::{rep_matrix, rep_weyl_consistency, schrodinger_matrix, MAX_REP_ORDER};

/// The spatial factor `f` on `ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub enum PlaneFunction {
    Radial(RadialProfile),
    /// `a·e^{-π t|z - c|^2}`, not radial unless `c = 0`.
    ShiftedGaussian {
        amplitude: f64,
        t: f64,
        center: Complex64,
    },
    /// `factor·base`.
    Scaled {
        factor: Complex64,
        base: Box<PlaneFunction>,
    },
}

impl PlaneFunction {
    /// `e^{-π t|z|^2}`.
    pub fn gaussian(t: f64) -> Result<Self> {
        Ok(Self::Radial(RadialProfile::gaussian(1.0, t)?))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Radial(p) => p.eval(z.norm()),
            Self::ShiftedGaussian {
                amplitude,
                t,
                center,
            } => Complex64::from(amplitude * (-PI * t * (z - center).norm_sqr()).exp()),
            Self::Scaled { factor, base } => factor * base.eval(z),
        }
    }

    pub fn as_radial(&self) -> Option<&RadialProfile> {
        match self {
            Self::Radial(p) => Some(p),
            _ => None,
        }
    }

    /// Radius of a disc outside which the function is negligible.
    pub fn reach(&self) -> f64 {
        match self {
            Self::Radial(p) => p.effective_radius(),
            Self::ShiftedGaussian { t, center, .. } => center.norm() + (39.2 / (PI * t)).sqrt(),
            Self::Scaled { base, .. } => base.reach(),
        }
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        match self {
            Self::Radial(profile) => profile.lp_norm(p),
            Self::ShiftedGaussian { amplitude, t, .. } => {
                RadialProfile::gaussian(*amplitude, *t)?.lp_norm(p)
            }
            Self::Scaled { factor, base } => Ok(factor.norm() * base.lp_norm(p)?),
        }
    }
}

/// The temporal factor `φ` on `ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub enum TemporalProfile {
    /// `e^{-πμt^2 - 2πitλ₀}`, whose transform is a Gaussian centered at `λ₀`.
    Gaussian { mu: f64, lambda0: f64 },
    /// Samples on a 1-D grid; the transform is computed by quadrature.
    Sampled(GridFunction),
}

impl TemporalProfile {
    pub fn gaussian(mu: f64, lambda0: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() || !lambda0.is_finite() {
            return Err(Error::OutOfRange {
                name: "mu",
                range: "(0,inf)",
                value: mu,
            });
        }
        Ok(Self::Gaussian { mu, lambda0 })
    }

    pub fn sampled(f: GridFunction) -> Result<Self> {
        if f.dim() != 1 {
            return Err(Error::Invalid("temporal factor must live on a 1-D grid".into()));
        }
        Ok(Self::Sampled(f))
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        match self {
            Self::Gaussian { mu, lambda0 } => {
                Complex64::from_polar((-PI * mu * t * t).exp(), -2.0 * PI * t * lambda0)
            }
            Self::Sampled(f) => {
                let spec = f.spec();
                let pos = (t + spec.half_width()) / spec.spacing();
                let i = pos.round();
                if (pos - i).abs() < 1e-9 && i >= 0.0 && (i as usize) < spec.points() {
                    f.samples()[i as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// `φ̂(λ) = ∫ φ(t) e^{2πitλ} dt`.
    pub fn hat(&self, lambda: f64) -> Complex64 {
        match self {
            Self::Gaussian { mu, lambda0 } => {
                let d = lambda - lambda0;
                Complex64::from(mu.powf(-0.5) * (-PI / mu * d * d).exp())
            }
            Self::Sampled(f) => {
                let spec = f.spec();
                let h = spec.spacing();
                f.samples()
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * Complex64::from_polar(h, 2.0 * PI * spec.coord(j) * lambda))
                    .sum()
            }
        }
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        match self {
            Self::Gaussian { mu, .. } => (p * mu).powf(-0.5 / p),
            Self::Sampled(f) => lp_norm(f, LpIndex::Finite(p)),
        }
    }

    /// An interval outside which `|φ̂|^q` is below `1e-14` of its peak.
    pub fn hat_window(&self, q: f64) -> (f64, f64) {
        match self {
            Self::Gaussian { mu, lambda0 } => {
                let w = (14.0 * std::f64::consts::LN_10 * mu / (q * PI)).sqrt();
                (lambda0 - w, lambda0 + w)
            }
            Self::Sampled(f) => {
                let d = f.spec().dual().half_width();
                (-d, d)
            }
        }
    }
}

/// `F(z, t) = f(z) φ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorFunction {
    pub spatial: PlaneFunction,
    pub temporal: TemporalProfile,
}

impl TensorFunction {
    pub fn new(spatial: PlaneFunction, temporal: TemporalProfile) -> Self {
        Self { spatial, temporal }
    }

    /// `e^{-πt|z|^2} e^{-πμs^2 - 2πisλ₀}`.
    pub fn gaussian(t: f64, mu: f64, lambda0: f64) -> Result<Self> {
        Ok(Self::new(
            PlaneFunction::gaussian(t)?,
            TemporalProfile::gaussian(mu, lambda0)?,
        ))
    }

    pub fn eval(&self, z: Complex64, t: f64) -> Complex64 {
        self.spatial.eval(z) * self.temporal.eval(t)
    }
}

/// The partial transform `F^λ = φ̂(λ) f` of a tensor function.
pub fn partial_ft(f: &TensorFunction, lambda: f64) -> PlaneFunction {
    PlaneFunction::Scaled {
        factor: f.temporal.hat(lambda),
        base: Box::new(f.spatial.clone()),
    }
}

/// `Z_λ f(z) = |λ|^{-1} f(|λ|^{-1/2} z)`, with `z̄` in place of `z` for `λ < 0`.
pub fn z_scale(f: &PlaneFunction, lambda: f64) -> Result<PlaneFunction> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::OutOfRange {
            name: "lambda",
            range: "R \\ {0}",
            value: lambda,
        });
    }
    let a = lambda.abs();
    Ok(match f {
        PlaneFunction::Radial(p) => PlaneFunction::Radial(p.dilate(1.0 / a, a.sqrt())?),
        PlaneFunction::ShiftedGaussian {
            amplitude,
            t,
            center,
        } => {
            let c = if lambda > 0.0 { *center } else { center.conj() };
            PlaneFunction::ShiftedGaussian {
                amplitude: amplitude / a,
                t: t / a,
                center: c * a.sqrt(),
            }
        }
        PlaneFunction::Scaled { factor, base } => PlaneFunction::Scaled {
            factor: *factor,
            base: Box::new(z_scale(base, lambda)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::GridSpec;

    #[test]
    fn gaussian_partial_transform() {
        let f = TensorFunction::gaussian(1.0, 0.5, 1.5).unwrap();
        for lambda in [-1.0, 0.0, 1.5, 2.2] {
            let want = 0.5f64.powf(-0.5) * (-PI / 0.5 * (lambda - 1.5f64).powi(2)).exp();
            assert!((f.temporal.hat(lambda).re - want).abs() < 1e-15);
        }
        let g = partial_ft(&f, 1.5);
        assert!((g.eval(Complex64::new(0.0, 0.0)).re - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sampled_transform_matches_closed_form() {
        let spec = GridSpec::new(8.0, 512).unwrap();
        let exact = TemporalProfile::gaussian(0.7, 0.0).unwrap();
        let samples = GridFunction::from_fn_1d(&spec, |t| exact.eval(t));
        let sampled = TemporalProfile::sampled(samples).unwrap();
        for lambda in [0.0, 0.3, 1.1] {
            assert!((sampled.hat(lambda) - exact.hat(lambda)).norm() < 1e-12);
        }
        assert!((sampled.hat(0.0).re - 0.7f64.powf(-0.5)).abs() < 1e-12);
        // ∫|φ̂|^2 = ∫|φ|^2
        let hat_sq: f64 = (0..4000)
            .map(|i| {
                let l = -10.0 + i as f64 * 0.005;
                sampled.hat(l).norm_sqr() * 0.005
            })
            .sum();
        assert!((hat_sq - sampled.lp_norm(2.0).powi(2)).abs() < 1e-8);
    }

    #[test]
    fn z_scale_of_gaussians() {
        let g = PlaneFunction::gaussian(2.0).unwrap();
        match z_scale(&g, 4.0).unwrap() {
            PlaneFunction::Radial(RadialProfile::Gaussian { amplitude, t }) => {
                assert_eq!((amplitude, t), (0.25, 0.5));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(z_scale(&g, 1.0).unwrap(), g);
        for lambda in [0.3, -2.5] {
            let s = z_scale(&g, lambda).unwrap();
            assert!((s.lp_norm(1.0).unwrap() - g.lp_norm(1.0).unwrap()).abs() < 1e-14);
        }
        let shifted = PlaneFunction::ShiftedGaussian {
            amplitude: 1.0,
            t: 1.0,
            center: Complex64::new(0.3, 0.4),
        };
        let z = Complex64::new(0.2, -0.7);
        let s = z_scale(&shifted, -2.0).unwrap();
        let want = shifted.eval(z.conj() / 2f64.sqrt()) / 2.0;
        assert!((s.eval(z) - want).norm() < 1e-15);
        assert!(z_scale(&g, 0.0).is_err());
    }
}
