//! Central functions on `SU(2)`.
//!
//! A central `f` is a profile `g(θ)` of the conjugacy-class angle
//! `θ ∈ [0, π]`. Haar measure (mass 1) integrates central functions as
//! `(2/π) ∫ g(θ) sin^2 θ dθ`, the irreducible characters are
//! `χ_λ(θ) = sin((λ+1)θ)/sin θ` with `d_λ = λ + 1`, and the Lie algebra
//! `ℝ^3` is scaled so that `θ = α|X|`, `α = (2π^2)^{1/3}`. With that scaling the
//! Jacobian of `exp` is `J(X) = (sin θ/θ)^2`, equal to 1 at the origin, and
//! the coadjoint orbit attached to `λ` is the sphere of radius
//! `(λ+1)α/(2π)` carrying total mass `d_λ`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::curve::RatioCurve;
use crate::error::{Diagnosed, Error, Result, Warning};
use crate::exponents::Exponent;
use crate::quadrature::{integrate_adaptive, refine_edges, QuadratureRule, Tolerance, PANEL_ORDER};

/// `α` in `θ = α|X|`.
pub fn lie_scale() -> f64 {
    (2.0 * PI * PI).cbrt()
}

/// Radius of the orbit through `λ + ρ`, where `F̂` is sampled.
pub fn orbit_radius(lambda: usize) -> f64 {
    (lambda as f64 + 1.0) * lie_scale() / (2.0 * PI)
}

/// Default weight cutoff `Λmax`.
pub const DEFAULT_WEIGHT_CUTOFF: usize = 200;

type Profile = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A central function given by its angle profile, vanishing for `θ >= δ`.
#[derive(Clone)]
pub struct CentralFunction {
    profile: Profile,
    support: f64,
    label: String,
}

impl fmt::Debug for CentralFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralFunction")
            .field("label", &self.label)
            .field("support", &self.support)
            .finish()
    }
}

fn character_value(lambda: usize, theta: f64) -> f64 {
    let s = theta.sin();
    let m = lambda as f64 + 1.0;
    if s.abs() < 1e-12 {
        // limits at θ = 0 and θ = π
        let sign = if theta > 1.0 && lambda % 2 == 1 { -1.0 } else { 1.0 };
        return sign * m;
    }
    (m * theta).sin() / s
}

impl CentralFunction {
    /// `support` is `δ ∈ (0, π]`; `δ = π` means no localization.
    pub fn new(label: impl Into<String>, support: f64, profile: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Result<Self> {
        if !(support > 0.0 && support <= PI) {
            return Err(Error::OutOfRange {
                name: "support angle",
                range: "(0,pi]",
                value: support,
            });
        }
        Ok(Self {
            profile: Arc::new(profile),
            support,
            label: label.into(),
        })
    }

    pub fn constant(c: f64) -> Self {
        Self::new("constant", PI, move |_| Complex64::from(c)).expect("pi is a valid support")
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// The character `χ_λ`.
    pub fn character(lambda: usize) -> Self {
        Self::new(format!("character {lambda}"), PI, move |t| Complex64::from(character_value(lambda, t)))
            .expect("pi is a valid support")
    }

    /// `e^{-π(θ/w)^2}` with `w = δ/3.5`, cut at `δ` where it is below `1e-16`.
    pub fn gaussian(delta: f64) -> Result<Self> {
        let w = delta / 3.5;
        Self::new(format!("gaussian {delta}"), delta, move |t| {
            Complex64::from(if t < delta { (-PI * (t / w).powi(2)).exp() } else { 0.0 })
        })
    }

    /// The smooth bump `e^{1 - 1/(1 - (θ/δ)^2)}`.
    pub fn bump(delta: f64) -> Result<Self> {
        Self::new(format!("bump {delta}"), delta, move |t| {
            let s = t / delta;
            Complex64::from(if s < 1.0 { (1.0 - 1.0 / (1.0 - s * s)).exp() } else { 0.0 })
        })
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        if theta >= self.support && self.support < PI {
            return Complex64::new(0.0, 0.0);
        }
        (self.profile)(theta)
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `|f|^2` as a central function.
    pub fn abs_squared(&self) -> Self {
        let g = self.clone();
        Self {
            profile: Arc::new(move |t| Complex64::from(g.eval(t).norm_sqr())),
            support: self.support,
            label: format!("|{}|^2", self.label),
        }
    }
}

const HAAR_TOL: Tolerance = Tolerance::new(1e-15, 1e-13);

/// `∫_G f = (2/π) ∫_0^π g(θ) sin^2 θ dθ`.
pub fn weyl_integral(f: &CentralFunction) -> Result<Complex64> {
    let v: Complex64 = integrate_adaptive(
        |t| f.eval(t) * t.sin().powi(2),
        &[0.0, f.support],
        4,
        HAAR_TOL,
        "Weyl integration",
    )?;
    Ok(v * (2.0 / PI))
}

/// `‖f‖_{L^p(G)}` by Weyl integration.
pub fn central_lp_norm(f: &CentralFunction, p: f64) -> Result<f64> {
    let v: f64 = integrate_adaptive(
        |t| f.eval(t).norm().powf(p) * t.sin().powi(2),
        &[0.0, f.support],
        4,
        HAAR_TOL,
        "central Lp norm",
    )?;
    Ok((v * 2.0 / PI).powf(1.0 / p))
}

/// `f̃(λ) = ∫_G f χ_λ = (2/π) ∫ g(θ) sin((λ+1)θ) sin θ dθ`.
pub fn central_ft(f: &CentralFunction, lambda: usize) -> Result<Complex64> {
    let v: Complex64 = integrate_adaptive(
        |t| f.eval(t) * ((lambda as f64 + 1.0) * t).sin() * t.sin(),
        &[0.0, f.support],
        4 + (lambda as f64 * f.support / PI) as usize,
        HAAR_TOL,
        "central Fourier coefficient",
    )?;
    Ok(v * (2.0 / PI))
}

/// `f̃(0), …, f̃(Λmax)` from one shared quadrature rule, refined until every
/// coefficient is stable.
pub fn central_spectrum(f: &CentralFunction, lambda_max: usize) -> Result<Vec<Complex64>> {
    let eval = |panels: usize| -> Vec<Complex64> {
        let rule = QuadratureRule::composite_legendre(&refine_edges(&[0.0, f.support], panels), PANEL_ORDER);
        let weighted: Vec<(f64, Complex64)> = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&t, &w)| (t, f.eval(t) * (w * t.sin() * 2.0 / PI)))
            .collect();
        (0..=lambda_max)
            .into_par_iter()
            .map(|l| {
                let m = l as f64 + 1.0;
                weighted.iter().map(|(t, v)| v * (m * t).sin()).sum()
            })
            .collect()
    };
    let mut panels = 8 + (lambda_max as f64 * f.support / PI) as usize;
    let mut prev = eval(panels);
    let mut change = f64::INFINITY;
    for _ in 0..8 {
        panels *= 2;
        let next = eval(panels);
        change = prev.iter().zip(&next).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let scale = next.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if change <= 1e-15 + 1e-12 * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "central Fourier coefficients".into(),
        change,
    })
}

/// `(Σ_λ d_λ^{2-q} |f̃(λ)|^q)^{1/q}`, summed up to `Λmax`.
///
/// `Λmax` doubles (up to 16 times the request) while the last term exceeds
/// `1e-12` of the partial sum; if that never happens a truncation warning is
/// attached.
pub fn central_flq_norm(f: &CentralFunction, q: f64, lambda_max: usize) -> Result<Diagnosed<f64>> {
    if !(q >= 2.0) || !q.is_finite() {
        return Err(Error::OutOfRange {
            name: "q",
            range: "[2,inf)",
            value: q,
        });
    }
    let mut cutoff = lambda_max.max(1);
    loop {
        let spectrum = central_spectrum(f, cutoff)?;
        let terms: Vec<f64> = spectrum
            .iter()
            .enumerate()
            .map(|(l, v)| (l as f64 + 1.0).powf(2.0 - q) * v.norm().powf(q))
            .collect();
        let partial: f64 = terms.iter().sum();
        let last = *terms.last().unwrap();
        if last <= 1e-12 * partial || partial == 0.0 {
            return Ok(Diagnosed::clean(partial.powf(1.0 / q)));
        }
        if cutoff >= 16 * lambda_max.max(1) {
            return Ok(Diagnosed {
                value: partial.powf(1.0 / q),
                warnings: vec![Warning::Truncation {
                    what: format!("weight sum truncated at {cutoff}"),
                    tail: last / partial,
                }],
            });
        }
        cutoff *= 2;
    }
}

/// `F_0(s)` for the lift `F(X) = J(X)^{1/2} f(exp X)`, `s = |X|`.
#[derive(Debug, Clone)]
pub struct LiftedProfile {
    f: CentralFunction,
}

impl LiftedProfile {
    /// `F_0(s) = (sin θ/θ) g(θ)` with `θ = αs`.
    pub fn eval(&self, s: f64) -> Complex64 {
        let theta = lie_scale() * s;
        let j_half = if theta < 1e-8 { 1.0 } else { theta.sin() / theta };
        self.f.eval(theta) * j_half
    }

    /// `F_0` vanishes for `s >= δ/α`.
    pub fn support(&self) -> f64 {
        self.f.support / lie_scale()
    }

    /// `‖F‖_{L^2(ℝ^3)}`.
    pub fn l2_norm(&self) -> Result<f64> {
        let v: f64 = integrate_adaptive(
            |s| self.eval(s).norm_sqr() * 4.0 * PI * s * s,
            &[0.0, self.support()],
            4,
            HAAR_TOL,
            "lifted L2 norm",
        )?;
        Ok(v.sqrt())
    }

    /// The radial transform `F̂(r) = (2/r) ∫ F_0(s) sin(2πrs) s ds`, with the
    /// value `4π ∫ F_0 s^2 ds` at `r = 0`.
    pub fn hat(&self, r: f64) -> Result<Complex64> {
        let end = self.support();
        let panels = 4 + (2.0 * r * end) as usize;
        if r == 0.0 {
            return integrate_adaptive(|s| self.eval(s) * (4.0 * PI * s * s), &[0.0, end], panels, HAAR_TOL, "lifted transform");
        }
        let v: Complex64 = integrate_adaptive(
            |s| self.eval(s) * ((2.0 * PI * r * s).sin() * s),
            &[0.0, end],
            panels,
            HAAR_TOL,
            "lifted transform",
        )?;
        Ok(v * (2.0 / r))
    }
}

/// The lift of a central function supported away from the conjugacy class
/// of `-I`.
pub fn lie_algebra_lift(f: &CentralFunction) -> Result<LiftedProfile> {
    if !(f.support < PI) {
        return Err(Error::Invalid("the lift needs support angle below pi".into()));
    }
    Ok(LiftedProfile { f: f.clone() })
}

/// `max_s |J^{1/2} χ_λ(exp X) - σ̂_λ(X)|` with `|X| = s`, where `σ̂_λ` is the
/// transform of the orbit measure, evaluated in closed form.
pub fn kirillov_check(lambda: usize, s_list: &[f64]) -> Result<f64> {
    let alpha = lie_scale();
    let d = lambda as f64 + 1.0;
    let radius = orbit_radius(lambda);
    let mut worst: f64 = 0.0;
    for &s in s_list {
        if !(s > 0.0 && s < 0.5) {
            return Err(Error::OutOfRange {
                name: "s",
                range: "(0,1/2)",
                value: s,
            });
        }
        let theta = alpha * s;
        let lhs = (theta.sin() / theta) * character_value(lambda, theta);
        let x = 2.0 * PI * radius * s;
        let orbit = d * x.sin() / x;
        worst = worst.max((lhs - orbit).abs());
    }
    Ok(worst)
}

/// `|f̃(λ) - d_λ F̂(λ+ρ)|` with `F̂` sampled on the orbit radius.
pub fn correspondence_check(f: &CentralFunction, lambda: usize) -> Result<f64> {
    let lift = lie_algebra_lift(f)?;
    let lhs = central_ft(f, lambda)?;
    let rhs = lift.hat(orbit_radius(lambda))? * (lambda as f64 + 1.0);
    Ok((lhs - rhs).norm())
}

/// `sup_{θ<δ} J^{1/2-1/p}`, the factor by which the local central ratio may
/// exceed `(B_p)^3`.
pub fn j_slack(delta: f64, p: f64) -> f64 {
    let j = (delta.sin() / delta).powi(2);
    j.powf(0.5 - 1.0 / p).max(1.0)
}

/// `(Σ d_λ^{2-p'} |f̃(λ)|^{p'})^{1/p'} / ‖f‖_p`.
pub fn su2_local_central_ratio(f: &CentralFunction, p: f64) -> Result<Diagnosed<f64>> {
    let e = Exponent::new(p)?;
    if p == 1.0 {
        return Err(Error::OutOfRange {
            name: "p",
            range: "(1,2]",
            value: p,
        });
    }
    let den = central_lp_norm(f, p)?;
    if den == 0.0 {
        return Err(Error::Invalid("ratio of the zero function".into()));
    }
    let num = central_flq_norm(f, e.dual().as_f64(), DEFAULT_WEIGHT_CUTOFF)?;
    Ok(num.map(|v| v / den))
}

/// Local central ratios of the Gaussian-in-`θ` family over support angles.
pub fn su2_ratio_curve(p: f64, deltas: &[f64]) -> Result<Diagnosed<RatioCurve>> {
    let e = Exponent::new(p)?;
    let mut points = Vec::with_capacity(deltas.len());
    let mut warnings = Vec::new();
    for &d in deltas {
        let r = su2_local_central_ratio(&CentralFunction::gaussian(d)?, p)?;
        warnings.extend(r.warnings);
        points.push((d, r.value));
    }
    Ok(Diagnosed {
        value: RatioCurve {
            label: "SU(2) central functions, Gaussian family".into(),
            parameter: "delta".into(),
            points,
            target: Some(e.babenko_beckner().powi(3)),
        },
        warnings,
    })
}
