//! Radial functions on the plane, described by a closed-form tag or a sample
//! table, always together with a support radius or a Gaussian decay rate so
//! that quadrature can truncate analytically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, Tolerance};
use crate::specfun::chi_radial;

/// How far a profile reaches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    /// Vanishes for `r >= radius`.
    Compact(f64),
    /// Bounded by a polynomial times `e^{-rate·π r^2}`.
    Gaussian { rate: f64 },
}

/// A smooth bump `a·exp(1 - 1/(1 - ((r-c)/w)^2))` on `|r - c| < w`, peak `a` at `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

impl Bump {
    pub fn eval(&self, r: f64) -> f64 {
        let s = (r - self.center) / self.width;
        if s.abs() >= 1.0 {
            0.0
        } else {
            self.amplitude * (1.0 - 1.0 / (1.0 - s * s)).exp()
        }
    }
}

/// Natural cubic spline through complex samples, zero beyond the last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineTable {
    knots: Vec<f64>,
    values: Vec<Complex64>,
    second: Vec<Complex64>,
}

impl SplineTable {
    pub fn new(knots: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        let n = knots.len();
        if n < 3 || values.len() != n {
            return Err(Error::Invalid("spline table needs at least 3 matching samples".into()));
        }
        if knots[0] < 0.0 || knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("spline knots must be non-negative and increasing".into()));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Invalid("spline values must be finite".into()));
        }
        // tridiagonal solve for the natural spline's second derivatives
        let zero = Complex64::new(0.0, 0.0);
        let mut second = vec![zero; n];
        let mut u = vec![zero; n];
        for i in 1..n - 1 {
            let sig = (knots[i] - knots[i - 1]) / (knots[i + 1] - knots[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i])
                - (values[i] - values[i - 1]) / (knots[i] - knots[i - 1]);
            u[i] = (6.0 * d / (knots[i + 1] - knots[i - 1]) - sig * u[i - 1]) / p;
        }
        second[n - 1] = zero;
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        Ok(Self {
            knots,
            values,
            second,
        })
    }

    pub fn support(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        let n = self.knots.len();
        if r < self.knots[0] || r > self.knots[n - 1] {
            return Complex64::new(0.0, 0.0);
        }
        let hi = self.knots.partition_point(|&k| k < r).clamp(1, n - 1);
        let lo = hi - 1;
        let h = self.knots[hi] - self.knots[lo];
        let a = (self.knots[hi] - r) / h;
        let b = (r - self.knots[lo]) / h;
        a * self.values[lo]
            + b * self.values[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * (h * h)
                / 6.0
    }
}

/// A radial function `f(z) = f_0(|z|)` on the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile {
    Zero,
    /// `a·e^{-π t r^2}`.
    Gaussian { amplitude: f64, t: f64 },
    /// The Laguerre function `χ_k`.
    Laguerre { k: usize },
    /// Indicator of the disc of the given radius.
    Indicator { radius: f64 },
    /// `a·e^{-π t r^2}` cut off at `r = radius`.
    TruncatedGaussian { amplitude: f64, t: f64, radius: f64 },
    /// A finite sum of smooth bumps.
    Bumps(Vec<Bump>),
    /// Tabulated samples with cubic interpolation.
    Table(SplineTable),
    /// `a·base(r / scale)`.
    Dilated {
        base: Box<RadialProfile>,
        amplitude: f64,
        scale: f64,
    },
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            range: "(0,inf)",
            value: v,
        })
    }
}

impl RadialProfile {
    pub fn gaussian(amplitude: f64, t: f64) -> Result<Self> {
        positive("t", t)?;
        Ok(Self::Gaussian { amplitude, t })
    }

    pub fn indicator(radius: f64) -> Result<Self> {
        positive("radius", radius)?;
        Ok(Self::Indicator { radius })
    }

    pub fn truncated_gaussian(amplitude: f64, t: f64, radius: f64) -> Result<Self> {
        positive("t", t)?;
        positive("radius", radius)?;
        Ok(Self::TruncatedGaussian {
            amplitude,
            t,
            radius,
        })
    }

    pub fn bumps(bumps: Vec<Bump>) -> Result<Self> {
        for b in &bumps {
            positive("width", b.width)?;
            if !(b.center >= 0.0) || !b.amplitude.is_finite() {
                return Err(Error::Invalid("bump center must be >= 0".into()));
            }
        }
        Ok(Self::Bumps(bumps))
    }

    /// `amplitude·self(r/scale)`, simplified in closed form where possible.
    pub fn dilate(&self, amplitude: f64, scale: f64) -> Result<Self> {
        positive("scale", scale)?;
        Ok(match self {
            Self::Zero => Self::Zero,
            Self::Gaussian { amplitude: a, t } => Self::Gaussian {
                amplitude: a * amplitude,
                t: t / (scale * scale),
            },
            Self::TruncatedGaussian {
                amplitude: a,
                t,
                radius,
            } => Self::TruncatedGaussian {
                amplitude: a * amplitude,
                t: t / (scale * scale),
                radius: radius * scale,
            },
            Self::Dilated {
                base,
                amplitude: a,
                scale: s,
            } => Self::Dilated {
                base: base.clone(),
                amplitude: a * amplitude,
                scale: s * scale,
            },
            other => Self::Dilated {
                base: Box::new(other.clone()),
                amplitude,
                scale,
            },
        })
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        Complex64::from(match self {
            Self::Zero => 0.0,
            Self::Gaussian { amplitude, t } => amplitude * (-PI * t * r * r).exp(),
            Self::Laguerre { k } => chi_radial(*k, r),
            Self::Indicator { radius } => {
                if r < *radius {
                    1.0
                } else {
                    0.0
                }
            }
            Self::TruncatedGaussian {
                amplitude,
                t,
                radius,
            } => {
                if r < *radius {
                    amplitude * (-PI * t * r * r).exp()
                } else {
                    0.0
                }
            }
            Self::Bumps(bumps) => bumps.iter().map(|b| b.eval(r)).sum(),
            Self::Table(table) => return table.eval(r),
            Self::Dilated {
                base,
                amplitude,
                scale,
            } => return base.eval(r / scale) * *amplitude,
        })
    }

    pub fn extent(&self) -> Extent {
        match self {
            Self::Zero => Extent::Compact(0.0),
            Self::Gaussian { t, .. } => Extent::Gaussian { rate: *t },
            Self::Laguerre { .. } => Extent::Gaussian { rate: 0.5 },
            Self::Indicator { radius } | Self::TruncatedGaussian { radius, .. } => {
                Extent::Compact(*radius)
            }
            Self::Bumps(bumps) => Extent::Compact(
                bumps
                    .iter()
                    .map(|b| b.center + b.width)
                    .fold(0.0, f64::max),
            ),
            Self::Table(table) => Extent::Compact(table.support()),
            Self::Dilated { base, scale, .. } => match base.extent() {
                Extent::Compact(r) => Extent::Compact(r * scale),
                Extent::Gaussian { rate } => Extent::Gaussian {
                    rate: rate / (scale * scale),
                },
            },
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.extent(), Extent::Compact(_))
    }

    /// A radius beyond which the profile is negligible (below about `1e-17`
    /// relative to its size), exact for compact profiles.
    pub fn effective_radius(&self) -> f64 {
        match self {
            Self::Laguerre { k } => ((4.0 * *k as f64 + 2.0 + 90.0) / PI).sqrt(),
            Self::Dilated { base, scale, .. } => base.effective_radius() * scale,
            _ => match self.extent() {
                Extent::Compact(r) => r,
                // e^{-π t r^2} < 1e-17
                Extent::Gaussian { rate } => (39.2 / (PI * rate)).sqrt(),
            },
        }
    }

    /// Radii where the profile is not smooth, inside `(0, effective_radius)`
    /// or at its end.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut v = match self {
            Self::Indicator { radius } | Self::TruncatedGaussian { radius, .. } => vec![*radius],
            Self::Bumps(bumps) => bumps
                .iter()
                .flat_map(|b| [b.center - b.width, b.center + b.width])
                .filter(|&r| r > 0.0)
                .collect(),
            Self::Table(table) => vec![table.support()],
            Self::Dilated { base, scale, .. } => {
                base.breakpoints().into_iter().map(|r| r * scale).collect()
            }
            _ => Vec::new(),
        };
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Rough count of sign changes, used to size initial quadrature panels.
    pub fn oscillations(&self) -> usize {
        match self {
            Self::Laguerre { k } => *k,
            Self::Bumps(bumps) => bumps.len(),
            Self::Table(table) => table.knots.len() / 4,
            Self::Dilated { base, .. } => base.oscillations(),
            _ => 0,
        }
    }

    /// `‖f‖_p` on the plane, in closed form for Gaussians.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::OutOfRange {
                name: "p",
                range: "[1,inf)",
                value: p,
            });
        }
        match self {
            Self::Zero => Ok(0.0),
            Self::Gaussian { amplitude, t } => Ok(amplitude.abs() * (p * t).powf(-1.0 / p)),
            _ => {
                let v: f64 = integrate_adaptive(
                    |r: f64| self.eval(r).norm().powf(p) * 2.0 * PI * r,
                    &self.radial_breakpoints(),
                    4 + self.oscillations(),
                    Tolerance::new(1e-300, 1e-12),
                    "radial Lp norm",
                )?;
                Ok(v.powf(1.0 / p))
            }
        }
    }

    /// Sorted breakpoints `0 = r_0 < … < r_m = effective_radius` for
    /// panel-wise radial quadrature.
    pub fn radial_breakpoints(&self) -> Vec<f64> {
        let end = self.effective_radius();
        let mut v = vec![0.0];
        v.extend(self.breakpoints().into_iter().filter(|&r| r > 0.0 && r < end));
        if end > 0.0 {
            v.push(end);
        }
        v
    }
}
