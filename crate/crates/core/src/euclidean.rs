//! Sampled functions on `R` and `R^2 ≅ C` and their Fourier analysis.
//!
//! The transform is `f̂(ξ) = ∫ f(x) e^{2πi ξ·x} dx`. On a grid with half
//! width `R` and `N` points per axis the discrete transform lands on the dual
//! grid of half width `N/(4R)`; the phase corrections turn the unnormalized
//! inverse FFT into a Riemann sum for the continuous integral.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::exponents::{Exponent, LpIndex};
use crate::quadrature::{integrate_adaptive, QuadratureRule, Tolerance, PANEL_ORDER};
use crate::radial::RadialProfile;
use crate::specfun::bessel_j;

/// Relative size below which a value at the grid boundary counts as zero.
pub const SUPPORT_TOLERANCE: f64 = 1e-6;

/// Geometry of a centered uniform grid: half width `R`, `N` points per axis,
/// nodes `-R + j·2R/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    half_width: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::OutOfRange {
                name: "grid half width",
                range: "(0,inf)",
                value: half_width,
            });
        }
        if points < 8 || points % 2 != 0 {
            return Err(Error::Invalid(format!(
                "grid needs an even point count >= 8, got {points}"
            )));
        }
        Ok(Self { half_width, points })
    }

    /// `R = 6, N = 512` on the line and `R = 4, N = 128` on the plane.
    pub fn default_for(dim: usize) -> Self {
        match dim {
            1 => Self {
                half_width: 6.0,
                points: 512,
            },
            _ => Self {
                half_width: 4.0,
                points: 128,
            },
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    /// The grid on which the transform is sampled.
    pub fn dual(&self) -> Self {
        Self {
            half_width: self.points as f64 / (4.0 * self.half_width),
            points: self.points,
        }
    }

    /// Same spacing, doubled point count.
    pub fn widened(&self) -> Self {
        Self {
            half_width: 2.0 * self.half_width,
            points: 2 * self.points,
        }
    }

    /// Same extent, doubled point count.
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            points: 2 * self.points,
        }
    }
}

/// Complex samples on a centered grid in dimension 1 or 2.
///
/// In two dimensions sample `i·N + j` sits at `z = x_i + i·x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: usize,
    spec: GridSpec,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(dim: usize, spec: GridSpec, samples: Vec<Complex64>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::Invalid(format!("dimension must be 1 or 2, got {dim}")));
        }
        if samples.len() != spec.points.pow(dim as u32) {
            return Err(Error::Invalid(format!(
                "expected {} samples, got {}",
                spec.points.pow(dim as u32),
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::Invalid("samples must be finite".into()));
        }
        Ok(Self { dim, spec, samples })
    }

    pub fn zeros(dim: usize, spec: GridSpec) -> Self {
        Self::new(dim, spec, vec![Complex64::new(0.0, 0.0); spec.points.pow(dim as u32)])
            .expect("dimension 1 or 2")
    }

    pub fn from_fn_1d(spec: &GridSpec, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = (0..spec.points).map(|i| f(spec.coord(i))).collect();
        Self {
            dim: 1,
            spec: *spec,
            samples,
        }
    }

    pub fn from_fn_2d(spec: &GridSpec, f: impl Fn(Complex64) -> Complex64) -> Self {
        let n = spec.points;
        let mut samples = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                samples.push(f(Complex64::new(spec.coord(i), spec.coord(j))));
            }
        }
        Self {
            dim: 2,
            spec: *spec,
            samples,
        }
    }

    /// Samples a radial profile on a planar grid.
    pub fn from_radial(spec: &GridSpec, profile: &RadialProfile) -> Self {
        Self::from_fn_2d(spec, |z| profile.eval(z.norm()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn spacing(&self) -> f64 {
        self.spec.spacing()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// The planar point of sample `idx` (two-dimensional grids).
    pub fn point_2d(&self, idx: usize) -> Complex64 {
        let n = self.spec.points;
        Complex64::new(self.spec.coord(idx / n), self.spec.coord(idx % n))
    }

    /// Sample at `(i, j)` on a planar grid, zero outside.
    pub fn at(&self, i: isize, j: isize) -> Complex64 {
        let n = self.spec.points as isize;
        if i < 0 || j < 0 || i >= n || j >= n {
            Complex64::new(0.0, 0.0)
        } else {
            self.samples[(i * n + j) as usize]
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            spec: self.spec,
            samples: self.samples.iter().map(|&s| f(s)).collect(),
        }
    }

    /// Pointwise `f(point, value)` on a planar grid.
    pub fn map_points_2d(&self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(idx, &s)| f(self.point_2d(idx), s))
            .collect();
        Self {
            dim: self.dim,
            spec: self.spec,
            samples,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude on the outermost ring of grid points.
    pub fn boundary_max(&self) -> f64 {
        let n = self.spec.points;
        match self.dim {
            1 => self.samples[0].norm().max(self.samples[n - 1].norm()),
            _ => {
                let mut m: f64 = 0.0;
                for k in 0..n {
                    for idx in [k, (n - 1) * n + k, k * n, k * n + n - 1] {
                        m = m.max(self.samples[idx].norm());
                    }
                }
                m
            }
        }
    }

    /// Whether the outer ring is below `1e-14` of the maximum.
    pub fn is_compactly_supported(&self) -> bool {
        self.boundary_max() <= 1e-14 * self.max_abs()
    }

    /// Maximum pointwise distance to another function on the same grid.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `f*(z) = conj(f(-z))`.
    pub fn involution(&self) -> Self {
        let n = self.spec.points;
        let mut out = Self::zeros(self.dim, self.spec);
        // -x_i = x_{N-i}; index 0 has no mirror image on the grid
        match self.dim {
            1 => {
                for i in 1..n {
                    out.samples[n - i] = self.samples[i].conj();
                }
            }
            _ => {
                for i in 1..n {
                    for j in 1..n {
                        out.samples[(n - i) * n + (n - j)] = self.samples[i * n + j].conj();
                    }
                }
            }
        }
        out
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.spec != other.spec {
            return Err(Error::Invalid("grid functions live on different grids".into()));
        }
        Ok(())
    }
}

/// Riemann-sum `L^p` norm, `(h^d Σ|f_j|^p)^{1/p}`, or the maximum for `p = ∞`.
pub fn lp_norm(f: &GridFunction, p: LpIndex) -> f64 {
    let measure = f.spacing().powi(f.dim as i32);
    match p {
        LpIndex::Infinity => f.max_abs(),
        LpIndex::Finite(2.0) => {
            (measure * f.samples.iter().map(|s| s.norm_sqr()).sum::<f64>()).sqrt()
        }
        LpIndex::Finite(p) => {
            (measure * f.samples.iter().map(|s| s.norm().powf(p)).sum::<f64>()).powf(1.0 / p)
        }
    }
}

/// Applies an unnormalized `e^{+2πi jm/N}` transform along each axis.
fn fft_axes(dim: usize, n: usize, data: &mut [Complex64]) {
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    match dim {
        1 => fft.process(data),
        _ => {
            fft.process(data);
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..n {
                for i in 0..n {
                    col[i] = data[i * n + j];
                }
                fft.process(&mut col);
                for i in 0..n {
                    data[i * n + j] = col[i];
                }
            }
        }
    }
}

/// Samples of `f̂` on the dual grid.
pub fn fourier_transform(f: &GridFunction) -> GridFunction {
    let n = f.spec.points;
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut data = f.samples.clone();
    // (-1)^j pre-twist, (-1)^m post-twist and e^{πiN/2} per axis
    match f.dim {
        1 => data.iter_mut().enumerate().for_each(|(j, v)| *v *= sign(j)),
        _ => data
            .iter_mut()
            .enumerate()
            .for_each(|(idx, v)| *v *= sign(idx / n + idx % n)),
    }
    fft_axes(f.dim, n, &mut data);
    let h = f.spacing();
    let axis_phase = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let factor = match f.dim {
        1 => h * axis_phase,
        _ => h * h,
    };
    match f.dim {
        1 => data
            .iter_mut()
            .enumerate()
            .for_each(|(m, v)| *v *= factor * sign(m)),
        _ => data
            .iter_mut()
            .enumerate()
            .for_each(|(idx, v)| *v *= factor * sign(idx / n + idx % n)),
    }
    GridFunction {
        dim: f.dim,
        spec: f.spec.dual(),
        samples: data,
    }
}

/// Linear convolution `(f∗g)(x) = ∫ f(x-y) g(y) dy` at the grid points.
///
/// Both inputs must share a grid. The full linear convolution is formed with
/// zero padding; if its part outside the grid exceeds
/// [`SUPPORT_TOLERANCE`] of its maximum the call fails.
pub fn convolve(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    f.same_grid(g)?;
    let n = f.spec.points;
    let m = 2 * n;
    let planner_len = m;
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(planner_len);
    let inv = planner.plan_fft_inverse(planner_len);
    let pad = |src: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); m.pow(f.dim as u32)];
        match f.dim {
            1 => out[..n].copy_from_slice(src),
            _ => {
                for i in 0..n {
                    out[i * m..i * m + n].copy_from_slice(&src[i * n..i * n + n]);
                }
            }
        }
        out
    };
    let transform = |data: &mut Vec<Complex64>, plan: &std::sync::Arc<dyn rustfft::Fft<f64>>| {
        match f.dim {
            1 => plan.process(data),
            _ => {
                plan.process(data);
                let mut col = vec![Complex64::new(0.0, 0.0); m];
                for j in 0..m {
                    for i in 0..m {
                        col[i] = data[i * m + j];
                    }
                    plan.process(&mut col);
                    for i in 0..m {
                        data[i * m + j] = col[i];
                    }
                }
            }
        }
    };
    let mut a = pad(&f.samples);
    let mut b = pad(&g.samples);
    transform(&mut a, &fwd);
    transform(&mut b, &fwd);
    a.iter_mut().zip(&b).for_each(|(x, y)| *x *= y);
    transform(&mut a, &inv);
    let norm = 1.0 / (m.pow(f.dim as u32)) as f64;
    let weight = f.spacing().powi(f.dim as i32) * norm;
    // x_j + x_l = x_k  <=>  j + l = k + N/2
    let offset = n / 2;
    let inside = |k: usize| k >= offset && k < offset + n;
    let mut kept = Vec::with_capacity(n.pow(f.dim as u32));
    let mut dropped: f64 = 0.0;
    let mut peak: f64 = 0.0;
    match f.dim {
        1 => {
            for (k, v) in a.iter().enumerate() {
                peak = peak.max(v.norm());
                if inside(k) {
                    kept.push(v * weight);
                } else {
                    dropped = dropped.max(v.norm());
                }
            }
        }
        _ => {
            for i in 0..m {
                for j in 0..m {
                    let v = a[i * m + j];
                    peak = peak.max(v.norm());
                    if !(inside(i) && inside(j)) {
                        dropped = dropped.max(v.norm());
                    }
                }
            }
            for i in offset..offset + n {
                for j in offset..offset + n {
                    kept.push(a[i * m + j] * weight);
                }
            }
        }
    }
    if dropped > SUPPORT_TOLERANCE * peak {
        return Err(Error::SupportOverflow(format!(
            "convolution leaves the grid (relative mass {:.2e})",
            dropped / peak
        )));
    }
    Ok(GridFunction {
        dim: f.dim,
        spec: f.spec,
        samples: kept,
    })
}

/// Fourier transform of a radial function on the plane,
/// `2π ∫_0^∞ f_0(r) J_0(2π ζ r) r dr`, by adaptive panel quadrature.
pub fn radial_hat(profile: &RadialProfile, zeta: f64) -> Result<Complex64> {
    if !(zeta >= 0.0) {
        return Err(Error::OutOfRange {
            name: "zeta",
            range: "[0,inf)",
            value: zeta,
        });
    }
    let breaks = profile.radial_breakpoints();
    if breaks.len() < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let reach = *breaks.last().unwrap();
    let panels = 2 + (2.0 * zeta * reach) as usize + profile.oscillations();
    let integrand = |r: f64| profile.eval(r) * (r * bessel_j(0, 2.0 * PI * zeta * r).unwrap_or(0.0));
    let v: Complex64 = integrate_adaptive(
        integrand,
        &breaks,
        panels,
        Tolerance::new(1e-14, 1e-12),
        "radial Fourier transform",
    )?;
    Ok(v * (2.0 * PI))
}

/// Precomputed radial quadrature for evaluating [`radial_hat`] at many
/// frequencies up to `zeta_max`.
#[derive(Debug, Clone)]
pub struct RadialHatTable {
    rule: QuadratureRule,
    weighted: Vec<Complex64>,
    zeta_max: f64,
}

impl RadialHatTable {
    /// Refines a composite rule until the transform at `zeta_max`, at
    /// `zeta_max/2` and at `0` all settle.
    pub fn new(profile: &RadialProfile, zeta_max: f64) -> Result<Self> {
        let breaks = profile.radial_breakpoints();
        let reach = breaks.last().copied().unwrap_or(0.0);
        let mut panels = 2 + (2.0 * zeta_max * reach) as usize + profile.oscillations();
        let probes = [0.0, 0.5 * zeta_max, zeta_max];
        let build = |panels: usize| -> Self {
            let rule = QuadratureRule::composite_legendre(
                &crate::quadrature::refine_edges(&breaks, panels),
                PANEL_ORDER,
            );
            let weighted = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&r, &w)| profile.eval(r) * (2.0 * PI * r * w))
                .collect();
            Self {
                rule,
                weighted,
                zeta_max,
            }
        };
        let mut table = build(panels);
        let mut change = f64::INFINITY;
        for _ in 0..10 {
            panels *= 2;
            let next = build(panels);
            change = probes
                .iter()
                .map(|&z| (next.eval(z) - table.eval(z)).norm())
                .fold(0.0, f64::max);
            let scale = probes.iter().map(|&z| next.eval(z).norm()).fold(0.0, f64::max);
            table = next;
            if change <= 1e-14_f64.max(1e-12 * scale) {
                return Ok(table);
            }
        }
        Err(Error::NonConvergence {
            what: "radial transform table".into(),
            change,
        })
    }

    pub fn zeta_max(&self) -> f64 {
        self.zeta_max
    }

    pub fn eval(&self, zeta: f64) -> Complex64 {
        self.rule
            .nodes()
            .iter()
            .zip(&self.weighted)
            .map(|(&r, &w)| w * bessel_j(0, 2.0 * PI * zeta * r).unwrap_or(0.0))
            .sum()
    }
}

/// The Gaussian `e^{-π t |x|^2}` on `R^dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    t: f64,
    dim: u32,
}

impl GaussianSpec {
    pub fn new(t: f64, dim: u32) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::OutOfRange {
                name: "t",
                range: "(0,inf)",
                value: t,
            });
        }
        if dim == 0 {
            return Err(Error::OutOfRange {
                name: "dim",
                range: "[1,inf)",
                value: 0.0,
            });
        }
        Ok(Self { t, dim })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `‖e^{-π t|x|^2}‖_p = (p t)^{-d/(2p)}`.
    pub fn lp_norm(&self, p: LpIndex) -> f64 {
        match p {
            LpIndex::Infinity => 1.0,
            LpIndex::Finite(p) => (p * self.t).powf(-(self.dim as f64) / (2.0 * p)),
        }
    }

    /// `‖f̂‖_q` with `f̂(ξ) = t^{-d/2} e^{-π|ξ|^2/t}`.
    pub fn hat_lp_norm(&self, q: LpIndex) -> f64 {
        let d = self.dim as f64;
        let amp = self.t.powf(-0.5 * d);
        match q {
            LpIndex::Infinity => amp,
            LpIndex::Finite(q) => amp * (q / self.t).powf(-d / (2.0 * q)),
        }
    }

    pub fn sample(&self, spec: &GridSpec) -> Result<GridFunction> {
        let t = self.t;
        match self.dim {
            1 => Ok(GridFunction::from_fn_1d(spec, |x| {
                Complex64::from((-PI * t * x * x).exp())
            })),
            2 => Ok(GridFunction::from_fn_2d(spec, |z| {
                Complex64::from((-PI * t * z.norm_sqr()).exp())
            })),
            d => Err(Error::Invalid(format!("grids exist only in dimension 1 or 2, not {d}"))),
        }
    }
}

/// Hausdorff–Young ratio `‖f̂‖_{p'}/‖f‖_p` of a Gaussian from closed forms.
pub fn gaussian_hy_ratio(spec: &GaussianSpec, p: f64) -> Result<f64> {
    let e = Exponent::new(p)?;
    if p == 1.0 {
        return Err(Error::OutOfRange {
            name: "p",
            range: "(1,2]",
            value: p,
        });
    }
    Ok(spec.hat_lp_norm(e.dual()) / spec.lp_norm(e.index()))
}

/// Hausdorff–Young ratio of a grid function via the discrete transform.
pub fn grid_hy_ratio(f: &GridFunction, p: f64) -> Result<f64> {
    let e = Exponent::new(p)?;
    let num = lp_norm(&fourier_transform(f), e.dual());
    let den = lp_norm(f, e.index());
    if den == 0.0 {
        return Err(Error::Invalid("ratio of the zero function".into()));
    }
    Ok(num / den)
}
