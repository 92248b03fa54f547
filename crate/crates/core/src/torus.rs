//! Fourier series on `T^d = (-1/2, 1/2]^d`, `d ∈ {1, 2}`, and the
//! transplantation operator `TG = (φ̂ ∗ G)|_{ℤ^d}` comparing coefficients
//! with Euclidean transforms of functions supported near the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Diagnosed, Error, Result, Warning};
use crate::euclidean::{lp_norm, GridFunction};
use crate::exponents::{Exponent, LpIndex};
use crate::quadrature::{integrate_adaptive, Tolerance};

/// Samples `f(x_j)`, `x_j = (j - N/2)/N`, on a uniform grid of the torus.
///
/// For `d = 2` the sample `i·N + j` sits at `(x_i, x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusFunction {
    dim: usize,
    points: usize,
    samples: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("torus dimension must be 1 or 2, got {dim}")))
    }
}

impl TorusFunction {
    pub fn new(dim: usize, points: usize, samples: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if points < 2 || points % 2 != 0 {
            return Err(Error::Invalid(format!("torus grid needs an even point count, got {points}")));
        }
        if samples.len() != points.pow(dim as u32) {
            return Err(Error::Invalid("sample count does not match the torus grid".into()));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::Invalid("torus samples must be finite".into()));
        }
        Ok(Self {
            dim,
            points,
            samples,
        })
    }

    pub fn coord(points: usize, j: usize) -> f64 {
        (j as f64 - (points / 2) as f64) / points as f64
    }

    /// Samples `f(x)` for `d = 1` or `f(x₁, x₂)` for `d = 2` (the second
    /// argument is ignored when `d = 1`).
    pub fn from_fn(dim: usize, points: usize, f: impl Fn(f64, f64) -> Complex64 + Sync) -> Result<Self> {
        check_dim(dim)?;
        let samples = (0..points.pow(dim as u32))
            .into_par_iter()
            .map(|idx| match dim {
                1 => f(Self::coord(points, idx), 0.0),
                _ => f(Self::coord(points, idx / points), Self::coord(points, idx % points)),
            })
            .collect();
        Self::new(dim, points, samples)
    }

    /// The periodization of `e^{-π|x/w|^2}`, summing images over five
    /// periods in each direction.
    pub fn periodized_gaussian(dim: usize, points: usize, width: f64) -> Result<Self> {
        if !(width > 0.0 && width <= 0.5) {
            return Err(Error::OutOfRange {
                name: "width",
                range: "(0,1/2]",
                value: width,
            });
        }
        let g = |x: f64| -> f64 { (-5..=5).map(|k| (-PI * ((x - k as f64) / width).powi(2)).exp()).sum() };
        Self::from_fn(dim, points, |x, y| {
            Complex64::from(if dim == 1 { g(x) } else { g(x) * g(y) })
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Whether every sample outside the box `[-a, a]^d` vanishes.
    pub fn is_supported_in(&self, a: f64) -> bool {
        let n = self.points;
        self.samples.iter().enumerate().all(|(idx, s)| {
            let inside = match self.dim {
                1 => Self::coord(n, idx).abs() <= a,
                _ => Self::coord(n, idx / n).abs() <= a && Self::coord(n, idx % n).abs() <= a,
            };
            inside || *s == Complex64::new(0.0, 0.0)
        })
    }

    /// Riemann-sum `L^p` norm on the torus (total measure 1).
    pub fn lp_norm(&self, p: LpIndex) -> f64 {
        match p {
            LpIndex::Infinity => self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max),
            LpIndex::Finite(p) => {
                let sum: f64 = self.samples.iter().map(|s| s.norm().powf(p)).sum();
                (sum / self.samples.len() as f64).powf(1.0 / p)
            }
        }
    }
}

/// Coefficients `f̂(μ) = ∫ f(x) e^{2πiμ·x} dx` for `|μ|_∞ <= window`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    dim: usize,
    window: usize,
    values: Vec<Complex64>,
}

impl Coefficients {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `f̂(μ)`, or `None` outside the window.
    pub fn get(&self, mu: &[i64]) -> Option<Complex64> {
        let w = self.window as i64;
        if mu.len() != self.dim || mu.iter().any(|m| m.abs() > w) {
            return None;
        }
        let side = 2 * w + 1;
        let idx = mu.iter().fold(0, |acc, m| acc * side + (m + w));
        Some(self.values[idx as usize])
    }

    pub fn lq_norm(&self, q: LpIndex) -> f64 {
        match q {
            LpIndex::Infinity => self.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
            LpIndex::Finite(q) => self.values.iter().map(|v| v.norm().powf(q)).sum::<f64>().powf(1.0 / q),
        }
    }

    /// `Σ |f̂(μ)|^q` over the outermost shell `|μ|_∞ = window`.
    fn shell_sum(&self, q: f64) -> f64 {
        let w = self.window as i64;
        let side = 2 * w + 1;
        self.values
            .iter()
            .enumerate()
            .filter(|(idx, _)| {
                let idx = *idx as i64;
                let coords: Vec<i64> = if self.dim == 1 { vec![idx - w] } else { vec![idx / side - w, idx % side - w] };
                coords.iter().any(|c| c.abs() == w)
            })
            .map(|(_, v)| v.norm().powf(q))
            .sum()
    }
}

/// Riemann-sum Fourier coefficients in the `e^{+2πiμx}` convention.
///
/// The window must stay below `N/2`, where the grid stops resolving
/// frequencies.
pub fn fourier_coeffs(f: &TorusFunction, window: usize) -> Result<Coefficients> {
    let n = f.points;
    if 2 * window >= n {
        return Err(Error::OutOfRange {
            name: "window",
            range: "[0,N/2)",
            value: window as f64,
        });
    }
    let w = window as i64;
    let side = 2 * window + 1;
    // phase[m][j] = e^{2πi μ_m x_j} / N
    let phase: Vec<Vec<Complex64>> = (-w..=w)
        .map(|m| {
            (0..n)
                .map(|j| Complex64::from_polar(1.0 / n as f64, 2.0 * PI * m as f64 * TorusFunction::coord(n, j)))
                .collect()
        })
        .collect();
    let values = match f.dim {
        1 => phase
            .iter()
            .map(|ph| ph.iter().zip(&f.samples).map(|(a, b)| a * b).sum())
            .collect(),
        _ => {
            // transform along the second axis, then the first
            let inner: Vec<Vec<Complex64>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let row = &f.samples[i * n..(i + 1) * n];
                    phase.iter().map(|ph| ph.iter().zip(row).map(|(a, b)| a * b).sum()).collect()
                })
                .collect();
            (0..side * side)
                .into_par_iter()
                .map(|idx| {
                    let (m1, m2) = (idx / side, idx % side);
                    (0..n).map(|i| phase[m1][i] * inner[i][m2]).sum()
                })
                .collect()
        }
    };
    Ok(Coefficients {
        dim: f.dim,
        window,
        values,
    })
}

/// The cut-off `φ = |K|^{-1} χ_{U+K} ∗ χ_K` with `U = [-a, a]^d`, `K = [-b, b]^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec {
    a: f64,
    b: f64,
}

impl CutoffSpec {
    /// Requires `a, b > 0` and `a + 2b < 1/2`, so that `supp φ` lies inside
    /// the fundamental domain.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a + 2.0 * b < 0.5) {
            return Err(Error::Invalid(format!(
                "cut-off needs a, b > 0 and a + 2b < 1/2, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// One coordinate of `φ`: 1 on `[-a, a]`, linear down to 0 at `a + 2b`.
    pub fn phi_1d(&self, x: f64) -> f64 {
        ((self.a + 2.0 * self.b - x.abs()) / (2.0 * self.b)).clamp(0.0, 1.0)
    }

    /// One coordinate of `φ̂`: `(2b)^{-1} sin(2π(a+b)ξ) sin(2πbξ) / (πξ)^2`.
    pub fn phi_hat_1d(&self, xi: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        if xi.abs() < 1e-8 {
            return 2.0 * (a + b);
        }
        let s = PI * xi;
        (2.0 * s * (a + b)).sin() * (2.0 * s * b).sin() / (s * s * 2.0 * b)
    }

    /// `(|U+K| / |K|)^{d/2} = ((a+b)/b)^{d/2}`.
    pub fn l1_upper_bound(&self, dim: usize) -> f64 {
        ((self.a + self.b) / self.b).powf(dim as f64 / 2.0)
    }
}

/// `φ` with `‖φ̂‖_{L^1(ℝ^d)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff {
    pub spec: CutoffSpec,
    pub dim: usize,
    pub phi_hat_l1: f64,
    /// Estimate of the part of `‖φ̂‖₁` beyond the integration cutoff, already
    /// included in `phi_hat_l1`.
    pub tail: f64,
}

impl Cutoff {
    pub fn phi(&self, x: &[f64]) -> f64 {
        x.iter().map(|&t| self.spec.phi_1d(t)).product()
    }

    pub fn phi_hat(&self, xi: &[f64]) -> f64 {
        xi.iter().map(|&t| self.spec.phi_hat_1d(t)).product()
    }
}

/// Builds `φ` and integrates `|φ̂|` coordinate by coordinate.
///
/// The 1-D integral runs between consecutive zeros of the two sine factors
/// up to `|ξ| = 10^4/(2πb)`; beyond that `|φ̂|` behaves like `m/(2b π^2 ξ^2)`
/// with `m` the mean of `|sin·sin|`, measured on the last stretch, which
/// gives the tail term.
pub fn build_phi(spec: CutoffSpec, dim: usize) -> Result<Cutoff> {
    check_dim(dim)?;
    let (a, b) = (spec.a, spec.b);
    let end = 1e4 / (2.0 * PI * b);
    let mut zeros: Vec<f64> = Vec::new();
    for step in [1.0 / (2.0 * (a + b)), 1.0 / (2.0 * b)] {
        let count = (end / step).floor() as usize;
        zeros.extend((1..=count).map(|k| k as f64 * step));
    }
    zeros.push(0.0);
    zeros.push(end);
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let half: f64 = integrate_adaptive(
        |x| spec.phi_hat_1d(x).abs(),
        &zeros,
        1,
        Tolerance::new(1e-300, 1e-12),
        "L1 norm of the cut-off transform",
    )?;
    // mean of |sin(2π(a+b)ξ) sin(2πbξ)| over [end/2, end]
    let stretch: Vec<f64> = zeros.iter().copied().filter(|&z| z >= end / 2.0).collect();
    let sines: f64 = integrate_adaptive(
        |x| ((2.0 * PI * (a + b) * x).sin() * (2.0 * PI * b * x).sin()).abs(),
        &stretch,
        1,
        Tolerance::new(1e-300, 1e-10),
        "tail mean",
    )?;
    let mean = sines / (end - stretch[0]);
    let tail_half = mean / (2.0 * b * PI * PI * end);
    let one_d = 2.0 * (half + tail_half);
    Ok(Cutoff {
        spec,
        dim,
        phi_hat_l1: one_d.powi(dim as i32),
        tail: one_d.powi(dim as i32) - (2.0 * half).powi(dim as i32),
    })
}

/// Which endpoint of the transplantation inequality to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Two,
    Infinity,
}

impl Endpoint {
    pub fn index(self) -> LpIndex {
        match self {
            Self::Two => LpIndex::Finite(2.0),
            Self::Infinity => LpIndex::Infinity,
        }
    }
}

/// Both sides of `‖TG‖_{ℓ^q} <= ‖φ̂‖₁ ‖G‖_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransplantCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `TG(μ) = Σ_j h^d φ̂(μ - ξ_j) G(ξ_j)` at the integer points `μ` inside the
/// grid, compared with `‖φ̂‖₁ ‖G‖_q` (slack `1e-8`).
pub fn transplant_endpoint_check(cutoff: &Cutoff, g: &GridFunction, q: Endpoint) -> Result<TransplantCheck> {
    if g.dim() != cutoff.dim {
        return Err(Error::Invalid("G and the cut-off must have the same dimension".into()));
    }
    let spec = g.spec();
    let n = spec.points();
    let h = spec.spacing();
    let reach = spec.half_width().floor() as i64;
    let coords: Vec<f64> = (0..n).map(|i| spec.coord(i)).collect();
    // hat_table[m][j] = φ̂₁(μ_m - ξ_j)
    let hat_table: Vec<Vec<f64>> = (-reach..=reach)
        .map(|m| coords.iter().map(|&x| cutoff.spec.phi_hat_1d(m as f64 - x)).collect())
        .collect();
    let side = (2 * reach + 1) as usize;
    let samples = g.samples();
    let tg: Vec<Complex64> = match g.dim() {
        1 => hat_table
            .iter()
            .map(|row| row.iter().zip(samples).map(|(p, s)| s * (p * h)).sum())
            .collect(),
        _ => (0..side * side)
            .into_par_iter()
            .map(|idx| {
                let (r1, r2) = (&hat_table[idx / side], &hat_table[idx % side]);
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let row = &samples[i * n..(i + 1) * n];
                    let inner: Complex64 = row.iter().zip(r2).map(|(s, p)| s * p).sum();
                    acc += inner * r1[i];
                }
                acc * (h * h)
            })
            .collect(),
    };
    let lhs = match q {
        Endpoint::Two => tg.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
        Endpoint::Infinity => tg.iter().map(|v| v.norm()).fold(0.0, f64::max),
    };
    let rhs = cutoff.phi_hat_l1 * lp_norm(g, q.index());
    Ok(TransplantCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-8,
    })
}

/// `‖f̂‖_{ℓ^{p'}} / ‖f‖_p` over the coefficient window. Warns when the
/// outermost shell carries more than `1e-10` of the `ℓ^{p'}` sum.
pub fn torus_local_ratio(f: &TorusFunction, p: f64, window: usize) -> Result<Diagnosed<f64>> {
    let e = Exponent::new(p)?;
    if p == 1.0 {
        return Err(Error::OutOfRange {
            name: "p",
            range: "(1,2]",
            value: p,
        });
    }
    let q = e.dual().as_f64();
    let c = fourier_coeffs(f, window)?;
    let den = f.lp_norm(LpIndex::Finite(p));
    if den == 0.0 {
        return Err(Error::Invalid("ratio of the zero function".into()));
    }
    let total: f64 = c.values.iter().map(|v| v.norm().powf(q)).sum();
    let shell = c.shell_sum(q);
    let mut warnings = Vec::new();
    if shell > 1e-10 * total {
        warnings.push(Warning::Truncation {
            what: format!("torus coefficients truncated at window {window}"),
            tail: shell / total,
        });
    }
    Ok(Diagnosed {
        value: total.powf(1.0 / q) / den,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::GridSpec;

    #[test]
    fn coefficients_of_characters() {
        let one = TorusFunction::from_fn(1, 64, |_, _| Complex64::from(1.0)).unwrap();
        let c = fourier_coeffs(&one, 10).unwrap();
        assert!((c.get(&[0]).unwrap() - 1.0).norm() < 1e-14);
        assert!(c.values().iter().map(|v| v.norm()).sum::<f64>() - 1.0 < 1e-13);
        let m = 3;
        let e = TorusFunction::from_fn(1, 64, |x, _| Complex64::from_polar(1.0, -2.0 * PI * m as f64 * x)).unwrap();
        let c = fourier_coeffs(&e, 10).unwrap();
        for mu in -10..=10i64 {
            let want = if mu == m { 1.0 } else { 0.0 };
            assert!((c.get(&[mu]).unwrap() - want).norm() < 1e-13, "mu={mu}");
        }
        let one2 = TorusFunction::from_fn(2, 32, |_, _| Complex64::from(1.0)).unwrap();
        let c = fourier_coeffs(&one2, 5).unwrap();
        assert!((c.get(&[0, 0]).unwrap() - 1.0).norm() < 1e-13);
        assert!(c.get(&[1, 0]).unwrap().norm() < 1e-13);
    }

    #[test]
    fn plancherel_band_limited() {
        let f = TorusFunction::from_fn(2, 32, |x, y| {
            Complex64::new((2.0 * PI * x).cos(), 0.5 * (6.0 * PI * (x + y)).sin())
        })
        .unwrap();
        let c = fourier_coeffs(&f, 8).unwrap();
        let l2 = f.lp_norm(LpIndex::Finite(2.0));
        assert!((c.lq_norm(LpIndex::Finite(2.0)) - l2).abs() < 1e-8);
    }

    #[test]
    fn cutoff_transform_norm() {
        let c = build_phi(CutoffSpec::new(0.1, 0.1).unwrap(), 1).unwrap();
        assert_eq!(c.phi(&[0.0]), 1.0);
        assert!(c.phi_hat_l1 >= 1.0 && c.phi_hat_l1 <= 2f64.sqrt() + 1e-6, "{}", c.phi_hat_l1);
        let mut last = f64::INFINITY;
        for a in [0.1, 0.05, 0.01] {
            let v = build_phi(CutoffSpec::new(a, 0.1).unwrap(), 1).unwrap().phi_hat_l1;
            assert!(v < last && v >= 1.0 - 1e-9);
            last = v;
        }
        assert!(last < 1.05);
        assert!(CutoffSpec::new(0.2, 0.15).is_err());
    }

    #[test]
    fn transplant_of_zero_and_of_transforms() {
        let cut = build_phi(CutoffSpec::new(0.1, 0.1).unwrap(), 1).unwrap();
        let spec = GridSpec::new(40.0, 4096).unwrap();
        let zero = GridFunction::zeros(1, spec);
        assert!(transplant_endpoint_check(&cut, &zero, Endpoint::Two).unwrap().holds);
        // F(x) = (1 - (x/0.1)^2)^2 on [-0.1, 0.1], transformed in closed form by quadrature
        let hat = GridFunction::from_fn_1d(&spec, |xi| {
            let v: f64 = integrate_adaptive(
                |x: f64| (1.0 - (x / 0.1).powi(2)).powi(2) * (2.0 * PI * x * xi).cos(),
                &[-0.1, 0.1],
                4,
                Tolerance::new(1e-15, 1e-12),
                "bump transform",
            )
            .unwrap();
            Complex64::from(v)
        });
        for q in [Endpoint::Two, Endpoint::Infinity] {
            let c = transplant_endpoint_check(&cut, &hat, q).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn local_ratio_of_narrow_gaussians() {
        let p = 4.0 / 3.0;
        let b = Exponent::new(p).unwrap().babenko_beckner();
        let f = TorusFunction::periodized_gaussian(1, 1024, 0.02).unwrap();
        let r = torus_local_ratio(&f, p, 200).unwrap();
        assert!(r.is_clean() && (r.value - b).abs() < 0.02 * b, "{}", r.value);
        let one = TorusFunction::from_fn(1, 64, |_, _| Complex64::from(1.0)).unwrap();
        assert!((torus_local_ratio(&one, p, 10).unwrap().value - 1.0).abs() < 1e-12);
        let f2 = TorusFunction::periodized_gaussian(2, 256, 0.02).unwrap();
        let r2 = torus_local_ratio(&f2, p, 100).unwrap();
        assert!((r2.value - b * b).abs() < 0.04 * b * b, "{}", r2.value);
    }
}
