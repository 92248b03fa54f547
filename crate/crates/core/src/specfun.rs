//! Hermite and Laguerre functions, Bessel functions of integer order, and two
//! numerical checks of Laguerre–Bessel identities.
//!
//! Hermite functions follow the normalization with `π` in the exponent:
//! `h_0(x) = 2^{1/4} e^{-π x^2}`, each `h_k` has unit `L^2` norm and
//! `ĥ_k = i^k h_k` for the transform `f̂(ξ) = ∫ f(x) e^{2πi ξ x} dx`.
//! Both families are evaluated by their three-term recurrences carried as a
//! mantissa plus a shared logarithmic scale, so neither the Gaussian factor
//! nor polynomial growth can overflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::euclidean::{fourier_transform, GridFunction, GridSpec};
use crate::quadrature::QuadratureRule;

const RESCALE: f64 = 1e200;

/// Largest Hermite degree the recurrence is validated for.
pub const MAX_HERMITE_DEGREE: usize = 200;

/// Keeps `(a, b)` inside the floating range by moving powers of ten into `log`.
#[inline]
fn rescale(a: &mut f64, b: &mut f64, log: &mut f64) {
    let big = a.abs().max(b.abs());
    if big > RESCALE {
        *a /= RESCALE;
        *b /= RESCALE;
        *log += RESCALE.ln();
    } else if big < 1.0 / RESCALE && big > 0.0 {
        *a *= RESCALE;
        *b *= RESCALE;
        *log -= RESCALE.ln();
    }
}

#[inline]
fn unscale(mantissa: f64, log: f64) -> f64 {
    if mantissa == 0.0 {
        0.0
    } else {
        mantissa.signum() * (mantissa.abs().ln() + log).exp()
    }
}

/// Mantissas of `ψ_{m-1}(y)`, `ψ_m(y)` and their common log scale, where `ψ_k`
/// are the Hermite functions orthonormal for `dy` (unit scaling, `e^{-y^2/2}`).
pub(crate) fn hermite_psi_scaled(m: usize, y: f64) -> (f64, f64, f64) {
    let mut log = -0.5 * y * y;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    for k in 0..m {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log);
    }
    (prev, cur, log)
}

/// `ψ_0(y), …, ψ_n(y)` in unit scaling.
pub(crate) fn hermite_psi_all(n: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut log = -0.5 * y * y;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    out.push(unscale(cur, log));
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log);
        out.push(unscale(cur, log));
    }
    out
}

/// The Hermite function `h_k(x)`.
pub fn hermite_function(k: usize, x: f64) -> f64 {
    hermite_functions(k, x)[k]
}

/// `h_0(x), …, h_n(x)`.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let scale = (2.0 * PI).powf(0.25);
    let mut v = hermite_psi_all(n, (2.0 * PI).sqrt() * x);
    v.iter_mut().for_each(|h| *h *= scale);
    v
}

/// Radius beyond which `h_0, …, h_{n}` are all below about `1e-16`.
pub fn hermite_extent(n: usize) -> f64 {
    // turning point sqrt(2n+1) in unit scaling plus a Gaussian tail margin
    ((2.0 * n as f64 + 1.0).sqrt() + 7.5) / (2.0 * PI).sqrt()
}

/// The generalized Laguerre polynomial `L_k^α(x)`.
pub fn laguerre_poly(k: usize, alpha: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::OutOfRange {
            name: "x",
            range: "[0,inf)",
            value: x,
        });
    }
    if !(alpha > -1.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            range: "(-1,inf)",
            value: alpha,
        });
    }
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// A Laguerre polynomial of fixed degree and order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreFunctionHandle {
    pub k: usize,
    pub alpha: f64,
}

impl LaguerreFunctionHandle {
    pub fn new(k: usize, alpha: f64) -> Result<Self> {
        laguerre_poly(k, alpha, 0.0)?;
        Ok(Self { k, alpha })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        laguerre_poly(self.k, self.alpha, x)
    }
}

/// `ℓ_k(u) = e^{-u/2} L_k(u)` for `k = 0..=n`. Each value is bounded by 1.
pub fn laguerre_functions(n: usize, u: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut log = -0.5 * u;
    let mut prev = 1.0;
    out.push(unscale(prev, log));
    if n == 0 {
        return out;
    }
    let mut cur = 1.0 - u;
    out.push(unscale(cur, log));
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - u) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log);
        out.push(unscale(cur, log));
    }
    out
}

/// Mantissas of `ℓ_{m-1}(u)`, `ℓ_m(u)`, `ℓ_{m+1}(u)` and their log scale (`m >= 1`).
pub(crate) fn laguerre_scaled_triplet(m: usize, u: f64) -> (f64, f64, f64, f64) {
    let mut log = -0.5 * u;
    let mut prev = 1.0;
    let mut cur = 1.0 - u;
    for j in 1..=m {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - u) * cur - jf * prev) / (jf + 1.0);
        if j == m {
            return (prev, cur, next, log);
        }
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log);
    }
    // m == 0: ℓ_{-1} is taken as zero
    (0.0, 1.0, 1.0 - u, log)
}

/// The Laguerre function `χ_k(z) = e^{-π|z|^2/2} L_k(π|z|^2)` on the plane.
pub fn chi(k: usize, z: Complex64) -> f64 {
    chi_radial(k, z.norm())
}

/// Radial profile of [`chi`].
pub fn chi_radial(k: usize, r: f64) -> f64 {
    laguerre_functions(k, PI * r * r)[k]
}

/// Crossover between the power series and the Hankel asymptotic expansion.
pub const BESSEL_CROSSOVER: f64 = 12.0;

/// Bessel function of the first kind `J_n(x)` of integer order.
///
/// The power series is used below `x = 12` and the large-argument expansion
/// above; both agree to better than `1e-10` at the crossover.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::OutOfRange {
            name: "x",
            range: "[0,inf)",
            value: x,
        });
    }
    Ok(if x < BESSEL_CROSSOVER {
        bessel_series(order, x)
    } else {
        bessel_asymptotic(order, x)
    })
}

pub(crate) fn bessel_series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=order).fold(1.0, |acc, j| acc * half / j as f64);
    let mut sum = term;
    let q = -half * half;
    for m in 1..200 {
        term *= q / (m as f64 * (m + order) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

pub(crate) fn bessel_asymptotic(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order as f64).powi(2);
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        if a.abs() > last || a == 0.0 && k > 0 {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        last = a.abs();
        if last < 1e-17 {
            break;
        }
    }
    let phase = x - (0.5 * order as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}

/// Checks the Laguerre–Bessel integral representation
/// `L_k^α(x) = e^x x^{-α/2} / k! · ∫_0^∞ e^{-t} t^{k+α/2} J_α(2√(xt)) dt`
/// by Gauss–Laguerre quadrature and returns the absolute residual.
pub fn verify_bela1(k: usize, alpha: u32, x: f64) -> Result<f64> {
    if k > 20 {
        return Err(Error::OutOfRange {
            name: "k",
            range: "[0,20]",
            value: k as f64,
        });
    }
    if !(x > 0.0 && x <= 20.0) {
        return Err(Error::OutOfRange {
            name: "x",
            range: "(0,20]",
            value: x,
        });
    }
    let a = alpha as f64;
    let expo = k as f64 + 0.5 * a;
    let integral = |m: usize| -> Result<f64> {
        let rule = QuadratureRule::gauss_laguerre(m);
        let mut s = 0.0;
        for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
            if w > 0.0 {
                s += w * t.powf(expo) * bessel_j(alpha, 2.0 * (x * t).sqrt())?;
            }
        }
        Ok(s)
    };
    let k_fact: f64 = (1..=k).map(|j| j as f64).product();
    let prefactor = x.exp() * x.powf(-0.5 * a) / k_fact;
    let mut m = 32;
    let mut prev = prefactor * integral(m)?;
    let mut change = f64::INFINITY;
    while m < 256 {
        m *= 2;
        let next = prefactor * integral(m)?;
        change = (next - prev).abs();
        if change <= 1e-8 {
            return Ok((next - laguerre_poly(k, a, x)?).abs());
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "Laguerre-Bessel integral".into(),
        change,
    })
}

/// Least-squares fit of `χ_k(z) ≈ c (-1)^k χ̂_k(z/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChFtFit {
    /// Real part of the fitted constant.
    pub constant: f64,
    /// Imaginary part of the fitted constant (zero up to quadrature error).
    pub constant_imag: f64,
    /// Relative `L^2` residual of the fit over the dual grid.
    pub residual: f64,
}

/// A planar grid wide enough for `χ_k` to decay and fine enough to resolve its
/// transform.
pub fn ch_ft_default_grid(k: usize) -> GridSpec {
    let r = ((4.0 * k as f64 + 50.0) / PI).sqrt().max(4.0);
    let n = ((16.0 * r * 1.2) as usize).next_power_of_two().max(128);
    GridSpec::new(r, n).expect("valid default grid")
}

/// Fits the constant relating `χ_k` to its own Fourier transform at half scale.
pub fn verify_ch_ft(k: usize, grid: &GridSpec) -> Result<ChFtFit> {
    if k > 15 {
        return Err(Error::OutOfRange {
            name: "k",
            range: "[0,15]",
            value: k as f64,
        });
    }
    let f = GridFunction::from_fn_2d(grid, |z| Complex64::from(chi(k, z)));
    let hat = fourier_transform(&f);
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let (mut num, mut den, mut norm_a) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
    let mut pairs = Vec::with_capacity(hat.samples().len());
    for (idx, &b) in hat.samples().iter().enumerate() {
        let zeta = hat.point_2d(idx);
        let a = chi(k, 2.0 * zeta);
        let b = sign * b;
        num += a * b.conj();
        den += b.norm_sqr();
        norm_a += a * a;
        pairs.push((a, b));
    }
    let c = num / den;
    let err: f64 = pairs.iter().map(|&(a, b)| (a - c * b).norm_sqr()).sum();
    let residual = (err / norm_a).sqrt();
    if residual > 1e-3 {
        return Err(Error::Resolution {
            what: format!("transform of chi_{k}"),
            residual,
            tolerance: 1e-3,
        });
    }
    Ok(ChFtFit {
        constant: c.re,
        constant_imag: c.im,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert!((hermite_function(0, 0.0) - 2f64.powf(0.25)).abs() < 1e-15);
        assert_eq!(hermite_function(1, 0.0), 0.0);
        assert!((hermite_function(0, 0.3) - 2f64.powf(0.25) * (-PI * 0.09).exp()).abs() < 1e-15);
    }

    #[test]
    fn hermite_orthonormality() {
        // h_k(x) = (2π)^{1/4} ψ_k(√(2π) x), so ∫ h_k h_l dx = ∫ ψ_k ψ_l dy
        let rule = QuadratureRule::gauss_hermite(64);
        let n = 30;
        let tables: Vec<Vec<f64>> = rule.nodes().iter().map(|&y| hermite_psi_all(n, y)).collect();
        for k in 0..=n {
            for l in 0..=n {
                let s: f64 = tables
                    .iter()
                    .zip(rule.scaled_weights())
                    .map(|(t, w)| w * t[k] * t[l])
                    .sum();
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "({k},{l}) -> {s}");
            }
        }
    }

    #[test]
    fn hermite_stays_bounded() {
        for i in 0..=400 {
            let x = -8.0 + 16.0 * i as f64 / 400.0;
            let v = hermite_functions(100, x);
            assert!(v.iter().all(|h| h.abs() <= 1.2));
        }
        assert!(hermite_functions(200, 40.0).iter().all(|h| h.is_finite()));
    }

    #[test]
    fn laguerre_values() {
        for k in 0..10 {
            assert_eq!(laguerre_poly(k, 0.0, 0.0).unwrap(), 1.0);
        }
        assert!((laguerre_poly(1, 0.0, 0.7).unwrap() - 0.3).abs() < 1e-15);
        assert!((laguerre_poly(2, 0.0, 1.0).unwrap() + 0.5).abs() < 1e-15);
        // L_3^1(0) = binomial(4, 3)
        assert!((laguerre_poly(3, 1.0, 0.0).unwrap() - 4.0).abs() < 1e-14);
        assert!(laguerre_poly(2, 0.0, -1.0).is_err());
        assert!(laguerre_poly(2, -1.0, 1.0).is_err());
        let f = laguerre_functions(40, 3.7);
        for (k, v) in f.iter().enumerate() {
            let direct = (-1.85f64).exp() * laguerre_poly(k, 0.0, 3.7).unwrap();
            assert!((v - direct).abs() < 1e-12);
        }
        assert!(laguerre_functions(200, 2000.0).iter().all(|v| v.is_finite() && v.abs() <= 1.0));
    }

    #[test]
    fn chi_values() {
        for k in 0..6 {
            assert!((chi(k, Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        }
        let z = Complex64::new(0.3, -0.4);
        assert!((chi(0, z) - (-PI * 0.25 / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn chi_orthonormality() {
        // ∫_C χ_k χ_l = ∫_0^∞ ℓ_k(u) ℓ_l(u) du
        let rule = QuadratureRule::gauss_laguerre(64);
        let tables: Vec<Vec<f64>> =
            rule.nodes().iter().map(|&u| laguerre_functions(25, u)).collect();
        for k in 0..=25 {
            for l in 0..=25 {
                let s: f64 = tables
                    .iter()
                    .zip(rule.scaled_weights())
                    .map(|(t, w)| w * t[k] * t[l])
                    .sum();
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-8, "({k},{l})");
            }
        }
    }

    #[test]
    fn bessel_values() {
        // mpmath values, tests/fixtures/oracle.txt
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert!(bessel_j(0, 2.404_825_557_695_773).unwrap().abs() < 1e-9);
        assert!((bessel_j(1, 2.0 * PI).unwrap() + 0.212_382_530_076_369_05).abs() < 1e-13);
        assert!((bessel_j(1, 7.25).unwrap() - 0.068_581_700_653_131_74).abs() < 1e-13);
        assert!((bessel_j(0, 30.5).unwrap() + 0.019_389_754_517_762_15).abs() < 1e-13);
        assert!(bessel_j(0, -1.0).is_err());
    }

    #[test]
    fn bessel_crossover_overlap() {
        for order in [0, 1] {
            let s = bessel_series(order, BESSEL_CROSSOVER);
            let a = bessel_asymptotic(order, BESSEL_CROSSOVER);
            assert!((s - a).abs() < 1e-10, "order {order}: {s} vs {a}");
        }
        assert!((bessel_j(0, 12.0).unwrap() - 0.047_689_310_796_833_54).abs() < 1e-10);
        assert!((bessel_j(1, 12.0).unwrap() + 0.223_447_104_490_627_6).abs() < 1e-10);
    }

    #[test]
    fn bela1_examples() {
        assert!(verify_bela1(0, 0, 1.0).unwrap() < 1e-8);
        assert!(verify_bela1(3, 0, 0.5).unwrap() < 1e-8);
        assert!(verify_bela1(2, 1, 2.0).unwrap() < 1e-7);
        assert!(verify_bela1(21, 0, 1.0).is_err());
    }

    #[test]
    fn ch_ft_constant_is_one_half() {
        for k in [0, 1, 4] {
            let fit = verify_ch_ft(k, &ch_ft_default_grid(k)).unwrap();
            assert!((fit.constant - 0.5).abs() < 1e-3, "k = {k}: {fit:?}");
            assert!(fit.residual < 1e-3);
        }
    }
}
