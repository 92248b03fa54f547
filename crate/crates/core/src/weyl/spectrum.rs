use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::curve::RatioCurve;
use crate::error::{Diagnosed, Error, Result, Warning};
use crate::euclidean::RadialHatTable;
use crate::exponents::{Exponent, LpIndex};
use crate::quadrature::{
    integrate_adaptive, refine_edges, QuadratureRule, Tolerance, PANEL_ORDER,
};
use crate::radial::{Extent, RadialProfile};
use crate::specfun::laguerre_functions;

/// Largest Laguerre index the spectrum routines accept.
pub const MAX_SPECTRUM_ORDER: usize = 1024;

/// Diagonal of `ρ(f)` for radial `f`: `values[k] = f̃(k) = ⟨ρ(f) h_k, h_k⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreSpectrum {
    values: Vec<Complex64>,
}

impl LaguerreSpectrum {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Invalid("spectrum must be non-empty and finite".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest stored index `K`.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Spectrum of a tensor product: `f̃(k₁, k₂) = f̃₁(k₁) f̃₂(k₂)`, flattened.
    pub fn tensor(&self, other: &Self) -> Vec<Complex64> {
        self.values
            .iter()
            .flat_map(|a| other.values.iter().map(move |b| a * b))
            .collect()
    }
}

const CHUNK: usize = 256;

/// `Σ_i w_i F(u_i) ℓ_k(u_i)` for `k = 0..=k_max`, reduced in a fixed order.
fn project(nodes: &[f64], weights: &[f64], k_max: usize, f: impl Fn(f64) -> Complex64 + Sync) -> Vec<Complex64> {
    let partials: Vec<Vec<Complex64>> = nodes
        .par_chunks(CHUNK)
        .zip(weights.par_chunks(CHUNK))
        .map(|(us, ws)| {
            let mut acc = vec![Complex64::new(0.0, 0.0); k_max + 1];
            for (&u, &w) in us.iter().zip(ws) {
                let fv = f(u);
                if w == 0.0 || fv == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let fv = fv * w;
                for (a, l) in acc.iter_mut().zip(laguerre_functions(k_max, u)) {
                    *a += fv * l;
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); k_max + 1];
    for part in partials {
        total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
    }
    total
}

fn max_change(a: &[Complex64], b: &[Complex64]) -> (f64, f64) {
    let change = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = b.iter().map(|y| y.norm()).fold(0.0, f64::max);
    (change, scale)
}

/// Laguerre spectrum `f̃(k) = ∫_0^∞ f_0(√(u/π)) e^{-u/2} L_k(u) du`, `k <= k_max`.
///
/// Gaussian-decaying profiles use Gauss–Laguerre nodes rescaled to the
/// profile's decay rate; compactly supported ones use composite
/// Gauss–Legendre panels on `[0, πR^2]` split at the profile's kinks. Node
/// counts double until the spectrum changes by less than `1e-10`.
pub fn weyl_diag_radial(profile: &RadialProfile, k_max: usize) -> Result<LaguerreSpectrum> {
    if k_max > MAX_SPECTRUM_ORDER {
        return Err(Error::OutOfRange {
            name: "K",
            range: "[0,1024]",
            value: k_max as f64,
        });
    }
    let f = |u: f64| profile.eval((u / PI).sqrt());
    let accepts = |change: f64, scale: f64| change <= 1e-12 + 1e-10 * scale;
    let mut last_change = f64::INFINITY;
    let values = match profile.extent() {
        Extent::Compact(radius) => {
            if radius == 0.0 {
                return LaguerreSpectrum::new(vec![Complex64::new(0.0, 0.0); k_max + 1]);
            }
            // integrate in r, where the profile is smooth on each piece; in
            // u = πr^2 a profile not even in r has a √u singularity at 0
            let breaks = profile.radial_breakpoints();
            let u_end = PI * radius * radius;
            let mut panels = 2
                + (((k_max + 1) as f64 * u_end).sqrt() / 2.0) as usize
                + profile.oscillations();
            let eval = |panels: usize| {
                let rule = QuadratureRule::composite_legendre(&refine_edges(&breaks, panels), PANEL_ORDER);
                let us: Vec<f64> = rule.nodes().iter().map(|r| PI * r * r).collect();
                let ws: Vec<f64> = rule
                    .nodes()
                    .iter()
                    .zip(rule.weights())
                    .map(|(r, w)| w * 2.0 * PI * r)
                    .collect();
                project(&us, &ws, k_max, f)
            };
            let mut prev = eval(panels);
            let mut result = None;
            for _ in 0..10 {
                panels *= 2;
                let next = eval(panels);
                let (change, scale) = max_change(&prev, &next);
                last_change = change;
                if accepts(change, scale) {
                    result = Some(next);
                    break;
                }
                prev = next;
            }
            result
        }
        Extent::Gaussian { rate } => {
            // e^{-rate·u} from the profile times e^{-u/2} from ℓ_k
            let gamma = rate + 0.5;
            let eval = |m: usize| {
                let rule = QuadratureRule::gauss_laguerre(m);
                let nodes: Vec<f64> = rule.nodes().iter().map(|x| x / gamma).collect();
                let weights: Vec<f64> = rule.scaled_weights().iter().map(|w| w / gamma).collect();
                project(&nodes, &weights, k_max, f)
            };
            let mut m = 64;
            let mut prev = eval(m);
            let mut result = None;
            while m < 1024 {
                m *= 2;
                let next = eval(m);
                let (change, scale) = max_change(&prev, &next);
                last_change = change;
                if accepts(change, scale) {
                    result = Some(next);
                    break;
                }
                prev = next;
            }
            result
        }
    };
    match values {
        Some(v) => LaguerreSpectrum::new(v),
        None => Err(Error::NonConvergence {
            what: "Laguerre spectrum".into(),
            change: last_change,
        }),
    }
}

/// `(t - 1/2)^k / (t + 1/2)^{k+1}`, the spectrum of `e^{-π t|z|^2}`.
///
/// At `t = 1/2` this is `1` for `k = 0` and `0` otherwise.
pub fn gaussian_weyl_spectrum(t: f64, k: usize) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange {
            name: "t",
            range: "(0,inf)",
            value: t,
        });
    }
    if t == 0.5 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let ratio = (t - 0.5) / (t + 0.5);
    Ok(ratio.powi(k as i32) / (t + 0.5))
}

/// Closed-form `ℓ^q` norm of the Gaussian spectrum, summing the geometric series.
pub fn gaussian_spectrum_lq(t: f64, q: LpIndex) -> Result<f64> {
    gaussian_weyl_spectrum(t, 0)?;
    let lead = 1.0 / (t + 0.5);
    Ok(match q {
        LpIndex::Infinity => lead,
        LpIndex::Finite(q) => {
            // 1 - |r|^q with r = 1 - 1/(t + 1/2), kept accurate as t → ∞
            let log_r = (-1.0 / (t + 0.5)).ln_1p();
            let log_abs_r = if t >= 0.5 {
                log_r
            } else {
                ((0.5 - t) / (t + 0.5)).ln()
            };
            let tail = if t == 0.5 { 1.0 } else { -(q * log_abs_r).exp_m1() };
            lead * tail.powf(-1.0 / q)
        }
    })
}

/// `ℓ^q` norm of a spectrum. Warns when `|values[K]|^q·K` exceeds `1e-10`
/// of the partial sum.
pub fn schatten_norm_diag(s: &LaguerreSpectrum, q: LpIndex) -> Diagnosed<f64> {
    match q {
        LpIndex::Infinity => {
            Diagnosed::clean(s.values.iter().map(|v| v.norm()).fold(0.0, f64::max))
        }
        LpIndex::Finite(q) => {
            let partial: f64 = s.values.iter().map(|v| v.norm().powf(q)).sum();
            let k = s.last_index();
            let tail = s.values[k].norm().powf(q) * k as f64;
            let mut warnings = Vec::new();
            if tail > 1e-10 * partial {
                warnings.push(Warning::Truncation {
                    what: format!("Laguerre spectrum truncated at K = {k}"),
                    tail: tail / partial.max(f64::MIN_POSITIVE),
                });
            }
            Diagnosed {
                value: partial.powf(1.0 / q),
                warnings,
            }
        }
    }
}

/// `‖ρ(f)‖_{S^q}` for radial `f`, doubling the spectrum length from 64 up to
/// [`MAX_SPECTRUM_ORDER`] until the norm changes by less than `1e-11`
/// relative. Warns when the longest spectrum still has not settled.
pub fn spectrum_norm(profile: &RadialProfile, q: LpIndex) -> Result<Diagnosed<f64>> {
    spectrum_norm_to(profile, q, 1e-11)
}

/// [`spectrum_norm`] with the relative stopping tolerance `rel`.
pub fn spectrum_norm_to(profile: &RadialProfile, q: LpIndex, rel: f64) -> Result<Diagnosed<f64>> {
    let mut k = 64;
    let mut prev = schatten_norm_diag(&weyl_diag_radial(profile, k - 1)?, q);
    let mut change = f64::INFINITY;
    while k < MAX_SPECTRUM_ORDER {
        k *= 2;
        let next = schatten_norm_diag(&weyl_diag_radial(profile, k - 1)?, q);
        change = (next.value - prev.value).abs();
        prev = next;
        if change <= rel * prev.value.abs() {
            return Ok(Diagnosed::clean(prev.value));
        }
    }
    prev.warnings.push(Warning::Truncation {
        what: format!("Schatten norm from a spectrum of length {k}"),
        tail: change / prev.value.abs().max(f64::MIN_POSITIVE),
    });
    Ok(prev)
}

/// `R(t) = ‖ρ(e^{-πt|·|^2})‖_{S^{p'}} / ‖e^{-πt|·|^2}‖_p` over the given `t`.
pub fn gaussian_ratio_curve(p: f64, t_list: &[f64]) -> Result<RatioCurve> {
    let e = Exponent::new(p)?;
    if p == 1.0 || p == 2.0 {
        return Err(Error::OutOfRange {
            name: "p",
            range: "(1,2)",
            value: p,
        });
    }
    let mut points = Vec::with_capacity(t_list.len());
    for &t in t_list {
        if !(t > 0.5) {
            return Err(Error::OutOfRange {
                name: "t",
                range: "(1/2,inf)",
                value: t,
            });
        }
        let num = gaussian_spectrum_lq(t, e.dual())?;
        let den = (p * t).powf(-1.0 / p);
        points.push((t, num / den));
    }
    Ok(RatioCurve {
        label: "Weyl transform, Gaussian family".into(),
        parameter: "t".into(),
        points,
        target: Some(e.babenko_beckner().powi(2)),
    })
}

/// `‖f e^{(π/2)|·|^2}‖_p` for a compactly supported radial profile.
pub fn weighted_norm(profile: &RadialProfile, p: f64) -> Result<f64> {
    let radius = match profile.extent() {
        Extent::Compact(r) => r,
        Extent::Gaussian { .. } => {
            return Err(Error::Invalid("the weighted norm needs compact support".into()))
        }
    };
    if radius == 0.0 {
        return Ok(0.0);
    }
    let v: f64 = integrate_adaptive(
        |r: f64| {
            let a = profile.eval(r).norm();
            if a == 0.0 {
                0.0
            } else {
                (p * (a.ln() + 0.5 * PI * r * r)).exp() * 2.0 * PI * r
            }
        },
        &profile.radial_breakpoints(),
        4 + profile.oscillations(),
        // |f|^p has kinks where a mixed-sign profile vanishes
        Tolerance::new(1e-300, 1e-10),
        "weighted norm",
    )?;
    Ok(v.powf(1.0 / p))
}

/// `‖ρ(f)‖_{S^{p'}} / ((B_p)^{2n} ‖f e^{(π/2)|·|^2}‖_p)` for radial `f`
/// (`n = 1`) or a tensor product of two radial profiles (`n = 2`).
pub fn weighted_polyradial_ratio(factors: &[RadialProfile], p: f64) -> Result<Diagnosed<f64>> {
    let e = Exponent::new(p)?;
    if factors.is_empty() || factors.len() > 2 {
        return Err(Error::Invalid("expected one or two radial factors".into()));
    }
    let mut num = 1.0;
    let mut den = e.babenko_beckner().powi(2 * factors.len() as i32);
    let mut warnings = Vec::new();
    for f in factors {
        let s = spectrum_norm_to(f, e.dual(), 1e-9)?;
        num *= s.value;
        warnings.extend(s.warnings);
        den *= weighted_norm(f, p)?;
    }
    if den == 0.0 {
        return Err(Error::Invalid("ratio of the zero function".into()));
    }
    Ok(Diagnosed {
        value: num / den,
        warnings,
    })
}

/// One entry of the twisted-versus-Euclidean convolution comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleReport {
    pub k: usize,
    /// `r_k = ‖χ_k × χ_k‖₂ / ‖χ_k ∗ χ_k‖₂ = 1 / ‖χ̂_k‖₄²`.
    pub ratio: f64,
    /// `‖χ̂_k‖₄` from the radial transform.
    pub hat_l4: f64,
    /// `‖χ_k‖₄` from Laguerre quadrature.
    pub chi_l4: f64,
}

/// `r_k` for the Laguerre function `χ_k`.
///
/// The numerator is `‖χ_k‖₂ = 1` because `χ_k × χ_k = χ_k`; the denominator
/// `‖χ_k ∗ χ_k‖₂ = ‖χ̂_k^2‖₂ = ‖χ̂_k‖₄^2` is computed by radial quadrature of
/// the Fourier transform, without using any closed form for `χ̂_k`.
pub fn counterexample_ratio(k: usize) -> Result<CounterexampleReport> {
    if k > 60 {
        return Err(Error::OutOfRange {
            name: "k",
            range: "[0,60]",
            value: k as f64,
        });
    }
    let profile = RadialProfile::Laguerre { k };
    let zeta_max = 0.5 * ((4.0 * k as f64 + 100.0) / PI).sqrt() + 0.5;
    let table = RadialHatTable::new(&profile, zeta_max)?;
    let l4 = |panels: usize| -> f64 {
        let rule = QuadratureRule::composite_legendre(&refine_edges(&[0.0, zeta_max], panels), PANEL_ORDER);
        let terms: Vec<f64> = rule
            .nodes()
            .par_iter()
            .zip(rule.weights().par_iter())
            .map(|(&z, &w)| w * table.eval(z).norm().powi(4) * 2.0 * PI * z)
            .collect();
        terms.iter().sum()
    };
    let mut panels = 8 + 2 * k;
    let mut prev = l4(panels);
    let mut hat4 = None;
    let mut change = f64::INFINITY;
    for _ in 0..6 {
        panels *= 2;
        let next = l4(panels);
        change = (next - prev).abs();
        if change <= 1e-11 * next {
            hat4 = Some(next);
            break;
        }
        prev = next;
    }
    let hat4 = hat4.ok_or(Error::NonConvergence {
        what: format!("L4 norm of the transform of chi_{k}"),
        change,
    })?;
    // ∫_C χ_k^4 = ∫_0^∞ ℓ_k(u)^4 du; the integrand is e^{-2u} times a polynomial
    let rule = QuadratureRule::gauss_laguerre(((4 * k + 2) / 2 + 2).next_power_of_two().max(32));
    let chi4: f64 = rule
        .nodes()
        .iter()
        .zip(rule.scaled_weights())
        .map(|(&x, &w)| w / 2.0 * laguerre_functions(k, x / 2.0)[k].powi(4))
        .sum();
    let hat_l4 = hat4.powf(0.25);
    Ok(CounterexampleReport {
        k,
        ratio: 1.0 / (hat_l4 * hat_l4),
        hat_l4,
        chi_l4: chi4.powf(0.25),
    })
}

/// `r_k` for `k = 0..=k_max` and the first index from which all ratios exceed 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleScan {
    pub reports: Vec<CounterexampleReport>,
    /// Smallest `k₀` with `r_k > 1` for every scanned `k >= k₀`.
    pub threshold: Option<usize>,
}

pub fn counterexample_scan(k_max: usize) -> Result<CounterexampleScan> {
    let reports = (0..=k_max)
        .into_par_iter()
        .map(counterexample_ratio)
        .collect::<Result<Vec<_>>>()?;
    let mut threshold = None;
    for r in reports.iter().rev() {
        if r.ratio > 1.0 {
            threshold = Some(r.k);
        } else {
            break;
        }
    }
    Ok(CounterexampleScan { reports, threshold })
}
