//! Quadrature rules and adaptive composite integration.
//!
//! Gauss rules come from Newton iteration on the three-term recurrences,
//! seeded either by the classical cosine guesses (Legendre) or by the
//! eigenvalues of the Jacobi matrix (Laguerre, Hermite). Laguerre and Hermite
//! weights underflow long before their nodes run out, so each rule also stores
//! *scaled* weights `w_i e^{x_i}` (resp. `w_i e^{x_i^2}`); summing scaled
//! weights against `f` approximates `∫ f` directly.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{hermite_psi_scaled, laguerre_scaled_triplet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    GaussLegendre,
    GaussLaguerre,
    GaussHermite,
    Trapezoid,
    Simpson,
}

/// An immutable set of nodes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights against the rule's weight function. For Laguerre and Hermite
    /// rules the far weights may underflow to zero; see [`Self::scaled_weights`].
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights for integrating against Lebesgue measure. Equal to
    /// [`Self::weights`] for Legendre, trapezoid and Simpson rules.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`, the integral against the rule's weight function.
    pub fn integrate<T: Integrand>(&self, f: impl Fn(f64) -> T) -> T {
        sum_weighted(&self.nodes, &self.weights, f)
    }

    /// `Σ w̃_i f(x_i)` with scaled weights, approximating `∫ f dx`.
    pub fn integrate_plain<T: Integrand>(&self, f: impl Fn(f64) -> T) -> T {
        sum_weighted(&self.nodes, &self.scaled, f)
    }

    /// `m`-point Gauss–Legendre rule on `[-1, 1]`.
    pub fn gauss_legendre(m: usize) -> Arc<Self> {
        cached(RuleKind::GaussLegendre, m, || build_legendre(m))
    }

    /// `m`-point Gauss–Laguerre rule for the weight `e^{-x}` on `[0, ∞)`.
    pub fn gauss_laguerre(m: usize) -> Arc<Self> {
        cached(RuleKind::GaussLaguerre, m, || build_laguerre(m))
    }

    /// `m`-point Gauss–Hermite rule for the weight `e^{-x^2}` on `R`.
    pub fn gauss_hermite(m: usize) -> Arc<Self> {
        cached(RuleKind::GaussHermite, m, || build_hermite(m))
    }

    /// Composite trapezoid rule with `n` intervals on `[a, b]`.
    pub fn trapezoid(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b, n)?;
        let h = (b - a) / n as f64;
        let nodes: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
        let weights: Vec<f64> = (0..=n)
            .map(|i| if i == 0 || i == n { h / 2.0 } else { h })
            .collect();
        Ok(Self::plain(RuleKind::Trapezoid, nodes, weights))
    }

    /// Composite Simpson rule with `n` (even) intervals on `[a, b]`.
    pub fn simpson(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b, n)?;
        if n % 2 != 0 {
            return Err(Error::Invalid("Simpson rule needs an even interval count".into()));
        }
        let h = (b - a) / n as f64;
        let nodes: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
        let weights: Vec<f64> = (0..=n)
            .map(|i| {
                let c = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        Ok(Self::plain(RuleKind::Simpson, nodes, weights))
    }

    /// Composite Gauss–Legendre rule of the given order over consecutive
    /// panels `[edges[i], edges[i+1]]`.
    pub fn composite_legendre(edges: &[f64], order: usize) -> Self {
        let base = Self::gauss_legendre(order);
        let mut nodes = Vec::with_capacity(order * edges.len().saturating_sub(1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, wt) in base.nodes.iter().zip(&base.weights) {
                nodes.push(mid + half * x);
                weights.push(half * wt);
            }
        }
        Self::plain(RuleKind::GaussLegendre, nodes, weights)
    }

    fn plain(kind: RuleKind, nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        Self {
            kind,
            nodes,
            scaled: weights.clone(),
            weights,
        }
    }
}

fn check_interval(a: f64, b: f64, n: usize) -> Result<()> {
    if !(b > a) || !a.is_finite() || !b.is_finite() || n == 0 {
        return Err(Error::Invalid(format!("bad interval [{a}, {b}] with {n} pieces")));
    }
    Ok(())
}

type RuleCache = Mutex<HashMap<(RuleKind, usize), Arc<QuadratureRule>>>;

fn cached(kind: RuleKind, m: usize, build: impl FnOnce() -> QuadratureRule) -> Arc<QuadratureRule> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().unwrap().get(&(kind, m)) {
        return rule.clone();
    }
    let rule = Arc::new(build());
    cache
        .lock()
        .unwrap()
        .entry((kind, m))
        .or_insert(rule)
        .clone()
}

fn build_legendre(m: usize) -> QuadratureRule {
    assert!(m >= 1, "Gauss rule needs at least one node");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let legendre = |x: f64| {
        let (mut p0, mut p1) = (1.0, x);
        for k in 1..m {
            let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
            p0 = p1;
            p1 = p2;
        }
        let p = if m == 0 { 1.0 } else { p1 };
        // derivative from P_m and P_{m-1}
        let dp = m as f64 * (x * p - p0) / (x * x - 1.0);
        (p, dp)
    };
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    QuadratureRule::plain(RuleKind::GaussLegendre, nodes, weights)
}

/// Eigenvalues of a symmetric tridiagonal Jacobi matrix, ascending.
fn jacobi_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = diag[i];
        if i + 1 < m {
            a[(i, i + 1)] = off[i];
            a[(i + 1, i)] = off[i];
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn build_laguerre(m: usize) -> QuadratureRule {
    assert!(m >= 1, "Gauss rule needs at least one node");
    let diag: Vec<f64> = (0..m).map(|i| (2 * i + 1) as f64).collect();
    let off: Vec<f64> = (1..m).map(|i| i as f64).collect();
    let seeds = jacobi_eigenvalues(&diag, &off);
    let mf = m as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut scaled = Vec::with_capacity(m);
    for mut x in seeds {
        for _ in 0..50 {
            // L'_m = m (L_m - L_{m-1}) / x; the shared scale cancels
            let (prev, cur, _, _) = laguerre_scaled_triplet(m, x);
            let dx = x * cur / (mf * (cur - prev));
            x -= dx;
            if dx.abs() <= 1e-15 * x.max(1.0) {
                break;
            }
        }
        let (_, _, next, log_scale) = laguerre_scaled_triplet(m, x);
        // w e^x = x / ((m+1)^2 (e^{-x/2} L_{m+1}(x))^2), computed in log form
        let log_next = next.abs().ln() + log_scale;
        let log_s = x.ln() - 2.0 * (mf + 1.0).ln() - 2.0 * log_next;
        nodes.push(x);
        scaled.push(log_s.exp());
        weights.push((log_s - x).exp());
    }
    QuadratureRule {
        kind: RuleKind::GaussLaguerre,
        nodes,
        weights,
        scaled,
    }
}

fn build_hermite(m: usize) -> QuadratureRule {
    assert!(m >= 1, "Gauss rule needs at least one node");
    let diag = vec![0.0; m];
    let off: Vec<f64> = (1..m).map(|i| (i as f64 / 2.0).sqrt()).collect();
    let seeds = jacobi_eigenvalues(&diag, &off);
    let mf = m as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut scaled = Vec::with_capacity(m);
    for mut y in seeds {
        for _ in 0..50 {
            // p'_m = sqrt(2m) p_{m-1} for orthonormal Hermite polynomials
            let (prev, cur, _) = hermite_psi_scaled(m, y);
            let dy = cur / ((2.0 * mf).sqrt() * prev);
            y -= dy;
            if dy.abs() <= 1e-15 * y.abs().max(1.0) {
                break;
            }
        }
        let (prev, _, log_scale) = hermite_psi_scaled(m, y);
        // w e^{y^2} = 1 / (m psi_{m-1}(y)^2), psi the Hermite function
        let log_psi = prev.abs().ln() + log_scale;
        let log_s = -mf.ln() - 2.0 * log_psi;
        nodes.push(y);
        scaled.push(log_s.exp());
        weights.push((log_s - y * y).exp());
    }
    QuadratureRule {
        kind: RuleKind::GaussHermite,
        nodes,
        weights,
        scaled,
    }
}

/// Scalar types the integrators can accumulate.
pub trait Integrand:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

fn sum_weighted<T: Integrand>(nodes: &[f64], weights: &[f64], f: impl Fn(f64) -> T) -> T {
    nodes
        .iter()
        .zip(weights)
        .fold(T::default(), |acc, (&x, &w)| if w == 0.0 { acc } else { acc + f(x) * w })
}

/// Absolute and relative stopping tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    pub fn accepts(&self, change: f64, value: f64) -> bool {
        change <= self.abs.max(self.rel * value)
    }
}

/// Panel order used by [`integrate_adaptive`].
pub const PANEL_ORDER: usize = 16;

/// Splits every segment between consecutive breakpoints into `per_segment`
/// equal panels.
pub fn refine_edges(breakpoints: &[f64], per_segment: usize) -> Vec<f64> {
    let mut edges = Vec::with_capacity(breakpoints.len() * per_segment + 1);
    for w in breakpoints.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for i in 0..per_segment {
            edges.push(lo + (hi - lo) * i as f64 / per_segment as f64);
        }
    }
    if let Some(&last) = breakpoints.last() {
        edges.push(last);
    }
    edges
}

/// Composite Gauss–Legendre integration over `breakpoints`, doubling the
/// panel count until two successive estimates agree within `tol`.
///
/// The integrand should be smooth between breakpoints; kinks and jumps belong
/// in the breakpoint list.
pub fn integrate_adaptive<T: Integrand>(
    f: impl Fn(f64) -> T,
    breakpoints: &[f64],
    initial_panels: usize,
    tol: Tolerance,
    what: &str,
) -> Result<T> {
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::Invalid(format!("{what}: breakpoints must be sorted")));
    }
    let mut panels = initial_panels.max(1);
    let estimate = |panels: usize| {
        QuadratureRule::composite_legendre(&refine_edges(breakpoints, panels), PANEL_ORDER)
            .integrate(&f)
    };
    let mut prev = estimate(panels);
    let mut change = f64::INFINITY;
    for _ in 0..12 {
        panels *= 2;
        let next = estimate(panels);
        change = (next - prev).magnitude();
        if tol.accepts(change, next.magnitude()) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: what.to_string(),
        change,
    })
}
