use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Diagnosed, Error, Result, Warning};
use crate::euclidean::GridFunction;
use crate::exponents::LpIndex;
use crate::specfun::{hermite_extent, hermite_functions};

/// Default cap on the Hermite truncation order.
pub const WEYL_MATRIX_CAP: usize = 128;

/// Truncated Hermite-basis matrix, `entries[(j, k)] ≈ ⟨ρ(f) h_k, h_j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylMatrix {
    entries: DMatrix<Complex64>,
}

impl WeylMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Invalid("Weyl matrix must be square".into()));
        }
        if entries.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Invalid("Weyl matrix entries must be finite".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_diagonal(values: &[Complex64]) -> Self {
        Self {
            entries: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values)),
        }
    }

    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Frobenius (Hilbert–Schmidt) norm.
    pub fn hs_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        let m = self.order();
        let mut best: f64 = 0.0;
        for j in 0..m {
            for k in 0..m {
                if j != k {
                    best = best.max(self.entries[(j, k)].norm());
                }
            }
        }
        best
    }

    /// Leading `m × m` block.
    pub fn truncate(&self, m: usize) -> Self {
        let m = m.min(self.order());
        Self {
            entries: self.entries.view((0, 0), (m, m)).into_owned(),
        }
    }
}

/// Interpolation stencil width along the grid's first axis.
const STENCIL: usize = 8;

/// `K_f(x, y) = ∫ f(y - x + iv) e^{πiv(x+y)} dv`, with `f` interpolated in its
/// first argument by an 8-point Lagrange stencil and integrated along the
/// grid's `v` axis.
pub fn weyl_kernel(f: &GridFunction, x: f64, y: f64) -> Result<Complex64> {
    if f.dim() != 2 {
        return Err(Error::Invalid("Weyl kernel needs a planar grid function".into()));
    }
    let spec = f.spec();
    let n = spec.points();
    let h = spec.spacing();
    let u = y - x;
    let pos = (u + spec.half_width()) / h;
    let half = STENCIL as f64 / 2.0;
    if !x.is_finite() || !y.is_finite() || pos < half - 1.0 || pos >= (n as f64) - half {
        return Err(Error::Invalid(format!(
            "kernel point ({x}, {y}) leaves the grid's interpolation range"
        )));
    }
    let base = pos.floor() as usize + 1 - STENCIL / 2;
    let weights: Vec<f64> = (0..STENCIL)
        .map(|a| {
            let xa = (base + a) as f64;
            (0..STENCIL)
                .filter(|&b| b != a)
                .map(|b| {
                    let xb = (base + b) as f64;
                    (pos - xb) / (xa - xb)
                })
                .product()
        })
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let v = spec.coord(j);
        let mut val = Complex64::new(0.0, 0.0);
        for (a, w) in weights.iter().enumerate() {
            val += f.samples()[(base + a) * n + j] * *w;
        }
        sum += val * Complex64::from_polar(1.0, PI * v * (x + y));
    }
    Ok(sum * h)
}

/// Nodes `x_a = a·h`, `|a| <= half`, on the grid spacing.
struct KernelNodes {
    h: f64,
    half: isize,
}

impl KernelNodes {
    fn for_order(h: f64, m: usize) -> Self {
        let half = (hermite_extent(m) / h).ceil() as isize;
        Self { h, half }
    }

    fn len(&self) -> usize {
        (2 * self.half + 1) as usize
    }

    fn coord(&self, a: usize) -> f64 {
        (a as isize - self.half) as f64 * self.h
    }
}

/// `table[d][s] = h Σ_j f(u_d, v_j) e^{πi v_j s h}` for grid offsets `d` and
/// `s ∈ [-2·half, 2·half]`.
fn v_integrals(f: &GridFunction, nodes: &KernelNodes) -> Vec<Vec<Complex64>> {
    let spec = f.spec();
    let n = spec.points();
    let h = spec.spacing();
    let s_count = (4 * nodes.half + 1) as usize;
    let phases: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let v = spec.coord(j);
            (0..s_count)
                .map(|s| {
                    let s = s as isize - 2 * nodes.half;
                    Complex64::from_polar(1.0, PI * v * s as f64 * h)
                })
                .collect()
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let row = &f.samples()[i * n..(i + 1) * n];
            if row.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
                return vec![Complex64::new(0.0, 0.0); s_count];
            }
            (0..s_count)
                .map(|s| {
                    row.iter()
                        .zip(&phases)
                        .map(|(fv, ph)| fv * ph[s])
                        .sum::<Complex64>()
                        * h
                })
                .collect()
        })
        .collect()
}

/// Which phase the kernel carries: `(x+y)` for `ρ`, `2y` for the ordered
/// product `e^{2πiuD} e^{2πivX}`.
#[derive(Clone, Copy)]
enum KernelPhase {
    Symmetric,
    Ordered,
}

fn hermite_block(m: usize, nodes: &KernelNodes) -> DMatrix<Complex64> {
    let rows: Vec<Vec<f64>> = (0..nodes.len())
        .into_par_iter()
        .map(|a| hermite_functions(m - 1, nodes.coord(a)))
        .collect();
    DMatrix::from_fn(nodes.len(), m, |a, k| Complex64::from(rows[a][k]))
}

fn assemble(f: &GridFunction, m: usize, phase: KernelPhase) -> Result<DMatrix<Complex64>> {
    if f.dim() != 2 {
        return Err(Error::Invalid("Weyl matrices need a planar grid function".into()));
    }
    if m == 0 {
        return Err(Error::Invalid("truncation order must be positive".into()));
    }
    let n = f.spec().points() as isize;
    let nodes = KernelNodes::for_order(f.spacing(), m);
    let table = v_integrals(f, &nodes);
    let len = nodes.len();
    let half = nodes.half;
    let kernel = DMatrix::from_fn(len, len, |a, b| {
        // u = x_b - x_a = d h, sampled at grid row d + N/2
        let d = b as isize - a as isize;
        let row = d + n / 2;
        if row < 0 || row >= n {
            return Complex64::new(0.0, 0.0);
        }
        let s = match phase {
            KernelPhase::Symmetric => a as isize + b as isize - 2 * half,
            KernelPhase::Ordered => 2 * (b as isize - half),
        };
        table[row as usize][(s + 2 * half) as usize]
    });
    let herm = hermite_block(m, &nodes);
    let h = f.spacing();
    Ok(herm.transpose() * kernel * herm * Complex64::from(h * h))
}

/// Hermite-basis matrix of `ρ(f)` truncated to order `m`.
///
/// Warns when the last row or column carries more than `1e-6` of the
/// Frobenius norm, i.e. when `m` is too small for `f`.
pub fn weyl_matrix(f: &GridFunction, m: usize) -> Result<Diagnosed<WeylMatrix>> {
    if m > WEYL_MATRIX_CAP {
        return Err(Error::OutOfRange {
            name: "M",
            range: "[1,128]",
            value: m as f64,
        });
    }
    weyl_matrix_on(f, m)
}

/// [`weyl_matrix`] without the default order cap.
pub fn weyl_matrix_on(f: &GridFunction, m: usize) -> Result<Diagnosed<WeylMatrix>> {
    let entries = assemble(f, m, KernelPhase::Symmetric)?;
    let total = entries.norm();
    let last_row = entries.row(m - 1).norm();
    let last_col = entries.column(m - 1).norm();
    let mut warnings = Vec::new();
    let edge = last_row.max(last_col);
    if total > 0.0 && edge > 1e-6 * total {
        warnings.push(Warning::Truncation {
            what: format!("Weyl matrix of order {m}"),
            tail: edge / total,
        });
    }
    Ok(Diagnosed {
        value: WeylMatrix::new(entries)?,
        warnings,
    })
}

/// Schatten `q`-norm from the singular values of the truncated matrix.
pub fn schatten_norm(w: &WeylMatrix, q: LpIndex) -> f64 {
    let sv = w.entries.clone().svd(false, false).singular_values;
    match q {
        LpIndex::Infinity => sv.iter().copied().fold(0.0, f64::max),
        LpIndex::Finite(q) => sv.iter().map(|s| s.powf(q)).sum::<f64>().powf(1.0 / q),
    }
}

/// Compares `ν(f) = ∫ f(u+iv) e^{2πiuD} e^{2πivX} du dv`, assembled from its
/// own kernel `∫ f(y - x + iv) e^{2πivy} dv`, with `ρ(e^{iπuv} f)`. Returns
/// the relative Frobenius difference of the two Hermite matrices.
pub fn nu_rho_check(f: &GridFunction, m: usize) -> Result<f64> {
    let nu = assemble(f, m, KernelPhase::Ordered)?;
    let twisted = f.map_points_2d(|z, v| v * Complex64::from_polar(1.0, PI * z.re * z.im));
    let rho = assemble(&twisted, m, KernelPhase::Symmetric)?;
    let scale = rho.norm();
    if scale == 0.0 {
        return Ok(nu.norm());
    }
    let residual = (nu - rho).norm() / scale;
    if residual > 1e-3 {
        return Err(Error::Resolution {
            what: "ordered versus symmetric Weyl quantization".into(),
            residual,
            tolerance: 1e-3,
        });
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::GridSpec;

    fn gaussian() -> GridFunction {
        GridFunction::from_fn_2d(&GridSpec::default_for(2), |z| {
            Complex64::from((-PI * z.norm_sqr()).exp())
        })
    }

    #[test]
    fn gaussian_kernel_closed_form() {
        let f = gaussian();
        for (x, y) in [(0.0, 0.0), (0.3, -0.2), (-0.71, 0.45), (1.0, 1.3)] {
            let k = weyl_kernel(&f, x, y).unwrap();
            let exact = (-PI * (y - x) * (y - x)).exp() * (-PI * (x + y) * (x + y) / 4.0).exp();
            assert!((k - exact).norm() < 1e-6, "({x},{y})");
        }
        assert!(weyl_kernel(&f, -3.9, 3.9).is_err());
    }

    #[test]
    fn kernel_of_involution_is_adjoint() {
        let f = GridFunction::from_fn_2d(&GridSpec::default_for(2), |z| {
            let w = z - Complex64::new(0.4, -0.3);
            Complex64::new(1.0, 0.5 * z.re) * (-PI * w.norm_sqr()).exp()
        });
        let g = f.involution();
        for (x, y) in [(0.2, 0.1), (-0.5, 0.7)] {
            let a = weyl_kernel(&g, x, y).unwrap();
            let b = weyl_kernel(&f, y, x).unwrap().conj();
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn chi_zero_is_the_first_projection() {
        let f = GridFunction::from_fn_2d(&GridSpec::default_for(2), |z| {
            Complex64::from((-PI * z.norm_sqr() / 2.0).exp())
        });
        let w = weyl_matrix(&f, 16).unwrap().value;
        assert!((w.entries()[(0, 0)] - 1.0).norm() < 1e-6);
        assert!(w.max_off_diagonal() < 1e-6);
        for k in 1..16 {
            assert!(w.entries()[(k, k)].norm() < 1e-6);
        }
    }

    #[test]
    fn schatten_of_diagonal() {
        let w = WeylMatrix::from_diagonal(&[Complex64::from(3.0), Complex64::from(4.0)]);
        assert!((schatten_norm(&w, LpIndex::Finite(2.0)) - 5.0).abs() < 1e-12);
        assert!((schatten_norm(&w, LpIndex::Infinity) - 4.0).abs() < 1e-12);
        assert!((schatten_norm(&w, LpIndex::Finite(1.0)) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn zero_function_has_zero_matrix() {
        let f = GridFunction::zeros(2, GridSpec::default_for(2));
        let w = weyl_matrix(&f, 8).unwrap();
        assert!(w.is_clean());
        assert_eq!(w.value.hs_norm(), 0.0);
        assert_eq!(nu_rho_check(&f, 8).unwrap(), 0.0);
        assert_eq!(weyl_kernel(&f, 0.1, 0.2).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ordered_quantization_matches() {
        assert!(nu_rho_check(&gaussian(), 24).unwrap() < 1e-3);
    }
}
