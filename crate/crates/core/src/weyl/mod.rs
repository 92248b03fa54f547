//! The Weyl transform `ρ(f) = ∫ f(w) π(w, 0) dw` on the plane.
//!
//! `ρ(f)` is the integral operator with kernel
//! `K_f(x, y) = ∫ f(y - x + iv) e^{πiv(x+y)} dv`. Matrices are taken in the
//! Hermite basis; radial `f` is diagonal there, with the Laguerre spectrum
//! `f̃(k) = ∫ f χ_k` on the diagonal.

mod matrix;
mod spectrum;
mod twisted;

pub use matrix::{
    nu_rho_check, schatten_norm, weyl_kernel, weyl_matrix, weyl_matrix_on, WeylMatrix,
    WEYL_MATRIX_CAP,
};
pub use spectrum::{
    counterexample_ratio, counterexample_scan, gaussian_ratio_curve, gaussian_spectrum_lq,
    gaussian_weyl_spectrum, schatten_norm_diag, spectrum_norm, spectrum_norm_to, weighted_norm,
    weighted_polyradial_ratio, weyl_diag_radial, CounterexampleReport, CounterexampleScan,
    LaguerreSpectrum,
};
pub use twisted::{
    blowup_errors, twisted_convolve, twisted_convolve_scaled, twisted_operator_schatten_check,
    OpNormCheck,
};
