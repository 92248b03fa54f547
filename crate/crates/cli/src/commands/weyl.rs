use std::f64::consts::PI;

use num_complex::Complex64;
use sharphy::corpus::{plane_corpus, random_radial_bumps};
use sharphy::euclidean::{lp_norm, GridFunction, GridSpec};
use sharphy::exponents::{Exponent, LpIndex};
use sharphy::radial::RadialProfile;
use sharphy::specfun::{ch_ft_default_grid, verify_ch_ft};
use sharphy::weyl::{
    blowup_errors, counterexample_scan, gaussian_ratio_curve, gaussian_weyl_spectrum, nu_rho_check,
    spectrum_norm, twisted_convolve, twisted_operator_schatten_check, weighted_polyradial_ratio,
    weyl_diag_radial, weyl_matrix,
};

use super::{grid, rel, usage, warnings};
use crate::args::{Global, OpProfile, WeylAction};
use crate::record::{Curve, ResultRecord};
use crate::CliResult;

pub fn run(g: &Global, action: &WeylAction, rec: &mut ResultRecord) -> CliResult<()> {
    match action {
        WeylAction::Ratio { p, t, .. } => ratio(*p, &t.0, rec),
        WeylAction::Verify => verify(g, rec),
        WeylAction::Weighted { p, count, pairs } => weighted(g.seed, &p.0, *count, *pairs, rec),
        WeylAction::Counterexample { kmax } => counterexample(*kmax, rec),
        WeylAction::Opnorm { profile, t, q } => opnorm(g, *profile, *t, *q, rec),
        WeylAction::Blowup { lambda } => blowup(g, &lambda.0, rec),
    }
}

fn ratio(p: f64, ts: &[f64], rec: &mut ResultRecord) -> CliResult<()> {
    let curve = gaussian_ratio_curve(p, ts)?;
    let target = curve.target.unwrap_or(f64::NAN);
    let max = curve.max_ratio().unwrap_or(f64::NAN);
    rec.result("target", target, 1e-15);
    rec.result("max_ratio", max, 1e-12);
    rec.result("last_ratio", curve.points.last().map_or(f64::NAN, |pt| pt.1), 1e-12);
    rec.exact("strictly_increasing", curve.is_strictly_increasing());
    rec.check("ratio never exceeds (B_p)^2", (max - target).max(0.0), 1e-12);
    rec.curve(Curve::from_ratio(&curve));
    Ok(())
}

fn shifted_gaussian(spec: &GridSpec, c: Complex64, t: f64) -> GridFunction {
    GridFunction::from_fn_2d(spec, |z| Complex64::from((-PI * t * (z - c).norm_sqr()).exp()))
}

fn verify(g: &Global, rec: &mut ResultRecord) -> CliResult<()> {
    let spec = grid(g, GridSpec::default_for(2))?;
    let m = g.trunc.unwrap_or(48);
    let mut table = Curve::new("corpus", &["index", "hs_over_l2", "nu_rho_residual", "max_off_diagonal"]);
    let (mut planch, mut nu, mut spec_planch, mut off) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (i, e) in plane_corpus(&spec).iter().enumerate() {
        let w = weyl_matrix(&e.function, m)?;
        warnings(rec, &w.warnings);
        let ratio = w.value.hs_norm() / lp_norm(&e.function, LpIndex::Finite(2.0));
        let nr = nu_rho_check(&e.function, m)?;
        let od = w.value.max_off_diagonal() / w.value.hs_norm();
        planch = planch.max((ratio - 1.0).abs());
        nu = nu.max(nr);
        if let Some(profile) = &e.radial {
            let s = spectrum_norm(profile, LpIndex::Finite(2.0))?;
            warnings(rec, &s.warnings);
            spec_planch = spec_planch.max(rel(s.value, profile.lp_norm(2.0)?));
            off = off.max(od);
        }
        table.rows.push(vec![i as f64, ratio, nr, od]);
        rec.note(format!("corpus {i}: {}", e.name));
    }
    rec.check("Hilbert-Schmidt norm equals L2 norm (matrix route)", planch, 1e-3);
    rec.check("Hilbert-Schmidt norm equals L2 norm (spectrum route, radial)", spec_planch, 1e-10);
    rec.check("ordered quantization matches the Weyl matrix", nu, 1e-3);
    rec.check("radial functions have diagonal Weyl matrices", off, 1e-6);

    let f = shifted_gaussian(&spec, Complex64::new(0.3, -0.2), 1.2);
    let h = shifted_gaussian(&spec, Complex64::new(-0.4, 0.1), 0.8);
    let fh = twisted_convolve(&f, &h)?;
    let order = m.min(24);
    let rf = weyl_matrix(&f, order)?.value.into_entries();
    let rh = weyl_matrix(&h, order)?.value.into_entries();
    let rfh = weyl_matrix(&fh, order)?.value.into_entries();
    let hom = (&rf * &rh - &rfh).norm() / (rf.norm() * rh.norm());
    rec.check("twisted convolution maps to the matrix product", hom, 1e-4);

    let mut lag: f64 = 0.0;
    for k in 0..=20 {
        let s = weyl_diag_radial(&RadialProfile::Laguerre { k }, 20)?;
        for (l, v) in s.values().iter().enumerate() {
            let want = if l == k { 1.0 } else { 0.0 };
            lag = lag.max((v - want).norm());
        }
    }
    rec.check("Laguerre functions diagonalize to unit vectors", lag, 1e-8);

    let mut closed: f64 = 0.0;
    for t in [0.6, 1.0, 5.0] {
        let s = weyl_diag_radial(&RadialProfile::gaussian(1.0, t)?, 50)?;
        for (k, v) in s.values().iter().enumerate() {
            closed = closed.max((v - gaussian_weyl_spectrum(t, k)?).norm());
        }
    }
    rec.check("Gaussian spectrum matches its closed form", closed, 1e-10);
    rec.result("max_plancherel_residual", planch, 1e-3);
    rec.exact("matrix_order", m as u64);
    rec.curve(table);
    Ok(())
}

fn weighted(seed: u64, ps: &[f64], count: usize, pairs: usize, rec: &mut ResultRecord) -> CliResult<()> {
    for &p in ps {
        Exponent::new(p)?;
    }
    let singles = random_radial_bumps(seed, count);
    let partners = random_radial_bumps(seed.wrapping_add(1), 2 * pairs);
    let mut curve = Curve::new("weighted", &["p", "factors", "index", "ratio"]);
    let mut worst: f64 = 0.0;
    for &p in ps {
        for (i, f) in singles.iter().enumerate() {
            let r = weighted_polyradial_ratio(std::slice::from_ref(f), p)?;
            warnings(rec, &r.warnings);
            worst = worst.max(r.value);
            curve.rows.push(vec![p, 1.0, i as f64, r.value]);
        }
        for (i, pair) in partners.chunks_exact(2).enumerate() {
            let r = weighted_polyradial_ratio(pair, p)?;
            warnings(rec, &r.warnings);
            worst = worst.max(r.value);
            curve.rows.push(vec![p, 2.0, i as f64, r.value]);
        }
    }
    rec.result("max_ratio", worst, 1e-6);
    rec.check("weighted polyradial ratio is at most 1", (worst - 1.0).max(0.0), 1e-6);
    rec.curve(curve);
    Ok(())
}

fn counterexample(kmax: usize, rec: &mut ResultRecord) -> CliResult<()> {
    if kmax < 1 {
        return Err(usage("kmax must be at least 1"));
    }
    let scan = counterexample_scan(kmax)?;
    let mut curve = Curve::new("counterexample", &["k", "ratio", "hat_l4", "chi_l4"]);
    for r in &scan.reports {
        curve.rows.push(vec![r.k as f64, r.ratio, r.hat_l4, r.chi_l4]);
    }
    let r = |k: usize| scan.reports[k].ratio;
    rec.result("r_0", r(0), 1e-6);
    rec.check("r_0 equals 1/sqrt 2", (r(0) - 0.5f64.sqrt()).abs(), 1e-6);
    match scan.threshold {
        Some(k0) => rec.exact("k0", k0 as u64),
        None => {
            rec.exact("k0", serde_json::Value::Null);
            rec.check("some ratio exceeds 1", f64::INFINITY, 0.0);
        }
    }
    if kmax >= 40 {
        let (a, b, c) = (r(10), r(20), r(40));
        rec.check("r_40 > r_20 > r_10", (a - b).max(b - c).max(0.0), 0.0);
    }
    // r_k grows like sqrt(k / log k)
    let trend: Vec<(usize, f64)> = [20, 40, 60]
        .into_iter()
        .filter(|&k| k <= kmax)
        .map(|k| (k, r(k) * (k as f64).ln().sqrt() / (k as f64).sqrt()))
        .collect();
    for &(k, v) in &trend {
        rec.result(&format!("trend_{k}"), v, 1e-9);
    }
    if trend.len() >= 2 {
        let spread = trend
            .iter()
            .flat_map(|a| trend.iter().map(move |b| (a.1 / b.1).ln().abs()))
            .fold(0.0, f64::max);
        rec.check("trend r_k sqrt(log k / k) is stable", spread, 1.25f64.ln());
    }
    for k in 0..=3 {
        let fit = verify_ch_ft(k, &ch_ft_default_grid(k))?;
        rec.result(&format!("ch_ft_constant_{k}"), fit.constant, fit.residual.max(1e-12));
    }
    rec.note("ch_ft_constant_k fits chi_k(z) = c (-1)^k hat chi_k(z/2)");
    rec.curve(curve);
    Ok(())
}

fn opnorm(g: &Global, profile: OpProfile, t: f64, q: f64, rec: &mut ResultRecord) -> CliResult<()> {
    let spec = grid(g, GridSpec::new(3.0, 24)?)?;
    let f = match profile {
        OpProfile::Chi0 => RadialProfile::Laguerre { k: 0 },
        OpProfile::Gaussian => RadialProfile::gaussian(1.0, t)?,
    };
    let c = twisted_operator_schatten_check(&f, q, &spec)?;
    rec.result("operator_value", c.operator_value, 5e-2);
    rec.result("spectral_value", c.spectral_value, 1e-10);
    rec.check("operator norm of |T_f|^q matches the Schatten sum", c.residual, 5e-2);
    Ok(())
}

fn blowup(g: &Global, lambdas: &[f64], rec: &mut ResultRecord) -> CliResult<()> {
    let spec = grid(g, GridSpec::new(4.0, 48)?)?;
    let f = shifted_gaussian(&spec, Complex64::new(0.2, 0.1), 2.0);
    let h = shifted_gaussian(&spec, Complex64::new(-0.1, 0.3), 1.5);
    let errs = blowup_errors(&f, &h, lambdas)?;
    let mut curve = Curve::new("blowup", &["lambda", "sup_error"]);
    curve.rows = errs.iter().map(|&(l, e)| vec![l, e]).collect();
    for (i, w) in errs.windows(2).enumerate() {
        let ratio = w[0].1 / w[1].1;
        rec.result(&format!("error_ratio_{i}"), ratio, 0.5);
        if (w[0].0 / w[1].0 - 2.0).abs() < 1e-12 {
            rec.check(format!("second order at lambda = {}", w[1].0), (ratio - 4.0).abs(), 0.5);
        }
    }
    rec.curve(curve);
    Ok(())
}
