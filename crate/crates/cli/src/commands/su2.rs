use sharphy::exponents::{ConstantKind, ConstantReport};
use sharphy::su2::{
    central_flq_norm, central_lp_norm, central_spectrum, correspondence_check, kirillov_check, lie_algebra_lift,
    su2_ratio_curve, weyl_integral, CentralFunction, DEFAULT_WEIGHT_CUTOFF,
};

use super::{rel, warnings};
use crate::args::{Global, Su2Action};
use crate::record::{Curve, ResultRecord};
use crate::CliResult;

pub fn run(g: &Global, action: &Su2Action, rec: &mut ResultRecord) -> CliResult<()> {
    let lmax = g.lmax.unwrap_or(10);
    match action {
        Su2Action::Verify { delta } => {
            let haar = weyl_integral(&CentralFunction::constant(1.0))?;
            rec.check("Haar measure has mass 1", (haar - 1.0).norm(), 1e-12);
            let mut ortho: f64 = 0.0;
            for l in 0..=lmax {
                let s = central_spectrum(&CentralFunction::character(l), lmax + 2)?;
                for (m, v) in s.iter().enumerate() {
                    let want = if m == l { 1.0 } else { 0.0 };
                    ortho = ortho.max((v - want).norm());
                }
            }
            rec.check("characters are orthonormal", ortho, 1e-10);
            let f = CentralFunction::bump(*delta)?;
            let l2 = central_lp_norm(&f, 2.0)?;
            let s = central_flq_norm(&f, 2.0, g.lmax.unwrap_or(DEFAULT_WEIGHT_CUTOFF))?;
            warnings(rec, &s.warnings);
            rec.result("l2_norm", l2, 1e-10);
            rec.check("central Plancherel", rel(s.value, l2), 1e-8);
            let mut corr: f64 = 0.0;
            for l in 0..=lmax {
                corr = corr.max(correspondence_check(&f, l)?);
            }
            rec.check("coefficients match the Lie-algebra transform on orbits", corr, 1e-8);
            let lift = lie_algebra_lift(&f)?;
            rec.check("the lift preserves the L2 norm", rel(lift.l2_norm()?, l2), 1e-8);
            Ok(())
        }
        Su2Action::Kirillov => {
            let s: Vec<f64> = (1..=45).map(|i| i as f64 * 0.01).collect();
            let mut worst: f64 = 0.0;
            let mut curve = Curve::new("kirillov", &["lambda", "residual"]);
            for l in 0..=lmax {
                let r = kirillov_check(l, &s)?;
                worst = worst.max(r);
                curve.rows.push(vec![l as f64, r]);
            }
            rec.check("characters equal orbit transforms", worst, 1e-12);
            rec.curve(curve);
            Ok(())
        }
        Su2Action::Local { p, delta } => {
            let target = ConstantReport::new(ConstantKind::Heisenberg, *p, 1)?.value;
            let mut deltas = delta.0.clone();
            deltas.sort_by(|a, b| b.total_cmp(a));
            let c = su2_ratio_curve(*p, &deltas)?;
            warnings(rec, &c.warnings);
            let pts = &c.value.points;
            let (last_delta, last) = *pts.last().expect("at least one delta");
            rec.result("target", target, 1e-15);
            rec.result("smallest_delta_ratio", last, 1e-8);
            rec.exact("smallest_delta", last_delta);
            let gap_growth = pts
                .windows(2)
                .map(|w| (w[1].1 - target).abs() - (w[0].1 - target).abs())
                .fold(0.0, f64::max);
            rec.check("ratio converges monotonically to (B_p)^3", gap_growth, 0.0);
            let max = c.value.max_ratio().unwrap_or(f64::NAN);
            rec.check("ratio stays below 1.02 (B_p)^3", (max / target - 1.02).max(0.0), 0.0);
            if last_delta <= 0.1 {
                rec.check("ratio within 3% of (B_p)^3", (last - target).abs() / target, 0.03);
            }
            rec.curve(Curve::from_ratio(&c.value));
            Ok(())
        }
    }
}
