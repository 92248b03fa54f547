use sharphy::exponents::{ConstantKind, ConstantReport};
use sharphy::heisenberg::{flq_norm_tensor, heis_sweep, rep_weyl_consistency, SweepConfig, TensorFunction};

use super::{rel, usage};
use crate::args::{Global, HeisAction};
use crate::record::{Curve, ResultRecord};
use crate::CliResult;

pub fn run(g: &Global, action: &HeisAction, rec: &mut ResultRecord) -> CliResult<()> {
    match action {
        HeisAction::Ratio { p, sweep } => {
            let config = SweepConfig {
                p: *p,
                t_range: sweep.t,
                mu_range: sweep.mu,
                lambda0_range: sweep.lam0,
                ..SweepConfig::default()
            };
            let s = heis_sweep(&config)?;
            rec.result("target", s.target, 1e-15);
            rec.result("best_ratio", s.best.ratio, 1e-9);
            rec.exact("best_t", s.best.t);
            rec.exact("best_mu", s.best.mu);
            rec.exact("best_lambda0", s.best.lambda0);
            rec.exact("evidence_only", s.evidence_only);
            if s.evidence_only {
                rec.note("the dual exponent is not an even integer: the sweep is evidence, not a check");
            } else {
                let above = (s.best.ratio - s.target) / s.target;
                let below = (0.99 * s.target - s.best.ratio) / s.target;
                rec.check("sweep supremum lies in [0.99, 1] (B_p)^3", above.max(below).max(0.0), 1e-9);
            }
            let mut curve = Curve::new("sweep", &["t", "mu", "lambda0", "ratio"]);
            curve.rows = s.trace.iter().map(|pt| vec![pt.t, pt.mu, pt.lambda0, pt.ratio]).collect();
            rec.curve(curve);
            let _ = ConstantReport::new(ConstantKind::Heisenberg, *p, 1)?;
            Ok(())
        }
        HeisAction::Verify { lambda } => {
            let m = g.trunc.unwrap_or(16);
            let f = TensorFunction::gaussian(1.0, 0.5, 0.7)?;
            let mut worst: f64 = 0.0;
            for &l in &lambda.0 {
                if !(0.25..=4.0).contains(&l.abs()) {
                    return Err(usage(format!("|lambda| must lie in [1/4, 4], got {l}")));
                }
                let r = rep_weyl_consistency(&f, l, m)?;
                rec.result(&format!("rep_weyl_residual_{l}"), r, 1e-2);
                worst = worst.max(r);
            }
            rec.check("representation matches the scaled Weyl transform", worst, 1e-2);
            let l2 = f.spatial.lp_norm(2.0)? * f.temporal.lp_norm(2.0);
            let flq = flq_norm_tensor(&f, 2.0)?;
            rec.result("flq_2", flq, 1e-6);
            rec.check("Plancherel on the Heisenberg group", rel(flq, l2), 1e-6);
            Ok(())
        }
    }
}
