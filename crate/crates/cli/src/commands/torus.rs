use sharphy::corpus::random_smooth_fields;
use sharphy::euclidean::GridSpec;
use sharphy::exponents::{ConstantKind, ConstantReport};
use sharphy::torus::{build_phi, torus_local_ratio, transplant_endpoint_check, CutoffSpec, Endpoint, TorusFunction};

use super::{grid, usage, warnings};
use crate::args::{Global, TorusAction};
use crate::record::{Curve, ResultRecord};
use crate::CliResult;

fn check_dim(d: usize) -> CliResult<()> {
    if (1..=2).contains(&d) {
        Ok(())
    } else {
        Err(usage(format!("d must be 1 or 2, got {d}")))
    }
}

pub fn run(g: &Global, action: &TorusAction, rec: &mut ResultRecord) -> CliResult<()> {
    match action {
        TorusAction::Local { d, p, width } => {
            check_dim(*d)?;
            let points = g.grid_n.unwrap_or(if *d == 1 { 1024 } else { 256 });
            let window = g.trunc.unwrap_or((points / 2).saturating_sub(1));
            let target = ConstantReport::new(ConstantKind::Euclidean, *p, *d as u32)?.value;
            let mut widths = width.0.clone();
            widths.sort_by(f64::total_cmp);
            let mut curve = Curve::new("torus local", &["width", "ratio", "target"]);
            for &w in &widths {
                let f = TorusFunction::periodized_gaussian(*d, points, w)?;
                let r = torus_local_ratio(&f, *p, window)?;
                warnings(rec, &r.warnings);
                curve.rows.push(vec![w, r.value, target]);
            }
            let narrow = curve.rows[0][1];
            rec.result("target", target, 1e-15);
            rec.result("narrowest_ratio", narrow, 1e-9);
            let slack = if *d == 1 { 0.02 } else { 0.04 };
            rec.check("narrow ratio is close to B_p^d", (narrow - target).abs() / target, slack);
            // narrowing the bump should not lower the ratio
            let drop = curve.rows.windows(2).map(|w| w[1][1] - w[0][1]).fold(0.0, f64::max);
            rec.check("ratio grows as the width shrinks", drop, 1e-6);
            rec.curve(curve);
            Ok(())
        }
        TorusAction::Phi { d, a, b } => {
            check_dim(*d)?;
            let spec = CutoffSpec::new(*a, *b)?;
            let c = build_phi(spec, *d)?;
            let upper = spec.l1_upper_bound(*d);
            rec.result("phi_hat_l1", c.phi_hat_l1, c.tail.abs().max(1e-10));
            rec.result("tail", c.tail, c.tail.abs());
            rec.result("upper_bound", upper, 1e-15);
            rec.check("L1 norm of the transform is at least 1", (1.0 - c.phi_hat_l1).max(0.0), 1e-9);
            rec.check("L1 norm of the transform is at most ((a+b)/b)^(d/2)", (c.phi_hat_l1 - upper).max(0.0), 1e-9);
            Ok(())
        }
        TorusAction::Endpoint { d, a, b, count } => {
            check_dim(*d)?;
            let default = if *d == 1 { GridSpec::new(8.0, 512)? } else { GridSpec::new(6.0, 96)? };
            let spec = grid(g, default)?;
            let cutoff = build_phi(CutoffSpec::new(*a, *b)?, *d)?;
            let fields = random_smooth_fields(g.seed, *count, &spec, *d);
            let mut curve = Curve::new("endpoint", &["index", "lhs_2", "rhs_2", "lhs_inf", "rhs_inf"]);
            let mut excess: f64 = 0.0;
            for (i, f) in fields.iter().enumerate() {
                let two = transplant_endpoint_check(&cutoff, f, Endpoint::Two)?;
                let inf = transplant_endpoint_check(&cutoff, f, Endpoint::Infinity)?;
                excess = excess.max(two.lhs - two.rhs).max(inf.lhs - inf.rhs);
                curve.rows.push(vec![i as f64, two.lhs, two.rhs, inf.lhs, inf.rhs]);
            }
            rec.result("phi_hat_l1", cutoff.phi_hat_l1, cutoff.tail.abs().max(1e-10));
            rec.check("transplantation bounded at q = 2 and q = infinity", excess.max(0.0), 1e-8);
            rec.curve(curve);
            Ok(())
        }
    }
}
