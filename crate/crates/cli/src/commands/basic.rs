use sharphy::euclidean::{gaussian_hy_ratio, grid_hy_ratio, GaussianSpec, GridSpec};
use sharphy::exponents::{young_constant_euclidean, ConstantKind, ConstantReport, Exponent, LpIndex};

use super::{grid, rel, usage};
use crate::args::{EuclidAction, Global};
use crate::record::ResultRecord;
use crate::CliResult;

fn index_value(q: LpIndex) -> serde_json::Value {
    match q {
        LpIndex::Finite(v) => serde_json::json!(v),
        LpIndex::Infinity => serde_json::Value::Null,
    }
}

pub fn bb(p: f64, rec: &mut ResultRecord) -> CliResult<()> {
    let e = Exponent::new(p)?;
    rec.result("B_p", e.babenko_beckner(), 1e-15);
    rec.exact("p", p);
    rec.exact("p_dual", index_value(e.dual()));
    if e.dual().is_infinite() {
        rec.note("p_dual is null: the dual exponent is infinite");
    }
    Ok(())
}

pub fn young(p: &[f64], n: u32, rec: &mut ResultRecord) -> CliResult<()> {
    if p.is_empty() {
        return Err(usage("young needs at least one exponent"));
    }
    let list = p.iter().map(|&v| LpIndex::from_f64(v)).collect::<Result<Vec<_>, _>>()?;
    rec.result("young_constant", young_constant_euclidean(&list, n)?, 1e-14);
    Ok(())
}

pub fn euclid(g: &Global, action: &EuclidAction, rec: &mut ResultRecord) -> CliResult<()> {
    let EuclidAction::Ratio { p, dim, t } = *action;
    if !(1..=2).contains(&dim) {
        return Err(usage(format!("dim must be 1 or 2, got {dim}")));
    }
    let target = ConstantReport::new(ConstantKind::Euclidean, p, dim)?.value;
    let spec = GaussianSpec::new(t, dim)?;
    let closed = gaussian_hy_ratio(&spec, p)?;
    let sampled = spec.sample(&grid(g, GridSpec::default_for(dim as usize))?)?;
    let on_grid = grid_hy_ratio(&sampled, p)?;
    rec.result("target", target, 1e-15);
    rec.result("closed_form_ratio", closed, 1e-12);
    rec.result("grid_ratio", on_grid, 1e-4);
    rec.check("closed form equals B_p^dim", rel(closed, target), 1e-12);
    rec.check("grid ratio equals B_p^dim", rel(on_grid, target), 1e-4);
    Ok(())
}
