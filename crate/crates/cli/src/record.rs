//! The result document written by every subcommand.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use sharphy::curve::RatioCurve;

pub const SCHEMA: u32 = 1;

/// A residual compared against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Tabular data, written to plot files as CSV.
#[derive(Debug, Clone, Serialize)]
pub struct Curve {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Columns `parameter, ratio, target`.
    pub fn from_ratio(curve: &RatioCurve) -> Self {
        let target = curve.target.unwrap_or(f64::NAN);
        let mut c = Self::new(curve.label.clone(), &[&curve.parameter, "ratio", "target"]);
        c.rows = curve.points.iter().map(|&(x, r)| vec![x, r, target]).collect();
        c
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else {
        String::new()
    }
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// Everything a run reports, in a fixed field order.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub command: Vec<String>,
    pub config: Value,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub checks: Vec<Check>,
    pub curves: Vec<Curve>,
    pub diagnostics: Vec<String>,
    pub notes: Vec<String>,
    pub wall_time: f64,
}

impl ResultRecord {
    pub fn new(command: Vec<String>, config: Value) -> Self {
        Self {
            schema: SCHEMA,
            command,
            config,
            results: Map::new(),
            tolerances: Map::new(),
            checks: Vec::new(),
            curves: Vec::new(),
            diagnostics: Vec::new(),
            notes: Vec::new(),
            wall_time: 0.0,
        }
    }

    /// A scalar result with the accuracy it was computed to.
    pub fn result(&mut self, name: &str, value: f64, tolerance: f64) {
        self.results.insert(name.into(), json_number(value));
        self.tolerances.insert(name.into(), json_number(tolerance));
    }

    /// A non-numeric or exact result (labels, counts, flags).
    pub fn exact(&mut self, name: &str, value: impl Into<Value>) {
        self.results.insert(name.into(), value.into());
        self.tolerances.insert(name.into(), json_number(0.0));
    }

    /// Records `residual <= tolerance`; a failed check makes the run exit 3.
    pub fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) -> bool {
        let pass = residual <= tolerance;
        self.checks.push(Check {
            name: name.into(),
            residual,
            tolerance,
            pass,
        });
        pass
    }

    pub fn curve(&mut self, curve: Curve) {
        self.curves.push(curve);
    }

    pub fn diagnostic(&mut self, message: impl ToString) {
        self.diagnostics.push(message.to_string());
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record is serializable");
        s.push('\n');
        s
    }

    /// Curves when there are any, otherwise results and checks as rows.
    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if !self.curves.is_empty() {
            return self.write_curves(out);
        }
        writeln!(out, "name,value,tolerance")?;
        for (name, value) in &self.results {
            let tol = self.tolerances.get(name).cloned().unwrap_or(Value::Null);
            writeln!(out, "{},{},{}", csv_cell(name), csv_value(value), csv_value(&tol))?;
        }
        for c in &self.checks {
            writeln!(
                out,
                "{},{},{}",
                csv_cell(&format!("check:{}", c.name)),
                format_number(c.residual),
                format_number(c.tolerance)
            )?;
        }
        Ok(())
    }

    /// Every curve, separated by blank lines.
    pub fn write_curves(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (i, c) in self.curves.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            c.write_csv(out)?;
        }
        Ok(())
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), format_number),
        Value::String(s) => csv_cell(s),
        Value::Null => String::new(),
        other => csv_cell(&other.to_string()),
    }
}
