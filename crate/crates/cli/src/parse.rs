use serde::Serialize;

/// A list of reals given as comma-separated values or log ranges `lo:hi:count`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Values(pub Vec<f64>);

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

/// `count` log-spaced points from `lo` to `hi`, both positive.
pub fn log_range(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(format!("log range needs 0 < lo < hi and count >= 2, got {lo}:{hi}:{count}"));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect())
}

pub fn parse_values(s: &str) -> Result<Values, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(number(v)?),
            [lo, hi, count] => {
                let count: usize = count.trim().parse().map_err(|_| format!("bad count in {item:?}"))?;
                out.extend(log_range(number(lo)?, number(hi)?, count)?);
            }
            _ => return Err(format!("expected a value or lo:hi:count, got {item:?}")),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(Values(out))
}

/// Search box for the Heisenberg sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRanges {
    pub t: (f64, f64),
    pub mu: (f64, f64),
    pub lam0: (f64, f64),
}

pub fn parse_sweep(s: &str) -> Result<SweepRanges, String> {
    let mut r = SweepRanges {
        t: (0.1, 1e4),
        mu: (1e-4, 1.0),
        lam0: (0.25, 4.0),
    };
    for item in s.split(',') {
        let (key, range) = item.split_once('=').ok_or_else(|| format!("expected key=lo:hi, got {item:?}"))?;
        let (lo, hi) = range.split_once(':').ok_or_else(|| format!("expected lo:hi, got {range:?}"))?;
        let pair = (number(lo)?, number(hi)?);
        if !(pair.0 > 0.0 && pair.1 > pair.0) {
            return Err(format!("range {range:?} must satisfy 0 < lo < hi"));
        }
        match key.trim() {
            "t" => r.t = pair,
            "mu" => r.mu = pair,
            "lam0" => r.lam0 = pair,
            other => return Err(format!("unknown sweep axis {other:?}")),
        }
    }
    Ok(r)
}
