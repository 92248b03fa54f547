//! Hölder exponents and the closed-form sharp constants built from them.
//!
//! The Babenko–Beckner constant `B_p = p^{1/(2p)} / p'^{1/(2p')}` is the sharp
//! Hausdorff–Young constant on the real line. Products and powers of it give
//! the Euclidean constants in every dimension, the Weyl-transform limit
//! `B_p^{2n}` and the Heisenberg constant `B_p^{2n+1}`.

use crate::error::{Error, Result};

/// A Lebesgue exponent in `[1, ∞]` with an explicit infinite case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpIndex {
    Finite(f64),
    Infinity,
}

impl LpIndex {
    /// A finite exponent `p >= 1`.
    pub fn finite(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::OutOfRange {
                name: "p",
                range: "[1,inf)",
                value: p,
            });
        }
        Ok(LpIndex::Finite(p))
    }

    /// Parses an exponent from a float, mapping `f64::INFINITY` to [`LpIndex::Infinity`].
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(LpIndex::Infinity)
        } else {
            Self::finite(p)
        }
    }

    /// `1/p`, which is `0` at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            LpIndex::Finite(p) => 1.0 / p,
            LpIndex::Infinity => 0.0,
        }
    }

    /// The Hölder conjugate.
    pub fn conjugate(self) -> LpIndex {
        match self {
            LpIndex::Infinity => LpIndex::Finite(1.0),
            LpIndex::Finite(1.0) => LpIndex::Infinity,
            LpIndex::Finite(p) => LpIndex::Finite(p / (p - 1.0)),
        }
    }

    /// The exponent as a float, with `f64::INFINITY` for the infinite case.
    pub fn as_f64(self) -> f64 {
        match self {
            LpIndex::Finite(p) => p,
            LpIndex::Infinity => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, LpIndex::Infinity)
    }

    /// `B_q` extended to all of `[1, ∞]`; `B_1 = B_∞ = 1` and `B_{q'} = 1/B_q`.
    pub fn babenko_beckner(self) -> f64 {
        fn half_power(q: LpIndex) -> f64 {
            // q^{1/(2q)}, tending to 1 at both ends
            match q {
                LpIndex::Infinity => 1.0,
                LpIndex::Finite(q) => q.powf(0.5 / q),
            }
        }
        half_power(self) / half_power(self.conjugate())
    }
}

impl std::fmt::Display for LpIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpIndex::Finite(p) => write!(f, "{p}"),
            LpIndex::Infinity => f.write_str("inf"),
        }
    }
}

/// A Hausdorff–Young exponent `p ∈ [1, 2]` paired with its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    p: f64,
    dual: LpIndex,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&p) {
            return Err(Error::OutOfRange {
                name: "p",
                range: "[1,2]",
                value: p,
            });
        }
        Ok(Self {
            p,
            dual: LpIndex::Finite(p).conjugate(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn index(&self) -> LpIndex {
        LpIndex::Finite(self.p)
    }

    /// The conjugate exponent `p' ∈ [2, ∞]`.
    pub fn dual(&self) -> LpIndex {
        self.dual
    }

    pub fn babenko_beckner(&self) -> f64 {
        self.index().babenko_beckner()
    }
}

/// `p/(p-1)`, or infinity at `p = 1`.
pub fn conjugate(p: f64) -> Result<LpIndex> {
    Ok(Exponent::new(p)?.dual())
}

/// The Babenko–Beckner constant for `p ∈ [1, 2]`.
pub fn babenko_beckner(p: f64) -> Result<f64> {
    Ok(Exponent::new(p)?.babenko_beckner())
}

/// Sharp Young constant on `R^n` for `k` factors with exponents `p_list`:
/// `(B_{r'} ∏ B_{p_j})^n` where `1/r' = Σ 1/p_j'`.
pub fn young_constant_euclidean(p_list: &[LpIndex], n: u32) -> Result<f64> {
    if p_list.is_empty() {
        return Err(Error::Invalid("empty exponent list".into()));
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            range: "[1,inf)",
            value: 0.0,
        });
    }
    let mut inv_r_dual = 0.0;
    let mut product = 1.0;
    for &q in p_list {
        if let LpIndex::Finite(v) = q {
            if !(v >= 1.0) {
                return Err(Error::OutOfRange {
                    name: "p",
                    range: "[1,inf]",
                    value: v,
                });
            }
        }
        inv_r_dual += q.conjugate().reciprocal();
        product *= q.babenko_beckner();
    }
    if inv_r_dual > 1.0 + 1e-14 {
        return Err(Error::Invalid(format!(
            "sum of reciprocal conjugate exponents is {inv_r_dual}, exceeding 1"
        )));
    }
    let r_dual = if inv_r_dual == 0.0 {
        LpIndex::Infinity
    } else {
        LpIndex::Finite(1.0 / inv_r_dual.min(1.0))
    };
    Ok((r_dual.babenko_beckner() * product).powi(n as i32))
}

/// For `p' = 2k`, the Hausdorff–Young constant equals the `k`-fold Young
/// constant to the power `1/k`. Checks the identity on the real line.
pub fn yh_relation_check(p: f64) -> Result<bool> {
    let e = Exponent::new(p)?;
    let dual = match e.dual() {
        LpIndex::Finite(d) => d,
        LpIndex::Infinity => {
            return Err(Error::Invalid("p' is infinite, not an even integer".into()))
        }
    };
    let k = (dual / 2.0).round();
    if k < 1.0 || (dual - 2.0 * k).abs() > 1e-9 {
        return Err(Error::Invalid(format!("p' = {dual} is not an even integer")));
    }
    let k = k as usize;
    let young = young_constant_euclidean(&vec![e.index(); k], 1)?;
    Ok((e.babenko_beckner() - young.powf(1.0 / k as f64)).abs() <= 1e-12)
}

/// Which sharp constant a [`ConstantReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantKind {
    /// `B_p^n`, Hausdorff–Young on `R^n`.
    Euclidean,
    /// `B_p^{2n}`, the Weyl-transform constant on `C^n`.
    Weyl,
    /// `B_p^{2n+1}`, Hausdorff–Young on the Heisenberg group `H_n`.
    Heisenberg,
}

/// A named closed-form constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantReport {
    pub label: String,
    pub value: f64,
    pub exponent: Exponent,
    pub dimension: u32,
}

impl ConstantReport {
    pub fn new(kind: ConstantKind, p: f64, dimension: u32) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::OutOfRange {
                name: "dimension",
                range: "[1,inf)",
                value: 0.0,
            });
        }
        let exponent = Exponent::new(p)?;
        let (label, power) = match kind {
            ConstantKind::Euclidean => ("euclidean", dimension),
            ConstantKind::Weyl => ("weyl", 2 * dimension),
            ConstantKind::Heisenberg => ("heisenberg", 2 * dimension + 1),
        };
        Ok(Self {
            label: format!("{label} B_p^{power}"),
            value: exponent.babenko_beckner().powi(power as i32),
            exponent,
            dimension,
        })
    }
}
