//! Parameter sweeps of Hausdorff–Young type ratios.

/// A sampled curve `parameter ↦ ratio` with the constant it is probing.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCurve {
    /// Which inequality the ratio belongs to.
    pub label: String,
    /// Name of the swept parameter.
    pub parameter: String,
    pub points: Vec<(f64, f64)>,
    /// The limiting or bounding constant, when known in closed form.
    pub target: Option<f64>,
}

impl RatioCurve {
    pub fn max_ratio(&self) -> Option<f64> {
        self.points.iter().map(|p| p.1).reduce(f64::max)
    }

    /// Whether the ratios increase strictly along the stored order.
    pub fn is_strictly_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 > w[0].1)
    }
}
