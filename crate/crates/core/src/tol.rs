/// Every "numerically zero" decision in the crate reads from one of these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Pointwise evaluation: |den(z)| below this (relative) is a pole.
    pub eval: f64,
    /// Relative tolerance for root matching, valuations and |g| = 1 tests.
    pub zero: f64,
    /// Target accuracy for path and contour quadrature.
    pub quadrature: f64,
    /// Band for the singular-point decision tree.
    pub classification: f64,
    /// Guard radius as a fraction of the local pole spacing.
    pub guard_fraction: f64,
    /// Residual target for points placed on the singular set.
    pub trace: f64,
    /// Largest |Re P| accepted by the period check.
    pub period: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eval: 1e-12,
            zero: 1e-9,
            quadrature: 1e-10,
            classification: 1e-7,
            guard_fraction: 1e-3,
            trace: 1e-12,
            period: 1e-8,
        }
    }
}

impl Tolerances {
    /// Overrides one field by name. Unknown names return `false`.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        let slot = match key {
            "eval" => &mut self.eval,
            "zero" => &mut self.zero,
            "quadrature" => &mut self.quadrature,
            "classification" => &mut self.classification,
            "guard_fraction" => &mut self.guard_fraction,
            "trace" => &mut self.trace,
            "period" => &mut self.period,
            _ => return false,
        };
        *slot = value;
        true
    }
}
