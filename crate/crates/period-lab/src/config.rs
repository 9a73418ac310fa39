use crate::PeriodError;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Absolute tolerance for every returned value.
    pub tol: f64,
    /// Upper limit on nested-sum terms before giving up.
    pub max_terms: usize,
    /// Gauss-Legendre nodes per quadrature panel.
    pub nodes: usize,
    /// A panel is accepted once its length is at most this multiple of its
    /// distance to the nearest puncture.
    pub panel_ratio: f64,
    /// Ratio of step length to radius of convergence for local series.
    pub series_ratio: f64,
    /// Cut-off distances for the ε-extrapolation of regularized integrals.
    pub eps_ladder: Vec<f64>,
    /// Highest power of ε in the remainder fitted by the ε-method.
    pub eps_order: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            tol: 1e-10,
            max_terms: 2_000_000,
            nodes: 20,
            panel_ratio: 1.0,
            series_ratio: 0.4,
            eps_ladder: (0..32).map(|k| 1e-3 * 1e-3f64.powf(k as f64 / 31.0)).collect(),
            eps_order: 2,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), PeriodError> {
        let bad = |m: &str| Err(PeriodError::Config(m.to_string()));
        if !(self.tol > 0.0) {
            return bad("tolerance must be positive");
        }
        if self.nodes < 4 {
            return bad("at least four nodes per panel");
        }
        if !(self.panel_ratio > 0.0) {
            return bad("panel ratio must be positive");
        }
        if !(self.series_ratio > 0.0 && self.series_ratio < 1.0) {
            return bad("series ratio must lie in (0, 1)");
        }
        if self.eps_ladder.iter().any(|e| !(*e > 0.0 && *e < 0.5)) {
            return bad("ε values must lie in (0, 1/2)");
        }
        Ok(())
    }
}
