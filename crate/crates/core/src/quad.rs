//! Composite Gauss-Legendre quadrature.

use gauss_quad::GaussLegendre;

use crate::error::{CoreError, Result};

pub struct Composite {
    rule: GaussLegendre,
    panels: usize,
}

impl Composite {
    pub fn new(order: usize, panels: usize) -> Result<Composite> {
        let rule = GaussLegendre::new(order).map_err(|e| CoreError::Quadrature(e.to_string()))?;
        Ok(Composite { rule, panels })
    }

    /// `∫_a^b f` over equal panels.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let h = (b - a) / self.panels as f64;
        (0..self.panels).map(|k| self.rule.integrate(a + k as f64 * h, a + (k + 1) as f64 * h, &f)).sum()
    }

    /// Integral with a refinement check; errors when two resolutions disagree beyond `tol`.
    pub fn integrate_checked(&self, a: f64, b: f64, tol: f64, f: impl Fn(f64) -> f64 + Copy) -> Result<f64> {
        let coarse = self.integrate(a, b, f);
        let fine = Composite { rule: self.rule.clone(), panels: 2 * self.panels }.integrate(a, b, f);
        let scale = fine.abs().max(1e-300);
        if (fine - coarse).abs() > tol * scale {
            return Err(CoreError::Quadrature(format!(
                "panels {} vs {}: {coarse:e} vs {fine:e}",
                self.panels,
                2 * self.panels
            )));
        }
        Ok(fine)
    }
}
