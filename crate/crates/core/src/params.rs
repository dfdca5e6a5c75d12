use serde::Serialize;

use crate::error::{CoreError, Result};

/// Numerically bound model instance `(N, c0, c1, c2, ħ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Params {
    pub n: usize,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub hbar: f64,
}

impl Params {
    pub fn new(n: usize, c0: f64, c1: f64, c2: f64, hbar: f64) -> Result<Params> {
        if !(3..=7).contains(&n) {
            return Err(CoreError::Dimension(n));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(CoreError::Domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(c0 > 0.0 && c0.is_finite()) {
            return Err(CoreError::Domain(format!("c0 must be positive for bound states, got {c0}")));
        }
        if !c1.is_finite() || !c2.is_finite() {
            return Err(CoreError::Domain("c1 and c2 must be finite".into()));
        }
        Ok(Params { n, c0, c1, c2, hbar })
    }

    /// Central Coulomb problem with `c0 = ħ = 1`.
    pub fn hydrogen(n: usize) -> Params {
        Params { n, c0: 1.0, c1: 0.0, c2: 0.0, hbar: 1.0 }
    }

    pub fn with_couplings(self, c1: f64, c2: f64) -> Params {
        Params { c1, c2, ..self }
    }

    /// `(N − 3)/2`.
    pub fn half_shift(&self) -> f64 {
        (self.n as f64 - 3.0) / 2.0
    }

    /// Couplings divided by `ħ²`.
    pub fn scaled(&self) -> (f64, f64, f64) {
        let h2 = self.hbar * self.hbar;
        (self.c0 / h2, self.c1 / h2, self.c2 / h2)
    }

    /// Bohr length `ħ²/c0`.
    pub fn bohr(&self) -> f64 {
        self.hbar * self.hbar / self.c0
    }
}
