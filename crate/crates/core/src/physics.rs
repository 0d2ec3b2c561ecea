use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling constants of the system and the viscosity of its regularization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysParams {
    /// Nonlocal transport coupling, `a > 0`.
    pub a: f64,
    /// Short/long wave coupling, `b != 0`.
    pub b: f64,
    /// Viscosity of the regularized transport equation, `epsilon >= 0`.
    pub epsilon: f64,
}

impl PhysParams {
    pub fn new(a: f64, b: f64, epsilon: f64) -> Result<Self> {
        let p = PhysParams { a, b, epsilon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::InvalidParameter("physics.a must be > 0".into()));
        }
        if !self.b.is_finite() || self.b == 0.0 {
            return Err(Error::InvalidParameter(
                "physics.b must be nonzero (b = 0 decouples the short and long waves)".into(),
            ));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter("physics.epsilon must be >= 0".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PhysParams::new(1.0, -2.0, 0.0).is_ok());
        assert!(PhysParams::new(0.0, 1.0, 0.0).is_err());
        assert!(PhysParams::new(-1.0, 1.0, 0.0).is_err());
        assert!(PhysParams::new(1.0, 0.0, 0.0).is_err());
        assert!(PhysParams::new(1.0, 1.0, -1e-3).is_err());
    }
}
