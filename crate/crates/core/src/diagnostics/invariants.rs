//! Conserved quantities and the viscous balance ledgers.

use serde::{Deserialize, Serialize};

use super::integrals::Integrals;
use crate::error::{Error, Result};
use crate::physics::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub momentum: f64,
    /// ε(b/2)∫₀ᵗ∫v_x(|u|²)_x + ε(a/2)∫₀ᵗ(∫v²)(∫v_x²)
    pub visc_energy_ledger: f64,
    /// 2ε∫₀ᵗ∫v_x²
    pub visc_momentum_ledger: f64,
}

/// Trapezoid-in-time accumulation of the dissipation terms.
#[derive(Debug, Clone)]
pub struct ViscousLedger {
    params: PhysParams,
    last: Option<(f64, f64, f64)>,
    energy: f64,
    momentum: f64,
}

impl ViscousLedger {
    pub fn new(params: PhysParams) -> Self {
        ViscousLedger {
            params,
            last: None,
            energy: 0.0,
            momentum: 0.0,
        }
    }

    /// Adds the sample at time `t` and returns the record for it.
    pub fn record(&mut self, t: f64, integrals: &Integrals) -> InvariantRecord {
        let e_rate = integrals.energy_dissipation(&self.params);
        let m_rate = integrals.momentum_dissipation(&self.params);
        if let Some((t_prev, e_prev, m_prev)) = self.last {
            let h = t - t_prev;
            self.energy += 0.5 * h * (e_prev + e_rate);
            self.momentum += 0.5 * h * (m_prev + m_rate);
        }
        self.last = Some((t, e_rate, m_rate));
        InvariantRecord {
            t,
            mass: integrals.mass,
            energy: integrals.energy(&self.params),
            momentum: integrals.momentum(),
            visc_energy_ledger: self.energy,
            visc_momentum_ledger: self.momentum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceDefect {
    pub t: f64,
    /// E(t) + energy ledger − E(0)
    pub energy: f64,
    /// M(t) + momentum ledger − M(0)
    pub momentum: f64,
}

pub(crate) fn check_sorted(times: impl Iterator<Item = f64>) -> Result<()> {
    let mut prev = f64::NEG_INFINITY;
    for (index, t) in times.enumerate() {
        if t.is_nan() || t <= prev {
            return Err(Error::UnsortedTimes { index });
        }
        prev = t;
    }
    Ok(())
}

/// Defects of the viscous energy and momentum identities along a history.
pub fn viscous_balance(history: &[InvariantRecord]) -> Result<Vec<BalanceDefect>> {
    check_sorted(history.iter().map(|r| r.t))?;
    let Some(first) = history.first() else {
        return Ok(Vec::new());
    };
    Ok(history
        .iter()
        .map(|r| BalanceDefect {
            t: r.t,
            energy: r.energy + r.visc_energy_ledger - first.energy,
            momentum: r.momentum + r.visc_momentum_ledger - first.momentum,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(vx2: f64, v2: f64) -> Integrals {
        Integrals {
            mass: 1.0,
            vx2,
            v2,
            ..Default::default()
        }
    }

    #[test]
    fn inviscid_ledgers_vanish() {
        let p = PhysParams::new(1.0, 1.0, 0.0).unwrap();
        let mut ledger = ViscousLedger::new(p);
        for i in 0..5 {
            let r = ledger.record(i as f64 * 0.1, &sample(3.0, 2.0));
            assert_eq!(r.visc_energy_ledger, 0.0);
            assert_eq!(r.visc_momentum_ledger, 0.0);
        }
    }

    #[test]
    fn momentum_ledger_is_trapezoid_in_time() {
        let p = PhysParams::new(1.0, 1.0, 0.5).unwrap();
        let mut ledger = ViscousLedger::new(p);
        let r0 = ledger.record(0.0, &sample(1.0, 0.0));
        let r1 = ledger.record(0.5, &sample(3.0, 0.0));
        assert_eq!(r0.visc_momentum_ledger, 0.0);
        // 2ε · (0.5/2)(1 + 3)
        assert!((r1.visc_momentum_ledger - 1.0).abs() < 1e-15);
    }

    #[test]
    fn defects_start_at_zero_and_reject_unsorted() {
        let rec = |t: f64, e: f64| InvariantRecord {
            t,
            mass: 1.0,
            energy: e,
            momentum: 2.0 * e,
            visc_energy_ledger: 0.0,
            visc_momentum_ledger: 0.0,
        };
        let d = viscous_balance(&[rec(0.0, 1.0), rec(1.0, 1.5)]).unwrap();
        assert_eq!(d[0].energy, 0.0);
        assert_eq!(d[0].momentum, 0.0);
        assert!((d[1].energy - 0.5).abs() < 1e-15);
        assert!(matches!(
            viscous_balance(&[rec(0.0, 1.0), rec(0.0, 1.0)]),
            Err(Error::UnsortedTimes { index: 1 })
        ));
        assert!(viscous_balance(&[rec(1.0, 1.0), rec(0.5, 1.0)]).is_err());
    }
}
