//! Discrete invariants, viscous ledgers, virial moments and breakdown
//! monitoring.

mod integrals;
mod invariants;
mod monitor;
mod virial;

pub use integrals::{energy, mass, momentum, Integrals};
pub use invariants::{viscous_balance, BalanceDefect, InvariantRecord, ViscousLedger};
pub use monitor::{blowup_monitor, BlowupMonitor, MonitorSample, MonitorStatus, MonitorThresholds};
pub use virial::{
    blowup_criterion, check_virial, criterion_value, first_derivative_5pt, second_derivative_5pt, virial_moments,
    virial_rhs, VirialCheck, VirialRecord, VirialSample, VirialTracker,
};

pub(crate) use invariants::check_sorted;

use crate::dynamics::SimState;
use crate::grid::Grid;

/// Validity bits attached to every time-series row. A row with no bits set
/// satisfies the preconditions of the moment identities.
pub mod flags {
    /// |u|² or v² within 5% of x = L exceeds 1e-8 of its total.
    pub const WALL_CONTAMINATION: u32 = 1;
    /// Weighted moments are not finite.
    pub const WEIGHTED_DATA: u32 = 2;
    /// |u|² within 5% of x = 0 exceeds 1e-8 of its total; the wall flux
    /// 2|u_x(0,t)|² then breaks momentum conservation.
    pub const ORIGIN_CONTACT: u32 = 4;
}

pub const WALL_BAND: f64 = 0.05;
pub const WALL_THRESHOLD: f64 = 1e-8;

pub fn validity_flags(s: &SimState, g: &Grid, integrals: &Integrals) -> u32 {
    let mut out = 0;
    let rho: Vec<f64> = s.u.iter().map(|z| z.norm_sqr()).collect();
    let v2: Vec<f64> = s.v.iter().map(|x| x * x).collect();
    if g.tail_fraction(&rho, WALL_BAND) > WALL_THRESHOLD || g.tail_fraction(&v2, WALL_BAND) > WALL_THRESHOLD {
        out |= flags::WALL_CONTAMINATION;
    }
    if !(integrals.i2.is_finite() && integrals.j.is_finite() && integrals.k.is_finite()) {
        out |= flags::WEIGHTED_DATA;
    }
    if g.head_fraction(&rho, WALL_BAND) > WALL_THRESHOLD {
        out |= flags::ORIGIN_CONTACT;
    }
    out
}
