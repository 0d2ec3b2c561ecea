//! Run reports. Every number here is recomputable from the persisted
//! series; [`drift_summary`] is shared with the `check` subcommand.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{check_virial, MonitorStatus, VirialCheck, VirialSample};
use crate::error::{Error, Result};
use crate::io::{AuxRow, TimeSeriesRow};
use crate::physics::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    SuspectedBlowup,
    Diverged,
    /// Stopped because mass reached the far end of the truncated domain.
    WallContamination,
}

impl RunStatus {
    pub fn reached_final_time(&self) -> bool {
        matches!(self, RunStatus::Completed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DriftSummary {
    pub t_end: f64,
    pub p0: f64,
    pub e0: f64,
    pub m0: f64,
    /// max_t |P(t) − P(0)| / P(0)
    pub max_rel_mass_drift: f64,
    /// E(T) − E(0)
    pub energy_drift: f64,
    /// M(T) − M(0)
    pub momentum_drift: f64,
    pub max_abs_energy_drift: f64,
    pub max_abs_momentum_drift: f64,
    /// E(T) + ledger(T) − E(0)
    pub energy_defect: f64,
    /// M(T) + ledger(T) − M(0)
    pub momentum_defect: f64,
    pub max_abs_energy_defect: f64,
    pub max_abs_momentum_defect: f64,
}

pub fn drift_summary(rows: &[TimeSeriesRow]) -> Result<DriftSummary> {
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
        return Err(Error::Format("time series has no rows".into()));
    };
    let mut d = DriftSummary {
        t_end: last.t,
        p0: first.mass,
        e0: first.energy,
        m0: first.momentum,
        energy_drift: last.energy - first.energy,
        momentum_drift: last.momentum - first.momentum,
        energy_defect: last.energy + last.visc_energy_ledger - first.energy,
        momentum_defect: last.momentum + last.visc_momentum_ledger - first.momentum,
        ..Default::default()
    };
    for r in rows {
        let dp = (r.mass - first.mass).abs();
        d.max_rel_mass_drift = d
            .max_rel_mass_drift
            .max(if first.mass > 0.0 { dp / first.mass } else { dp });
        d.max_abs_energy_drift = d.max_abs_energy_drift.max((r.energy - first.energy).abs());
        d.max_abs_momentum_drift = d.max_abs_momentum_drift.max((r.momentum - first.momentum).abs());
        d.max_abs_energy_defect = d
            .max_abs_energy_defect
            .max((r.energy + r.visc_energy_ledger - first.energy).abs());
        d.max_abs_momentum_defect = d
            .max_abs_momentum_defect
            .max((r.momentum + r.visc_momentum_ledger - first.momentum).abs());
    }
    Ok(d)
}

/// Joins the main and auxiliary series into the samples the moment checks use.
pub fn virial_samples(rows: &[TimeSeriesRow], aux: &[AuxRow]) -> Result<Vec<VirialSample>> {
    if rows.len() != aux.len() {
        return Err(Error::Format(format!(
            "series has {} rows but the auxiliary series has {}",
            rows.len(),
            aux.len()
        )));
    }
    rows.iter()
        .zip(aux)
        .map(|(r, a)| {
            if r.t != a.t {
                return Err(Error::Format(format!("series times differ at t = {}", r.t)));
            }
            Ok(VirialSample {
                t: r.t,
                phi: r.phi,
                k: r.k,
                u4: a.u4,
                uv: a.uv,
                v2: a.v2,
                ux2: a.ux2,
                flags: r.validity_flags,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VirialSummary {
    /// 8E(0) + b²M(0), measured by quadrature.
    pub criterion_value: f64,
    pub criterion_negative: bool,
    pub monitor: MonitorStatus,
    pub ux2_initial: f64,
    pub ux2_max: f64,
    /// Finite-difference checks of φ'' and dK/dt; only for inviscid runs.
    pub check: Option<VirialCheck>,
}

pub fn virial_summary(
    rows: &[TimeSeriesRow],
    aux: &[AuxRow],
    p: &PhysParams,
    dx: f64,
    monitor: MonitorStatus,
) -> Result<VirialSummary> {
    let d = drift_summary(rows)?;
    let criterion_value = 8.0 * d.e0 + p.b * p.b * d.m0;
    let ux2_initial = aux.first().map_or(0.0, |a| a.ux2);
    let ux2_max = aux.iter().map(|a| a.ux2).fold(0.0, f64::max);
    let check = if p.epsilon == 0.0 && rows.len() >= 5 {
        let samples = virial_samples(rows, aux)?;
        let h = rows[1].t - rows[0].t;
        let c = check_virial(&samples, p, d.e0, d.m0, h, dx);
        (c.points > 0).then_some(c)
    } else {
        None
    };
    Ok(VirialSummary {
        criterion_value,
        criterion_negative: criterion_value < 0.0,
        monitor,
        ux2_initial,
        ux2_max,
        check,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackingSummary {
    pub t: f64,
    /// ‖u − u_exact‖₂ at the final time.
    pub l2_u: f64,
    /// ‖v − v_exact‖₂ at the final time.
    pub l2_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMember {
    pub epsilon: f64,
    pub series: String,
    /// ∫v² at T.
    pub v2_final: f64,
    /// 2ε∫₀ᵀ∫v_x² at T.
    pub dissipation_ledger: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub members: Vec<SweepMember>,
    /// ‖v^{ε_i} − v^{ε_{i+1}}‖₂ at T for consecutive members.
    pub distances: Vec<f64>,
    /// distances[i] / distances[i + 1]
    pub distance_ratios: Vec<f64>,
    /// Common sample times.
    pub times: Vec<f64>,
    /// Richardson extrapolation of ∫(v^ε)² to ε = 0 from the two smallest ε.
    pub c_estimate: Vec<f64>,
    /// ∫v̂² of the smallest-ε member.
    pub v2_smallest: Vec<f64>,
    /// max_t (∫v̂² − c(t)); ≤ 0 when the extrapolated limit dominates.
    pub max_shortfall: f64,
    /// max_t |c(t) − ∫v̂²| using the two smallest ε.
    pub defect_fine: f64,
    /// Same with the two largest ε.
    pub defect_coarse: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLevel {
    pub cells: usize,
    pub dt: f64,
    pub err_u: f64,
    pub err_v: f64,
    /// log2 of the error ratio to the previous level.
    pub order_u: Option<f64>,
    pub order_v: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub reference: super::config::Reference,
    pub levels: Vec<ConvergenceLevel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub status: RunStatus,
    pub t_reached: f64,
    /// Time at which the monitor fired.
    pub t_star: Option<f64>,
    pub steps: usize,
    pub dt_min: f64,
    pub dt_max: f64,
    pub length: f64,
    pub cells: usize,
    pub params: PhysParams,
    pub drift: DriftSummary,
    pub virial: VirialSummary,
    pub tracking: Option<TrackingSummary>,
    pub sweep: Option<SweepSummary>,
    pub convergence: Option<ConvergenceTable>,
    pub warnings: Vec<String>,
}
