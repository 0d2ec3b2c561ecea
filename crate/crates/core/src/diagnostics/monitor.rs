//! Numerical proxy for finite-time breakdown: gradient growth, time-step
//! collapse, or non-finite values.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonitorThresholds {
    /// Fires when ∫|u_x|² exceeds this multiple of its initial value.
    pub growth_factor: f64,
    /// Fires when the admissible time step drops below this value.
    pub dt_floor: f64,
}

impl Default for MonitorThresholds {
    fn default() -> Self {
        MonitorThresholds {
            growth_factor: 1e3,
            dt_floor: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MonitorStatus {
    Running,
    SuspectedBlowup { t: f64 },
    Diverged { t: f64 },
}

impl MonitorStatus {
    pub fn is_running(&self) -> bool {
        matches!(self, MonitorStatus::Running)
    }

    pub fn time(&self) -> Option<f64> {
        match *self {
            MonitorStatus::Running => None,
            MonitorStatus::SuspectedBlowup { t } | MonitorStatus::Diverged { t } => Some(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorSample {
    pub t: f64,
    /// ∫|u_x|²
    pub ux2: f64,
    /// Time step admissible at this sample.
    pub dt: f64,
    pub finite: bool,
}

/// Incremental form of [`blowup_monitor`]; latches the first event.
#[derive(Debug, Clone)]
pub struct BlowupMonitor {
    thresholds: MonitorThresholds,
    initial_ux2: Option<f64>,
    status: MonitorStatus,
}

impl BlowupMonitor {
    pub fn new(thresholds: MonitorThresholds) -> Self {
        BlowupMonitor {
            thresholds,
            initial_ux2: None,
            status: MonitorStatus::Running,
        }
    }

    pub fn status(&self) -> MonitorStatus {
        self.status
    }

    /// Feeds one sample; the first sample fixes the reference ∫|u_x|².
    pub fn observe(&mut self, s: &MonitorSample) -> MonitorStatus {
        if !self.status.is_running() {
            return self.status;
        }
        if !s.finite || !s.ux2.is_finite() {
            self.status = MonitorStatus::Diverged { t: s.t };
            return self.status;
        }
        let initial = *self.initial_ux2.get_or_insert(s.ux2);
        if (initial > 0.0 && s.ux2 > self.thresholds.growth_factor * initial) || s.dt < self.thresholds.dt_floor {
            self.status = MonitorStatus::SuspectedBlowup { t: s.t };
        }
        self.status
    }
}

pub fn blowup_monitor(history: &[MonitorSample], thresholds: MonitorThresholds) -> MonitorStatus {
    let mut m = BlowupMonitor::new(thresholds);
    for s in history {
        if !m.observe(s).is_running() {
            break;
        }
    }
    m.status()
}
