//! Scenario configuration. Every section rejects unknown keys.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::diagnostics::MonitorThresholds;
use crate::dynamics::{DiffusionScheme, TransportScheme};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::physics::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Conservation,
    Blowup,
    ViscositySweep,
    BoundstatePropagation,
    Convergence,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Conservation => "conservation",
            ScenarioKind::Blowup => "blowup",
            ScenarioKind::ViscositySweep => "viscosity_sweep",
            ScenarioKind::BoundstatePropagation => "boundstate_propagation",
            ScenarioKind::Convergence => "convergence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "N")]
    pub cells: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid> {
        Grid::new(self.length, self.cells)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(rename = "T")]
    pub t_final: f64,
    pub cfl_safety: f64,
    /// Fixed step; when absent the step is `min(dx, CFL limit)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig {
            t_final: 1.0,
            cfl_safety: 0.9,
            dt: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UGenerator {
    #[default]
    Zero,
    Gaussian,
    SineMode,
    Boundstate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VGenerator {
    #[default]
    Zero,
    Bump,
    /// `v = ratio · |u|²`
    Slaved,
    Boundstate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionSign {
    Negative,
    Nonnegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InitialData {
    pub u: UGenerator,
    pub u_amplitude: f64,
    /// Defaults to L/2.
    pub u_center: Option<f64>,
    /// Defaults to L/20.
    pub u_width: Option<f64>,
    pub u_carrier: f64,
    pub u_mode: u32,
    pub v: VGenerator,
    pub v_amplitude: f64,
    pub v_center: Option<f64>,
    pub v_width: Option<f64>,
    pub v_ratio: f64,
    pub sstar: Option<f64>,
    pub mustar: Option<f64>,
    /// Amplitude of a seeded smooth perturbation added to `u`.
    pub noise: f64,
    /// Required sign of the measured `8E(0) + b²M(0)`.
    pub expect_criterion: Option<CriterionSign>,
}

impl Default for InitialData {
    fn default() -> Self {
        InitialData {
            u: UGenerator::Zero,
            u_amplitude: 1.0,
            u_center: None,
            u_width: None,
            u_carrier: 0.0,
            u_mode: 1,
            v: VGenerator::Zero,
            v_amplitude: 0.0,
            v_center: None,
            v_width: None,
            v_ratio: 0.0,
            sstar: None,
            mustar: None,
            noise: 0.0,
            expect_criterion: None,
        }
    }
}

impl InitialData {
    pub fn is_boundstate(&self) -> bool {
        self.u == UGenerator::Boundstate || self.v == VGenerator::Boundstate
    }

    /// Data that are meant to reach the walls, so the far-end checks do not apply.
    pub fn fills_box(&self) -> bool {
        self.is_boundstate() || self.u == UGenerator::SineMode
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    pub transport: TransportScheme,
    pub diffusion: DiffusionScheme,
    /// Viscosities above this only trigger a warning.
    pub epsilon_warn: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            transport: TransportScheme::default(),
            diffusion: DiffusionScheme::default(),
            epsilon_warn: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub eps: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    Analytic,
    #[default]
    Finest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub levels: usize,
    pub reference: Reference,
    pub memory_limit_mb: f64,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        ConvergenceConfig {
            levels: 3,
            reference: Reference::Finest,
            memory_limit_mb: 2048.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    /// Write a series row every `cadence` steps (and at the last step).
    pub cadence: usize,
    /// Write a snapshot every this many steps; 0 keeps only the final one.
    pub snapshot_every: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: None,
            cadence: 1,
            snapshot_every: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub seed: u64,
    pub grid: GridConfig,
    pub physics: PhysParams,
    #[serde(default)]
    pub time: TimeConfig,
    #[serde(default)]
    pub initial_data: InitialData,
    #[serde(default)]
    pub numerics: NumericsConfig,
    #[serde(default)]
    pub monitor: MonitorThresholds,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub convergence: ConvergenceConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
}

fn positive(key: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{key} must be > 0, got {x}")))
    }
}

impl ScenarioConfig {
    /// Checks everything that can be checked without generating data.
    /// Returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        self.grid.build().map_err(|e| Error::Config(format!("grid: {e}")))?;
        self.physics.validate()?;
        positive("time.T", self.time.t_final)?;
        if !(self.time.cfl_safety > 0.0 && self.time.cfl_safety <= 1.0) {
            return Err(Error::Config(format!(
                "time.cfl_safety must lie in (0, 1], got {}",
                self.time.cfl_safety
            )));
        }
        if let Some(dt) = self.time.dt {
            positive("time.dt", dt)?;
        }
        if self.outputs.cadence == 0 {
            return Err(Error::Config("outputs.cadence must be >= 1".into()));
        }
        positive("monitor.growth_factor", self.monitor.growth_factor)?;
        if !(self.monitor.dt_floor >= 0.0) {
            return Err(Error::Config("monitor.dt_floor must be >= 0".into()));
        }
        if self.physics.epsilon > self.numerics.epsilon_warn {
            warnings.push(format!(
                "physics.epsilon = {} exceeds {}; existence is only known for small viscosity",
                self.physics.epsilon, self.numerics.epsilon_warn
            ));
        }

        let d = &self.initial_data;
        if d.is_boundstate() {
            if d.u != UGenerator::Boundstate || d.v != VGenerator::Boundstate {
                return Err(Error::Config(
                    "initial_data.u and initial_data.v must both be \"boundstate\" or neither".into(),
                ));
            }
            positive(
                "initial_data.sstar",
                d.sstar.ok_or_else(|| missing("initial_data.sstar"))?,
            )?;
            positive(
                "initial_data.mustar",
                d.mustar.ok_or_else(|| missing("initial_data.mustar"))?,
            )?;
        }
        for (key, w) in [("initial_data.u_width", d.u_width), ("initial_data.v_width", d.v_width)] {
            if let Some(w) = w {
                positive(key, w)?;
            }
        }
        if d.u == UGenerator::SineMode && d.u_mode == 0 {
            return Err(Error::Config("initial_data.u_mode must be >= 1".into()));
        }
        if !(d.noise.is_finite() && d.noise >= 0.0) {
            return Err(Error::Config("initial_data.noise must be >= 0".into()));
        }

        match self.scenario {
            ScenarioKind::BoundstatePropagation if !d.is_boundstate() => {
                return Err(Error::Config(
                    "boundstate_propagation needs initial_data.u = v = \"boundstate\"".into(),
                ));
            }
            ScenarioKind::ViscositySweep => check_eps_list(&self.sweep.eps, self.numerics.epsilon_warn, &mut warnings)?,
            ScenarioKind::Convergence => {
                if self.convergence.levels < 3 {
                    return Err(Error::Config(format!(
                        "convergence.levels must be >= 3, got {}",
                        self.convergence.levels
                    )));
                }
                if self.convergence.reference == Reference::Analytic && !d.is_boundstate() {
                    return Err(Error::Config(
                        "convergence.reference = \"analytic\" needs bound-state initial data".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(warnings)
    }
}

fn missing(key: &str) -> Error {
    Error::Config(format!("{key} is required for bound-state data"))
}

pub(crate) fn check_eps_list(eps: &[f64], warn_above: f64, warnings: &mut Vec<String>) -> Result<()> {
    if eps.len() < 2 {
        return Err(Error::Config("sweep.eps needs at least two values".into()));
    }
    for (i, &e) in eps.iter().enumerate() {
        positive("sweep.eps", e)?;
        if i > 0 && e >= eps[i - 1] {
            return Err(Error::Config("sweep.eps must be strictly decreasing".into()));
        }
    }
    if eps[0] > warn_above {
        warnings.push(format!("sweep.eps starts at {} > {warn_above}", eps[0]));
    }
    Ok(())
}
