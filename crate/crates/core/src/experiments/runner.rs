//! Time loop shared by every scenario.

use std::path::Path;

use log::{info, warn};

use super::config::ScenarioConfig;
use super::initial::{generate_initial_data, InitialState};
use super::report::{drift_summary, virial_summary, RunReport, RunStatus, TrackingSummary};
use crate::boundstate::{BoundStateParams, TravelingWave};
use crate::diagnostics::{
    flags, validity_flags, BlowupMonitor, Integrals, MonitorSample, MonitorStatus, MonitorThresholds, VirialTracker,
    ViscousLedger,
};
use crate::dynamics::{
    BoundaryData, DiffusionScheme, Homogeneous, Scheme, SimState, StepControl, Stepper, TransportScheme,
};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::io::{write_aux, write_json, write_snapshot, write_timeseries, AuxRow, Snapshot, TimeSeriesRow};
use crate::physics::PhysParams;

/// Everything one simulation needs.
#[derive(Debug, Clone)]
pub struct RunSetup {
    pub grid: Grid,
    pub params: PhysParams,
    pub transport: TransportScheme,
    pub diffusion: DiffusionScheme,
    pub t_final: f64,
    /// Fixed step; otherwise `min(dx, CFL limit)` each step.
    pub dt: Option<f64>,
    pub cfl_safety: f64,
    pub cadence: usize,
    pub snapshot_every: usize,
    pub monitor: MonitorThresholds,
    /// Stop when mass reaches the far end.
    pub abort_on_wall: bool,
    /// Exact traveling-wave data at the ends instead of zeros.
    pub boundstate: Option<BoundStateParams>,
}

impl RunSetup {
    pub fn from_config(cfg: &ScenarioConfig) -> Result<Self> {
        Ok(RunSetup {
            grid: cfg.grid.build()?,
            params: cfg.physics,
            transport: cfg.numerics.transport,
            diffusion: cfg.numerics.diffusion,
            t_final: cfg.time.t_final,
            dt: cfg.time.dt,
            cfl_safety: cfg.time.cfl_safety,
            cadence: cfg.outputs.cadence,
            snapshot_every: cfg.outputs.snapshot_every,
            monitor: cfg.monitor,
            abort_on_wall: !matches!(
                cfg.scenario,
                super::ScenarioKind::Blowup | super::ScenarioKind::BoundstatePropagation
            ) && !cfg.initial_data.fills_box(),
            boundstate: None,
        })
    }

    pub fn scheme(&self) -> Scheme {
        if self.params.epsilon > 0.0 {
            Scheme::Viscous
        } else {
            Scheme::Inviscid
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub rows: Vec<TimeSeriesRow>,
    pub aux: Vec<AuxRow>,
    pub snapshots: Vec<(usize, Snapshot)>,
    pub final_state: SimState,
    pub status: RunStatus,
    pub monitor: MonitorStatus,
    pub steps: usize,
    pub dt_min: f64,
    pub dt_max: f64,
}

struct Recorder<'a> {
    setup: &'a RunSetup,
    ledger: ViscousLedger,
    tracker: Option<VirialTracker>,
    rows: Vec<TimeSeriesRow>,
    aux: Vec<AuxRow>,
}

impl Recorder<'_> {
    /// Updates the running integrals; returns the row and the integrals.
    fn observe(&mut self, s: &SimState, speed: f64) -> Result<(TimeSeriesRow, AuxRow, Integrals, u32)> {
        let g = &self.setup.grid;
        let p = &self.setup.params;
        let i = Integrals::compute(&s.u, &s.v, g)?;
        let inv = self.ledger.record(s.t, &i);
        let tracker = self
            .tracker
            .get_or_insert_with(|| VirialTracker::new(p.b, inv.energy, inv.momentum));
        let vir = tracker.record(s.t, &i);
        let f = validity_flags(s, g, &i);
        let row = TimeSeriesRow {
            t: s.t,
            mass: inv.mass,
            energy: inv.energy,
            momentum: inv.momentum,
            visc_energy_ledger: inv.visc_energy_ledger,
            visc_momentum_ledger: inv.visc_momentum_ledger,
            i2: vir.i2,
            j: vir.j,
            k: vir.k,
            phi: vir.phi,
            nonlocal_speed: speed,
            max_abs_u: i.max_u,
            max_abs_v: i.max_v,
            validity_flags: f,
        };
        let aux = AuxRow {
            t: s.t,
            ux2: i.ux2,
            u4: i.u4,
            uv: i.uv,
            v2: i.v2,
            vx2: i.vx2,
            vx_rhox: i.vx_rhox,
            im_uux: i.im_uux,
        };
        Ok((row, aux, i, f))
    }

    fn push(&mut self, row: TimeSeriesRow, aux: AuxRow) {
        self.rows.push(row);
        self.aux.push(aux);
    }
}

fn snapshot(setup: &RunSetup, s: &SimState) -> Snapshot {
    Snapshot {
        t: s.t,
        grid: setup.grid,
        params: setup.params,
        scheme: setup.scheme(),
        transport: setup.transport,
        diffusion: setup.diffusion,
        u: s.u.clone(),
        v: s.v.clone(),
    }
}

/// Integrates from `init` to `t_final`, or until the monitor fires, the state
/// diverges, or (when enabled) mass reaches `x = L`.
pub fn simulate(setup: &RunSetup, init: SimState) -> Result<Trajectory> {
    setup.params.validate()?;
    let g = &setup.grid;
    g.check_len(init.u.len())?;
    g.check_len(init.v.len())?;
    if !(setup.t_final > 0.0) {
        return Err(Error::InvalidParameter("t_final must be > 0".into()));
    }
    let nominal = setup.dt.unwrap_or(g.dx());
    let control = StepControl::new(nominal, setup.cfl_safety, setup.scheme())?
        .with_transport(setup.transport)
        .with_diffusion(setup.diffusion);
    let travel;
    let boundary: &dyn BoundaryData = match setup.boundstate {
        Some(params) => {
            travel = TravelingWave {
                params,
                length: g.length(),
            };
            &travel
        }
        None => &Homogeneous,
    };
    let stepper = Stepper::new(*g, setup.params, control, boundary);

    let mut rec = Recorder {
        setup,
        ledger: ViscousLedger::new(setup.params),
        tracker: None,
        rows: Vec::new(),
        aux: Vec::new(),
    };
    let mut monitor = BlowupMonitor::new(setup.monitor);
    let mut snapshots = Vec::new();
    let mut state = init;
    let mut status = RunStatus::Completed;
    let (mut dt_min, mut dt_max) = (f64::INFINITY, 0.0f64);

    let (row, aux, i, _) = rec.observe(&state, stepper.speed(&state))?;
    rec.push(row, aux);
    let mut cfl = stepper.cfl_dt(&state);
    monitor.observe(&MonitorSample {
        t: state.t,
        ux2: i.ux2,
        dt: cfl,
        finite: state.is_finite(),
    });
    if setup.snapshot_every > 0 {
        snapshots.push((0, snapshot(setup, &state)));
    }

    let t_end = state.t + setup.t_final;
    let mut steps = 0usize;
    loop {
        let remaining = t_end - state.t;
        if remaining <= 1e-9 * nominal {
            break;
        }
        let mut dt = nominal.min(cfl);
        if remaining - dt <= 1e-9 * nominal {
            dt = remaining;
        }
        dt = dt.min(remaining);
        state = stepper.step(&state, dt)?;
        steps += 1;
        dt_min = dt_min.min(dt);
        dt_max = dt_max.max(dt);

        if state.diverged {
            status = RunStatus::Diverged;
            monitor.observe(&MonitorSample {
                t: state.t,
                ux2: f64::NAN,
                dt,
                finite: false,
            });
            warn!("state diverged at t = {}", state.t);
            break;
        }
        let speed = stepper.speed(&state);
        cfl = stepper.cfl_dt(&state);
        let (row, aux, i, f) = rec.observe(&state, speed)?;
        let m = monitor.observe(&MonitorSample {
            t: state.t,
            ux2: i.ux2,
            dt: cfl,
            finite: true,
        });
        let wall = setup.abort_on_wall && f & flags::WALL_CONTAMINATION != 0;
        let last = !m.is_running() || wall || t_end - state.t <= 1e-9 * nominal;
        if steps.is_multiple_of(setup.cadence) || last {
            rec.push(row, aux);
        }
        if setup.snapshot_every > 0 && steps.is_multiple_of(setup.snapshot_every) {
            snapshots.push((steps, snapshot(setup, &state)));
        }
        if !m.is_running() {
            status = match m {
                MonitorStatus::Diverged { .. } => RunStatus::Diverged,
                _ => RunStatus::SuspectedBlowup,
            };
            info!("monitor fired at t = {}", state.t);
            break;
        }
        if wall {
            status = RunStatus::WallContamination;
            warn!("mass reached x = L at t = {}; increase grid.L", state.t);
            break;
        }
    }
    if snapshots.last().map(|(k, _)| *k) != Some(steps) {
        snapshots.push((steps, snapshot(setup, &state)));
    }

    Ok(Trajectory {
        rows: rec.rows,
        aux: rec.aux,
        snapshots,
        final_state: state,
        status,
        monitor: monitor.status(),
        steps,
        dt_min: if steps > 0 { dt_min } else { 0.0 },
        dt_max,
    })
}

/// `(‖u − u_exact‖₂, ‖v − v_exact‖₂)` at the state's time.
pub fn tracking_error(bp: &BoundStateParams, g: &Grid, s: &SimState) -> (f64, f64) {
    let t = s.t;
    let eu = g.integrate_unchecked(
        s.u.iter()
            .enumerate()
            .map(|(j, z)| (z - bp.u_exact(g.x(j), t)).norm_sqr()),
    );
    let ev = g.integrate_unchecked(s.v.iter().enumerate().map(|(j, x)| (x - bp.v_exact(g.x(j), t)).powi(2)));
    (eu.sqrt(), ev.sqrt())
}

/// Builds the report of a single run.
pub fn report_for(scenario: &str, setup: &RunSetup, traj: &Trajectory, warnings: Vec<String>) -> Result<RunReport> {
    let drift = drift_summary(&traj.rows)?;
    let virial = virial_summary(&traj.rows, &traj.aux, &setup.params, setup.grid.dx(), traj.monitor)?;
    let tracking = setup.boundstate.map(|bp| {
        let (l2_u, l2_v) = tracking_error(&bp, &setup.grid, &traj.final_state);
        TrackingSummary {
            t: traj.final_state.t,
            l2_u,
            l2_v,
        }
    });
    Ok(RunReport {
        scenario: scenario.to_string(),
        status: traj.status,
        t_reached: traj.final_state.t,
        t_star: traj.monitor.time(),
        steps: traj.steps,
        dt_min: traj.dt_min,
        dt_max: traj.dt_max,
        length: setup.grid.length(),
        cells: setup.grid.cells(),
        params: setup.params,
        drift,
        virial,
        tracking,
        sweep: None,
        convergence: None,
        warnings,
    })
}

/// Initial state and setup for a config; also checks the expected sign of
/// the blow-up criterion against the generated data.
pub fn prepare(cfg: &ScenarioConfig) -> Result<(RunSetup, SimState, Vec<String>)> {
    let warnings = cfg.validate()?;
    let mut setup = RunSetup::from_config(cfg)?;
    let InitialState { u, v, boundstate } =
        generate_initial_data(&cfg.initial_data, &setup.grid, &cfg.physics, cfg.seed)?;
    setup.boundstate = boundstate;
    let init = SimState::new(0.0, u, v)?;
    if let Some(expect) = cfg.initial_data.expect_criterion {
        let i = Integrals::compute(&init.u, &init.v, &setup.grid)?;
        let value = crate::diagnostics::criterion_value(i.energy(&cfg.physics), i.momentum(), cfg.physics.b);
        let ok = match expect {
            super::config::CriterionSign::Negative => value < 0.0,
            super::config::CriterionSign::Nonnegative => value >= 0.0,
        };
        if !ok {
            return Err(Error::Config(format!(
                "initial_data.expect_criterion = {expect:?} but the measured 8E(0) + b^2 M(0) = {value:.6e}"
            )));
        }
        info!("measured 8E(0) + b^2 M(0) = {value:.6e}");
    }
    Ok((setup, init, warnings))
}

/// Result of any scenario: the report plus every trajectory to persist,
/// labelled by file stem.
#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub report: RunReport,
    pub runs: Vec<(String, Trajectory)>,
}

pub fn run_single(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    let (setup, init, warnings) = prepare(cfg)?;
    let traj = simulate(&setup, init)?;
    let report = report_for(cfg.scenario.name(), &setup, &traj, warnings)?;
    Ok(ScenarioOutcome {
        report,
        runs: vec![("series".to_string(), traj)],
    })
}

/// Dispatches on the scenario kind.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    match cfg.scenario {
        super::ScenarioKind::ViscositySweep => super::sweep::run_sweep(cfg, &cfg.sweep.eps),
        super::ScenarioKind::Convergence => super::convergence::run_convergence(cfg, cfg.convergence.levels),
        _ => run_single(cfg),
    }
}

/// Writes `<stem>.csv`, `<stem>_aux.csv` and snapshots for every run, and
/// `report.json`.
pub fn persist(outcome: &ScenarioOutcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (stem, traj) in &outcome.runs {
        write_timeseries(&traj.rows, &dir.join(format!("{stem}.csv")))?;
        write_aux(&traj.aux, &dir.join(format!("{stem}_aux.csv")))?;
        for (step, snap) in &traj.snapshots {
            write_snapshot(snap, &dir.join(format!("{stem}_{step:08}.bny")))?;
        }
    }
    write_json(&outcome.report, &dir.join("report.json"))
}
