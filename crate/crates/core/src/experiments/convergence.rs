//! Joint (dx, dt) refinement studies.

use rayon::prelude::*;

use super::config::{Reference, ScenarioConfig};
use super::report::{ConvergenceLevel, ConvergenceTable, RunStatus};
use super::runner::{prepare, report_for, simulate, tracking_error, RunSetup, ScenarioOutcome, Trajectory};
use crate::dynamics::SimState;
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Rough peak memory of running all levels at once, in bytes.
pub fn estimate_memory(base_cells: usize, levels: usize, base_steps: f64, cadence: usize) -> f64 {
    (0..levels)
        .map(|l| {
            let nodes = (base_cells << l) as f64 + 1.0;
            let steps = base_steps * (1u64 << l) as f64;
            // about 40 node-sized buffers alive during a step, plus two series
            nodes * 8.0 * 40.0 + steps / cadence as f64 * 22.0 * 8.0
        })
        .sum()
}

fn order(coarse: f64, fine: f64) -> Option<f64> {
    (coarse > 0.0 && fine > 0.0).then(|| (coarse / fine).log2())
}

/// L² distance between a coarse state and a finer one restricted to the
/// coarse nodes.
fn restricted_error(coarse: &Grid, a: &SimState, b: &SimState, stride: usize) -> (f64, f64) {
    let eu = coarse.integrate_unchecked(a.u.iter().enumerate().map(|(j, z)| (z - b.u[j * stride]).norm_sqr()));
    let ev = coarse.integrate_unchecked(a.v.iter().enumerate().map(|(j, x)| (x - b.v[j * stride]).powi(2)));
    (eu.sqrt(), ev.sqrt())
}

/// Errors and observed orders per level, against the analytic solution or
/// the finest level.
pub fn convergence_table(setups: &[RunSetup], runs: &[Trajectory], reference: Reference) -> Result<ConvergenceTable> {
    let n = runs.len();
    let errors: Vec<(f64, f64)> = match reference {
        Reference::Analytic => setups
            .iter()
            .zip(runs)
            .map(|(s, r)| {
                let bp = s
                    .boundstate
                    .ok_or_else(|| Error::InvalidParameter("analytic reference needs bound-state data".into()))?;
                Ok(tracking_error(&bp, &s.grid, &r.final_state))
            })
            .collect::<Result<_>>()?,
        Reference::Finest => (0..n - 1)
            .map(|l| {
                let stride = 1usize << (n - 1 - l);
                restricted_error(&setups[l].grid, &runs[l].final_state, &runs[n - 1].final_state, stride)
            })
            .collect(),
    };
    let mut levels: Vec<ConvergenceLevel> = Vec::with_capacity(errors.len());
    for (l, &(err_u, err_v)) in errors.iter().enumerate() {
        let prev = levels.last().map(|p| (p.err_u, p.err_v));
        levels.push(ConvergenceLevel {
            cells: setups[l].grid.cells(),
            dt: setups[l].dt.unwrap_or(setups[l].grid.dx()),
            err_u,
            err_v,
            order_u: prev.and_then(|(pu, _)| order(pu, err_u)),
            order_v: prev.and_then(|(_, pv)| order(pv, err_v)),
        });
    }
    Ok(ConvergenceTable { reference, levels })
}

/// Runs `levels` copies of the config at (dx, dt)/2^l in parallel.
pub fn run_convergence(cfg: &ScenarioConfig, levels: usize) -> Result<ScenarioOutcome> {
    if levels < 3 {
        return Err(Error::Config(format!(
            "convergence needs at least 3 levels, got {levels}"
        )));
    }
    let (base, _, warnings) = prepare(cfg)?;
    let dt0 = base.dt.unwrap_or(base.grid.dx());
    let need = estimate_memory(base.grid.cells(), levels, base.t_final / dt0, base.cadence);
    let limit = cfg.convergence.memory_limit_mb * 1024.0 * 1024.0;
    if need > limit {
        return Err(Error::Resource(format!(
            "convergence study needs about {:.0} MB, above convergence.memory_limit_mb = {}",
            need / 1048576.0,
            cfg.convergence.memory_limit_mb
        )));
    }

    let prepared: Vec<(RunSetup, SimState)> = (0..levels)
        .map(|l| {
            let mut c = cfg.clone();
            c.grid.cells = cfg.grid.cells << l;
            c.time.dt = Some(dt0 / (1u64 << l) as f64);
            let (s, init, _) = prepare(&c)?;
            Ok((s, init))
        })
        .collect::<Result<_>>()?;
    let runs: Vec<Trajectory> = prepared
        .par_iter()
        .map(|(s, init)| simulate(s, init.clone()))
        .collect::<Result<_>>()?;
    let setups: Vec<RunSetup> = prepared.into_iter().map(|(s, _)| s).collect();
    let table = convergence_table(&setups, &runs, cfg.convergence.reference)?;

    let last = levels - 1;
    let mut report = report_for(cfg.scenario.name(), &setups[last], &runs[last], warnings)?;
    if let Some(bad) = runs.iter().find(|r| r.status != RunStatus::Completed) {
        report.status = bad.status;
    }
    report.convergence = Some(table);
    Ok(ScenarioOutcome {
        report,
        runs: (0..levels).map(|l| format!("series_level{l}")).zip(runs).collect(),
    })
}
