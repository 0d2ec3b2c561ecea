//! Vanishing-viscosity sweeps.

use rayon::prelude::*;

use super::config::{check_eps_list, ScenarioConfig};
use super::report::{RunStatus, SweepMember, SweepSummary};
use super::runner::{prepare, report_for, simulate, ScenarioOutcome, Trajectory};
use crate::error::{Error, Result};
use crate::grid::Grid;

fn l2_distance(g: &Grid, a: &[f64], b: &[f64]) -> f64 {
    g.integrate_unchecked(a.iter().zip(b).map(|(x, y)| (x - y).powi(2)))
        .sqrt()
}

/// Richardson extrapolation to ε = 0 of a quantity linear in ε.
pub fn extrapolate_to_zero(eps_small: f64, s_small: f64, eps_large: f64, s_large: f64) -> f64 {
    s_small + (s_small - s_large) * eps_small / (eps_large - eps_small)
}

/// Reduces finished sweep members (ordered by decreasing ε) to the summary.
pub fn summarize_sweep(g: &Grid, eps: &[f64], runs: &[Trajectory], stems: &[String]) -> Result<SweepSummary> {
    let n = runs.len();
    if n < 2 || eps.len() != n {
        return Err(Error::InvalidParameter("a sweep needs at least two members".into()));
    }
    let times: Vec<f64> = runs[0].rows.iter().map(|r| r.t).collect();
    for r in runs {
        if r.rows.len() != times.len() || r.rows.iter().zip(&times).any(|(row, &t)| row.t != t) {
            return Err(Error::InvalidParameter(
                "sweep members were sampled at different times; set time.dt so all share one time grid".into(),
            ));
        }
    }
    let members = runs
        .iter()
        .zip(eps)
        .zip(stems)
        .map(|((r, &epsilon), stem)| SweepMember {
            epsilon,
            series: format!("{stem}.csv"),
            v2_final: r.aux.last().map_or(0.0, |a| a.v2),
            dissipation_ledger: r.rows.last().map_or(0.0, |row| row.visc_momentum_ledger),
        })
        .collect();
    let distances: Vec<f64> = runs
        .windows(2)
        .map(|w| l2_distance(g, &w[0].final_state.v, &w[1].final_state.v))
        .collect();
    let distance_ratios = distances.windows(2).map(|d| d[0] / d[1]).collect();

    let s = |k: usize| -> Vec<f64> { runs[k].aux.iter().map(|a| a.v2).collect() };
    let c_of = |lo: usize, hi: usize| -> Vec<f64> {
        let (sl, sh) = (s(lo), s(hi));
        sl.iter()
            .zip(&sh)
            .map(|(&a, &b)| extrapolate_to_zero(eps[lo], a, eps[hi], b))
            .collect()
    };
    let max_abs_diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    let c_estimate = c_of(n - 1, n - 2);
    let v2_smallest = s(n - 1);
    let max_shortfall = v2_smallest
        .iter()
        .zip(&c_estimate)
        .map(|(v, c)| v - c)
        .fold(f64::NEG_INFINITY, f64::max);
    let defect_fine = max_abs_diff(&c_estimate, &v2_smallest);
    let defect_coarse = max_abs_diff(&c_of(1, 0), &s(1));

    Ok(SweepSummary {
        members,
        distances,
        distance_ratios,
        times,
        c_estimate,
        v2_smallest,
        max_shortfall,
        defect_fine,
        defect_coarse,
    })
}

/// Runs the config once per viscosity in `eps` (strictly decreasing), in
/// parallel, on identical data and grid.
pub fn run_sweep(cfg: &ScenarioConfig, eps: &[f64]) -> Result<ScenarioOutcome> {
    let mut warnings = Vec::new();
    check_eps_list(eps, cfg.numerics.epsilon_warn, &mut warnings)?;
    let (base, init, w) = prepare(cfg)?;
    warnings.extend(w);

    let runs: Vec<Trajectory> = eps
        .par_iter()
        .map(|&e| {
            let mut setup = base.clone();
            setup.params.epsilon = e;
            simulate(&setup, init.clone())
        })
        .collect::<Result<_>>()?;
    let stems: Vec<String> = (0..eps.len()).map(|i| format!("series_eps{i}")).collect();
    let summary = summarize_sweep(&base.grid, eps, &runs, &stems)?;

    let last = runs.len() - 1;
    let mut finest = base.clone();
    finest.params.epsilon = eps[last];
    let mut report = report_for(cfg.scenario.name(), &finest, &runs[last], warnings)?;
    if let Some(bad) = runs.iter().find(|r| r.status != RunStatus::Completed) {
        report.status = bad.status;
    }
    report.sweep = Some(summary);
    Ok(ScenarioOutcome {
        report,
        runs: stems.into_iter().zip(runs).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extrapolation_is_exact_for_linear_data() {
        let f = |e: f64| 3.0 - 2.0 * e;
        assert!((extrapolate_to_zero(0.025, f(0.025), 0.05, f(0.05)) - 3.0).abs() < 1e-14);
        assert!((extrapolate_to_zero(0.1, f(0.1), 0.3, f(0.3)) - 3.0).abs() < 1e-14);
    }
}
