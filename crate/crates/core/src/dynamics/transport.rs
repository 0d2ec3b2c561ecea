//! Long-wave substep: upwind advection with the nonlocal speed `a ∫v²`,
//! the explicit source `-b (|u|^2)_x`, and implicit viscosity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::physics::PhysParams;
use crate::stencil::ddx_unchecked;
use crate::tridiag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransportScheme {
    /// First-order upwind, forward Euler, speed frozen for the substep.
    #[default]
    Upwind1,
    /// Minmod-limited MUSCL upwind with a two-stage SSP Runge–Kutta; the
    /// speed is re-evaluated at the second stage.
    Minmod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusionScheme {
    /// Backward Euler after the advection update.
    #[default]
    BackwardEuler,
    /// Crank–Nicolson half steps on both sides of the advection update.
    CrankNicolson,
}

/// End conditions for one transport substep, evaluated at its final time.
#[derive(Debug, Clone, Copy, Default)]
pub struct TransportEnds {
    pub left: f64,
    pub right: f64,
    pub speed: Option<f64>,
}

/// `a ∫ v² dx`, the transport speed of the long wave.
pub fn nonlocal_speed(v: &RealField, a: f64, g: &Grid) -> f64 {
    a * g.integrate_unchecked(v.iter().map(|x| x * x))
}

/// Advances `v` by `dt` with `u` frozen.
#[allow(clippy::too_many_arguments)]
pub fn transport_step(
    v: &RealField,
    u: &ComplexField,
    p: &PhysParams,
    dt: f64,
    grid: &Grid,
    scheme: TransportScheme,
    diffusion: Option<DiffusionScheme>,
    ends: TransportEnds,
) -> Result<RealField> {
    grid.check_len(v.len())?;
    grid.check_len(u.len())?;
    let dx = grid.dx();
    let speed = ends.speed.unwrap_or_else(|| nonlocal_speed(v, p.a, grid));
    let courant = speed * dt / dx;
    if courant > 1.0 + 1e-12 {
        return Err(Error::CflViolation { courant });
    }

    let density: Vec<f64> = u.iter().map(|z| z.norm_sqr()).collect();
    let source: Vec<f64> = ddx_unchecked(&density, dx).into_iter().map(|d| -p.b * d).collect();

    let advect = |w: &[f64]| -> Vec<f64> {
        match scheme {
            TransportScheme::Upwind1 => upwind_euler(w, &source, speed, dt, dx, ends.left),
            TransportScheme::Minmod => {
                let stage = muscl_euler(w, &source, speed, dt, dx, ends.left);
                let speed2 = ends
                    .speed
                    .unwrap_or_else(|| p.a * grid.integrate_unchecked(stage.iter().map(|x| x * x)));
                let second = muscl_euler(&stage, &source, speed2, dt, dx, ends.left);
                w.iter().zip(&second).map(|(a, b)| 0.5 * (a + b)).collect()
            }
        }
    };

    let viscous = diffusion.filter(|_| p.epsilon > 0.0);
    let mut out = match viscous {
        None => advect(v),
        Some(DiffusionScheme::BackwardEuler) => {
            let w = advect(v);
            diffuse_backward_euler(&w, p.epsilon * dt, dx, (ends.left, ends.right))?
        }
        Some(DiffusionScheme::CrankNicolson) => {
            let nu = 0.5 * p.epsilon * dt;
            let w = diffuse_crank_nicolson(v, nu, dx, (v[0], v[v.len() - 1]))?;
            let w = advect(&w);
            diffuse_crank_nicolson(&w, nu, dx, (ends.left, ends.right))?
        }
    };
    let n = out.len() - 1;
    out[0] = ends.left;
    out[n] = ends.right;
    Ok(RealField::new(out))
}

fn upwind_euler(v: &[f64], source: &[f64], speed: f64, dt: f64, dx: f64, inflow: f64) -> Vec<f64> {
    let nu = speed * dt / dx;
    let mut out = Vec::with_capacity(v.len());
    out.push(inflow);
    for j in 1..v.len() {
        out.push(v[j] - nu * (v[j] - v[j - 1]) + dt * source[j]);
    }
    out
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// Forward-Euler stage of the limited scheme. Face `j+1/2` takes the value
/// reconstructed from node `j` (speed is never negative).
fn muscl_euler(v: &[f64], source: &[f64], speed: f64, dt: f64, dx: f64, inflow: f64) -> Vec<f64> {
    let n = v.len() - 1;
    let nu = speed * dt / dx;
    // Undivided slopes; the end nodes fall back to their one-sided difference.
    let mut slope = vec![0.0; n + 1];
    slope[0] = v[1] - v[0];
    for j in 1..n {
        slope[j] = minmod(v[j] - v[j - 1], v[j + 1] - v[j]);
    }
    slope[n] = v[n] - v[n - 1];
    let face = |j: usize| v[j] + 0.5 * slope[j];

    let mut out = Vec::with_capacity(n + 1);
    out.push(inflow);
    for j in 1..=n {
        out.push(v[j] - nu * (face(j) - face(j - 1)) + dt * source[j]);
    }
    out
}

/// `(I - nu Δ) w = v` on interior nodes with Dirichlet `ends`.
fn diffuse_backward_euler(v: &[f64], nu: f64, dx: f64, ends: (f64, f64)) -> Result<Vec<f64>> {
    let n = v.len() - 1;
    let r = nu / (dx * dx);
    let mut rhs: Vec<f64> = v[1..n].to_vec();
    rhs[0] += r * ends.0;
    rhs[n - 2] += r * ends.1;
    tridiag::solve_constant(-r, 1.0 + 2.0 * r, -r, &mut rhs)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(ends.0);
    out.extend(rhs);
    out.push(ends.1);
    Ok(out)
}

/// `(I - nu/2 Δ) w = (I + nu/2 Δ) v`; `v[0]`, `v[N]` are the old end values.
fn diffuse_crank_nicolson(v: &[f64], nu: f64, dx: f64, ends: (f64, f64)) -> Result<Vec<f64>> {
    let n = v.len() - 1;
    let r = 0.5 * nu / (dx * dx);
    let mut rhs: Vec<f64> = (1..n).map(|j| v[j] + r * (v[j + 1] - 2.0 * v[j] + v[j - 1])).collect();
    rhs[0] += r * ends.0;
    rhs[n - 2] += r * ends.1;
    tridiag::solve_constant(-r, 1.0 + 2.0 * r, -r, &mut rhs)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(ends.0);
    out.extend(rhs);
    out.push(ends.1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn hat(g: &Grid, center: f64, half_width: f64, height: f64) -> RealField {
        RealField::from_fn(g, |x| (height * (1.0 - (x - center).abs() / half_width)).max(0.0))
    }

    #[test]
    fn zero_fields_stay_zero() {
        let g = Grid::new(10.0, 100).unwrap();
        let p = PhysParams::new(1.0, 1.0, 0.1).unwrap();
        let out = transport_step(
            &RealField::zeros(&g),
            &ComplexField::zeros(&g),
            &p,
            0.05,
            &g,
            TransportScheme::Upwind1,
            Some(DiffusionScheme::BackwardEuler),
            TransportEnds::default(),
        )
        .unwrap();
        assert!(out.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn nonlocal_speed_examples() {
        let g = Grid::new(40.0, 4096).unwrap();
        assert_eq!(nonlocal_speed(&RealField::zeros(&g), 1.0, &g), 0.0);
        // a = 2, v = e^{-x}: 2 ∫ e^{-2x} = 1.
        let v = RealField::from_fn(&g, |x| (-x).exp());
        let c = nonlocal_speed(&v, 2.0, &g);
        assert!((c - 1.0).abs() < 1e-4, "{c}");
        // Hat of height h and half-width w: ∫v² = 2 h² w / 3.
        let g = Grid::new(4.0, 400).unwrap();
        let h = (0.25f64 * 3.0 / 2.0).sqrt();
        let v = hat(&g, 2.0, 1.0, h);
        assert!((nonlocal_speed(&v, 1.0, &g) - 0.25).abs() < 1e-4);
    }

    #[test]
    fn upwind_is_exact_at_courant_one() {
        let g = Grid::new(10.0, 100).unwrap();
        let p = PhysParams::new(1.0, 1.0, 0.0).unwrap();
        let v = hat(&g, 3.0, 0.5, 1.0);
        let c = nonlocal_speed(&v, p.a, &g);
        let dt = g.dx() / c;
        let out = transport_step(
            &v,
            &ComplexField::zeros(&g),
            &p,
            dt,
            &g,
            TransportScheme::Upwind1,
            None,
            TransportEnds::default(),
        )
        .unwrap();
        for j in 1..g.nodes() {
            assert!((out[j] - v[j - 1]).abs() < 1e-12);
        }
    }

    #[test]
    fn cfl_violation_is_rejected() {
        let g = Grid::new(10.0, 100).unwrap();
        let p = PhysParams::new(1.0, 1.0, 0.0).unwrap();
        let v = hat(&g, 3.0, 0.5, 1.0);
        let c = nonlocal_speed(&v, p.a, &g);
        let err = transport_step(
            &v,
            &ComplexField::zeros(&g),
            &p,
            1.5 * g.dx() / c,
            &g,
            TransportScheme::Upwind1,
            None,
            TransportEnds::default(),
        );
        assert!(matches!(err, Err(Error::CflViolation { .. })));
    }

    #[test]
    fn backward_euler_damps_the_box_mode() {
        let len = 2.0;
        let g = Grid::new(len, 400).unwrap();
        let eps = 0.3;
        let dt = 0.01;
        let mode = RealField::from_fn(&g, |x| (PI * x / len).sin());
        let out = diffuse_backward_euler(&mode, eps * dt, g.dx(), (0.0, 0.0)).unwrap();
        let dx = g.dx();
        let discrete = 4.0 / (dx * dx) * (0.5 * PI * dx / len).sin().powi(2);
        let exact_factor = 1.0 / (1.0 + eps * discrete * dt);
        let continuum_factor = 1.0 / (1.0 + eps * (PI / len).powi(2) * dt);
        for j in 1..g.cells() {
            assert!((out[j] - exact_factor * mode[j]).abs() < 1e-12);
            assert!((out[j] - continuum_factor * mode[j]).abs() < 1e-7);
        }
    }

    #[test]
    fn crank_nicolson_damps_the_box_mode() {
        let len = 2.0;
        let g = Grid::new(len, 200).unwrap();
        let nu = 0.01;
        let mode = RealField::from_fn(&g, |x| (PI * x / len).sin());
        let out = diffuse_crank_nicolson(&mode, nu, g.dx(), (0.0, 0.0)).unwrap();
        let dx = g.dx();
        let lam = 4.0 / (dx * dx) * (0.5 * PI * dx / len).sin().powi(2);
        let factor = (1.0 - 0.5 * nu * lam) / (1.0 + 0.5 * nu * lam);
        for j in 1..g.cells() {
            assert!((out[j] - factor * mode[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn mass_only_moves_right_without_source() {
        let g = Grid::new(10.0, 200).unwrap();
        let p = PhysParams::new(1.0, 1.0, 0.0).unwrap();
        let v = hat(&g, 3.0, 0.5, 1.0);
        for scheme in [TransportScheme::Upwind1, TransportScheme::Minmod] {
            let mut w = v.clone();
            for _ in 0..20 {
                w = transport_step(
                    &w,
                    &ComplexField::zeros(&g),
                    &p,
                    0.02,
                    &g,
                    scheme,
                    None,
                    TransportEnds::default(),
                )
                .unwrap();
            }
            // Nothing appears left of the initial support.
            for j in 0..g.nodes() {
                if g.x(j) < 2.5 - 1e-12 {
                    assert!(w[j].abs() < 1e-14, "{scheme:?} leaked at x = {}", g.x(j));
                }
            }
            // First moment increases.
            let m0 = g.integrate_unchecked(g.coordinates().zip(v.iter()).map(|(x, f)| x * f));
            let m1 = g.integrate_unchecked(g.coordinates().zip(w.iter()).map(|(x, f)| x * f));
            assert!(m1 > m0);
        }
    }
}
