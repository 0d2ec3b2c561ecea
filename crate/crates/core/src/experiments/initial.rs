//! Initial-data generators.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{InitialData, UGenerator, VGenerator};
use crate::boundstate::{assemble_bound_state, solve_parameters, BoundStateParams};
use crate::diagnostics::{WALL_BAND, WALL_THRESHOLD};
use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::physics::PhysParams;

/// Sine modes used by the seeded perturbation.
const NOISE_MODES: u32 = 8;

#[derive(Debug, Clone)]
pub struct InitialState {
    pub u: ComplexField,
    pub v: RealField,
    /// Set for bound-state data.
    pub boundstate: Option<BoundStateParams>,
}

fn mask(x: f64, len: f64) -> f64 {
    (PI * x / len).sin().powi(2)
}

fn gaussian(x: f64, center: f64, width: f64) -> f64 {
    let z = (x - center) / width;
    (-0.5 * z * z).exp()
}

/// Builds `(u0, v0)` on `g`. Non-bound-state data vanish exactly at both
/// ends; data with more than 1e-8 of their mass near `x = L` are refused.
pub fn generate_initial_data(d: &InitialData, g: &Grid, p: &PhysParams, seed: u64) -> Result<InitialState> {
    if d.is_boundstate() {
        let (sstar, mustar) = match (d.sstar, d.mustar) {
            (Some(s), Some(m)) => (s, m),
            _ => return Err(Error::Config("bound-state data need sstar and mustar".into())),
        };
        let bp = solve_parameters(p.a, p.b, sstar, mustar)?;
        let (u, v) = assemble_bound_state(&bp, g, 0.0);
        return Ok(InitialState {
            u,
            v,
            boundstate: Some(bp),
        });
    }

    let len = g.length();
    let u_center = d.u_center.unwrap_or(0.5 * len);
    let u_width = d.u_width.unwrap_or(len / 20.0);
    let mut u = match d.u {
        UGenerator::Zero => ComplexField::zeros(g),
        UGenerator::Gaussian => ComplexField::from_fn(g, |x| {
            Complex64::from_polar(
                d.u_amplitude * gaussian(x, u_center, u_width) * mask(x, len),
                d.u_carrier * x,
            )
        }),
        UGenerator::SineMode => {
            let m = d.u_mode as f64;
            ComplexField::from_fn(g, |x| Complex64::new(d.u_amplitude * (m * PI * x / len).sin(), 0.0))
        }
        UGenerator::Boundstate => unreachable!(),
    };

    if d.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<(f64, f64)> = (0..NOISE_MODES)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for (j, z) in u.iter_mut().enumerate() {
            let x = g.x(j);
            let env = gaussian(x, u_center, u_width) * mask(x, len);
            let mut dz = Complex64::new(0.0, 0.0);
            for (m, &(re, im)) in coeffs.iter().enumerate() {
                let k = (m + 1) as f64;
                dz += Complex64::new(re, im) * ((k * PI * x / len).sin() / (k * k));
            }
            *z += d.noise * env * dz;
        }
    }

    let v_center = d.v_center.unwrap_or(u_center);
    let v_width = d.v_width.unwrap_or(u_width);
    let mut v = match d.v {
        VGenerator::Zero => RealField::zeros(g),
        VGenerator::Bump => RealField::from_fn(g, |x| d.v_amplitude * gaussian(x, v_center, v_width) * mask(x, len)),
        VGenerator::Slaved => RealField::new(u.iter().map(|z| d.v_ratio * z.norm_sqr()).collect()),
        VGenerator::Boundstate => unreachable!(),
    };

    let n = g.cells();
    u[0] = Complex64::new(0.0, 0.0);
    u[n] = Complex64::new(0.0, 0.0);
    v[0] = 0.0;
    v[n] = 0.0;

    let rho: Vec<f64> = u.iter().map(|z| z.norm_sqr()).collect();
    let v2: Vec<f64> = v.iter().map(|x| x * x).collect();
    for (name, density) in [("|u|^2", &rho), ("v^2", &v2)] {
        if name == "|u|^2" && d.u == UGenerator::SineMode {
            continue;
        }
        let frac = g.tail_fraction(density, WALL_BAND);
        if frac > WALL_THRESHOLD {
            return Err(Error::Config(format!(
                "initial data put {frac:.3e} of the {name} mass within {WALL_BAND} L of x = L \
                 (limit {WALL_THRESHOLD:e}); increase grid.L or move the data"
            )));
        }
    }
    if !(u.is_finite() && v.is_finite()) {
        return Err(Error::Config("initial data are not finite".into()));
    }
    Ok(InitialState { u, v, boundstate: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysParams {
        PhysParams::new(1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn zero_generator() {
        let g = Grid::new(10.0, 64).unwrap();
        let s = generate_initial_data(&InitialData::default(), &g, &params(), 0).unwrap();
        assert!(s.u.iter().all(|z| z.norm() == 0.0));
        assert!(s.v.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn masked_gaussian_vanishes_at_ends() {
        let g = Grid::new(40.0, 512).unwrap();
        let d = InitialData {
            u: UGenerator::Gaussian,
            v: VGenerator::Bump,
            v_amplitude: 0.5,
            ..Default::default()
        };
        let s = generate_initial_data(&d, &g, &params(), 0).unwrap();
        assert_eq!(s.u[0].norm(), 0.0);
        assert_eq!(s.u[512].norm(), 0.0);
        assert_eq!(s.v[0], 0.0);
        assert_eq!(s.v[512], 0.0);
        assert!((s.u[256].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn data_near_the_far_wall_are_refused() {
        let g = Grid::new(10.0, 256).unwrap();
        let d = InitialData {
            u: UGenerator::Gaussian,
            u_center: Some(9.0),
            u_width: Some(1.0),
            ..Default::default()
        };
        assert!(matches!(
            generate_initial_data(&d, &g, &params(), 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn seed_fixes_the_perturbation() {
        let g = Grid::new(40.0, 256).unwrap();
        let d = InitialData {
            u: UGenerator::Gaussian,
            noise: 0.1,
            ..Default::default()
        };
        let a = generate_initial_data(&d, &g, &params(), 7).unwrap();
        let b = generate_initial_data(&d, &g, &params(), 7).unwrap();
        let c = generate_initial_data(&d, &g, &params(), 8).unwrap();
        assert_eq!(a.u, b.u);
        assert_ne!(a.u, c.u);
    }

    #[test]
    fn boundstate_generator_matches_closed_form() {
        let g = Grid::new(40.0, 400).unwrap();
        let d = InitialData {
            u: UGenerator::Boundstate,
            v: VGenerator::Boundstate,
            sstar: Some(2.0),
            mustar: Some(1.0),
            ..Default::default()
        };
        let s = generate_initial_data(&d, &g, &params(), 0).unwrap();
        let bp = s.boundstate.unwrap();
        assert!((bp.alpha - 0.9428090416).abs() < 1e-9);
        assert!((s.v[0] - 1.0).abs() < 1e-15);
    }
}
