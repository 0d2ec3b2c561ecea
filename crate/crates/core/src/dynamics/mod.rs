//! Strang-split time integration of the coupled system and its viscous
//! regularization.

mod boundary;
mod schrodinger;
mod transport;

pub use boundary::{BoundaryData, Homogeneous};
pub use schrodinger::{free_step, rotate, schrodinger_step};
pub use transport::{nonlocal_speed, transport_step, DiffusionScheme, TransportEnds, TransportScheme};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::physics::PhysParams;

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub u: ComplexField,
    pub v: RealField,
    /// Set once any entry goes non-finite; never cleared.
    pub diverged: bool,
}

impl SimState {
    pub fn new(t: f64, u: ComplexField, v: RealField) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let diverged = !(u.is_finite() && v.is_finite());
        Ok(SimState { t, u, v, diverged })
    }

    pub fn zeros(grid: &Grid) -> Self {
        SimState {
            t: 0.0,
            u: ComplexField::zeros(grid),
            v: RealField::zeros(grid),
            diverged: false,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Inviscid,
    Viscous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub dt: f64,
    pub cfl_safety: f64,
    pub scheme: Scheme,
    pub transport: TransportScheme,
    pub diffusion: DiffusionScheme,
}

impl StepControl {
    pub fn new(dt: f64, cfl_safety: f64, scheme: Scheme) -> Result<Self> {
        let c = StepControl {
            dt,
            cfl_safety,
            scheme,
            transport: TransportScheme::default(),
            diffusion: DiffusionScheme::default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_transport(mut self, transport: TransportScheme) -> Self {
        self.transport = transport;
        self
    }

    pub fn with_diffusion(mut self, diffusion: DiffusionScheme) -> Self {
        self.diffusion = diffusion;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter("dt must be > 0".into()));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::InvalidParameter("cfl_safety must lie in (0, 1]".into()));
        }
        Ok(())
    }

    fn diffusion_for_step(&self) -> Option<DiffusionScheme> {
        match self.scheme {
            Scheme::Inviscid => None,
            Scheme::Viscous => Some(self.diffusion),
        }
    }
}

/// Largest stable step for the explicit transport: `safety * dx / max(c, dx)`.
pub fn cfl_dt(s: &SimState, p: &PhysParams, g: &Grid, safety: f64) -> f64 {
    cfl_dt_for_speed(nonlocal_speed(&s.v, p.a, g), g, safety)
}

pub fn cfl_dt_for_speed(speed: f64, g: &Grid, safety: f64) -> f64 {
    safety * g.dx() / speed.max(g.dx())
}

/// Advances states on one grid with fixed physics, scheme and boundary data.
pub struct Stepper<'a> {
    grid: Grid,
    params: PhysParams,
    control: StepControl,
    boundary: &'a dyn BoundaryData,
}

impl<'a> Stepper<'a> {
    pub fn new(grid: Grid, params: PhysParams, control: StepControl, boundary: &'a dyn BoundaryData) -> Self {
        Stepper {
            grid,
            params,
            control,
            boundary,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    pub fn control(&self) -> &StepControl {
        &self.control
    }

    pub fn boundary(&self) -> &dyn BoundaryData {
        self.boundary
    }

    /// Transport speed the next step will start from.
    pub fn speed(&self, s: &SimState) -> f64 {
        self.boundary
            .speed_override(s.t)
            .unwrap_or_else(|| nonlocal_speed(&s.v, self.params.a, &self.grid))
    }

    pub fn cfl_dt(&self, s: &SimState) -> f64 {
        cfl_dt_for_speed(self.speed(s), &self.grid, self.control.cfl_safety)
    }

    /// Half transport, full Schrödinger, half transport.
    pub fn step(&self, s: &SimState, dt: f64) -> Result<SimState> {
        if s.diverged {
            return Err(Error::Diverged);
        }
        if !s.is_finite() {
            let mut out = s.clone();
            out.diverged = true;
            return Ok(out);
        }
        let t0 = s.t;
        let t_mid = t0 + 0.5 * dt;
        let t1 = t0 + dt;
        let diffusion = self.control.diffusion_for_step();

        let half = |v: &RealField, u: &ComplexField, t_end: f64, t_start: f64| {
            let (left, right) = self.boundary.v_ends(t_end);
            transport::transport_step(
                v,
                u,
                &self.params,
                0.5 * dt,
                &self.grid,
                self.control.transport,
                diffusion,
                TransportEnds {
                    left,
                    right,
                    speed: self.boundary.speed_override(t_start),
                },
            )
        };

        let v_half = half(&s.v, &s.u, t_mid, t0)?;
        let u_new =
            schrodinger::schrodinger_step(&s.u, &v_half, &self.params, dt, &self.grid, self.boundary.u_ends(t1))?;
        let v_new = half(&v_half, &u_new, t1, t_mid)?;

        let mut out = SimState {
            t: t1,
            u: u_new,
            v: v_new,
            diverged: false,
        };
        out.diverged = !out.is_finite();
        Ok(out)
    }
}

/// One step of the homogeneous-boundary problem with `c.dt`.
pub fn step(s: &SimState, p: &PhysParams, c: &StepControl, g: &Grid) -> Result<SimState> {
    g.check_len(s.u.len())?;
    g.check_len(s.v.len())?;
    Stepper::new(*g, *p, *c, &Homogeneous).step(s, c.dt)
}
