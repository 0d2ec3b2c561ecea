//! Every spatial integral the invariants, ledgers and moment identities need,
//! evaluated in one pass over a state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::physics::PhysParams;
use crate::stencil::ddx_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Integrals {
    /// ∫|u|²
    pub mass: f64,
    /// ∫|u_x|²
    pub ux2: f64,
    /// ∫|u|⁴
    pub u4: f64,
    /// ∫v|u|²
    pub uv: f64,
    /// ∫v²
    pub v2: f64,
    /// ∫v_x²
    pub vx2: f64,
    /// ∫v_x (|u|²)_x
    pub vx_rhox: f64,
    /// Im ∫u ū_x
    pub im_uux: f64,
    /// ∫x²|u|²
    pub i2: f64,
    /// ∫x v²
    pub j: f64,
    /// ∫x|u|²
    pub k: f64,
    pub max_u: f64,
    pub max_v: f64,
}

impl Integrals {
    pub fn compute(u: &ComplexField, v: &RealField, g: &Grid) -> Result<Self> {
        g.check_len(u.len())?;
        g.check_len(v.len())?;
        let dx = g.dx();
        let ux = ddx_unchecked(u, dx);
        let vx = ddx_unchecked(v, dx);
        let rho: Vec<f64> = u.iter().map(Complex64::norm_sqr).collect();
        let rhox = ddx_unchecked(&rho, dx);
        let xs: Vec<f64> = g.coordinates().collect();
        let q = |f: &dyn Fn(usize) -> f64| g.integrate_unchecked((0..g.nodes()).map(f));

        Ok(Integrals {
            mass: q(&|j| rho[j]),
            ux2: q(&|j| ux[j].norm_sqr()),
            u4: q(&|j| rho[j] * rho[j]),
            uv: q(&|j| v[j] * rho[j]),
            v2: q(&|j| v[j] * v[j]),
            vx2: q(&|j| vx[j] * vx[j]),
            vx_rhox: q(&|j| vx[j] * rhox[j]),
            im_uux: q(&|j| (u[j] * ux[j].conj()).im),
            i2: q(&|j| xs[j] * xs[j] * rho[j]),
            j: q(&|j| xs[j] * v[j] * v[j]),
            k: q(&|j| xs[j] * rho[j]),
            max_u: u.max_abs(),
            max_v: v.max_abs(),
        })
    }

    /// ½∫|u_x|² + ¼∫|u|⁴ + (b/2)∫v|u|² + (a/8)(∫v²)²
    pub fn energy(&self, p: &PhysParams) -> f64 {
        0.5 * self.ux2 + 0.25 * self.u4 + 0.5 * p.b * self.uv + 0.125 * p.a * self.v2 * self.v2
    }

    /// ∫v² − 2 Im∫u ū_x
    pub fn momentum(&self) -> f64 {
        self.v2 - 2.0 * self.im_uux
    }

    /// Instantaneous rate of the viscous energy ledger.
    pub fn energy_dissipation(&self, p: &PhysParams) -> f64 {
        p.epsilon * (0.5 * p.b * self.vx_rhox + 0.5 * p.a * self.v2 * self.vx2)
    }

    /// Instantaneous rate of the viscous momentum ledger.
    pub fn momentum_dissipation(&self, p: &PhysParams) -> f64 {
        2.0 * p.epsilon * self.vx2
    }

    pub fn is_finite(&self) -> bool {
        [
            self.mass,
            self.ux2,
            self.u4,
            self.uv,
            self.v2,
            self.vx2,
            self.vx_rhox,
            self.im_uux,
            self.i2,
            self.j,
            self.k,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// ∫|u|²
pub fn mass(u: &ComplexField, g: &Grid) -> Result<f64> {
    g.check_len(u.len())?;
    Ok(g.integrate_unchecked(u.iter().map(Complex64::norm_sqr)))
}

pub fn energy(u: &ComplexField, v: &RealField, p: &PhysParams, g: &Grid) -> Result<f64> {
    Ok(Integrals::compute(u, v, g)?.energy(p))
}

pub fn momentum(u: &ComplexField, v: &RealField, g: &Grid) -> Result<f64> {
    Ok(Integrals::compute(u, v, g)?.momentum())
}
