//! Closed-form traveling waves `u = e^{i(ωt + kx)} r(x + st)`, `v = w(x + st)`.
//!
//! The profile `r` is the monotone kink `r∞ tanh(√(μ/2) ξ)` solving
//! `μ r + r'' = λ r³`, `r(0) = 0`, `r'(0) = μ/√(2λ)`, and the long wave is the
//! `sech²` pulse `w = (b/s*) r∞² sech²(√(μ/2) ξ)`. Parameters are fixed in the
//! order `(s*, μ*) → λ → α → s → ω`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::BoundaryData;
use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::stencil::{ddx_unchecked, laplacian_at};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundStateParams {
    pub a: f64,
    pub b: f64,
    pub mu: f64,
    pub lambda: f64,
    /// Effective speed `s* = aα + s`.
    pub s_star: f64,
    /// Frame speed; the profile moves towards the origin.
    pub s: f64,
    pub omega: f64,
    /// Carrier wavenumber, `-s/2`.
    pub k_wave: f64,
    /// Integration constant `bμ/λ`.
    pub c_const: f64,
    /// `∫ w²` over the half-line.
    pub alpha: f64,
    /// Plateau `√(μ/λ)`.
    pub r_inf: f64,
    /// Initial slope `μ/√(2λ)`.
    pub gamma: f64,
}

impl BoundStateParams {
    /// Decay rate `√(μ/2)` of the kink towards its plateau.
    pub fn kappa(&self) -> f64 {
        (0.5 * self.mu).sqrt()
    }

    fn phase(&self, x: f64, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.omega * t + self.k_wave * x)
    }

    /// Analytic `u(x, t)`.
    pub fn u_exact(&self, x: f64, t: f64) -> Complex64 {
        let (r, _) = kink_unchecked(self.r_inf, self.kappa(), x + self.s * t);
        self.phase(x, t) * r
    }

    /// Analytic `v(x, t)`.
    pub fn v_exact(&self, x: f64, t: f64) -> f64 {
        pulse_unchecked(self, x + self.s * t)
    }

    /// Analytic `u_t`.
    pub fn u_t_exact(&self, x: f64, t: f64) -> Complex64 {
        let (r, rp) = kink_unchecked(self.r_inf, self.kappa(), x + self.s * t);
        self.phase(x, t) * (Complex64::new(0.0, self.omega) * r + self.s * rp)
    }

    /// Analytic `v_t = s w'(x + st)`.
    pub fn v_t_exact(&self, x: f64, t: f64) -> f64 {
        let (r, rp) = kink_unchecked(self.r_inf, self.kappa(), x + self.s * t);
        self.s * (-self.b / self.s_star) * 2.0 * r * rp
    }
}

fn kink_unchecked(r_inf: f64, kappa: f64, x: f64) -> (f64, f64) {
    let th = (kappa * x).tanh();
    (r_inf * th, r_inf * kappa * (1.0 - th * th))
}

fn pulse_unchecked(bp: &BoundStateParams, xi: f64) -> f64 {
    let sech = 1.0 / (bp.kappa() * xi).cosh();
    bp.b / bp.s_star * bp.r_inf * bp.r_inf * sech * sech
}

/// `(r, r')` at `x` for the kink with coefficients `μ, λ > 0`.
pub fn kink(mu: f64, lambda: f64, x: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0 && lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kink needs mu > 0 and lambda > 0, got mu = {mu}, lambda = {lambda}"
        )));
    }
    Ok(kink_unchecked((mu / lambda).sqrt(), (0.5 * mu).sqrt(), x))
}

pub fn kink_profile(bp: &BoundStateParams, x: f64) -> Result<(f64, f64)> {
    kink(bp.mu, bp.lambda, x)
}

/// First integral `(r')² + μ r² − (λ/2) r⁴` of `μ r + r'' = λ r³`.
pub fn ode_energy(r: f64, rprime: f64, mu: f64, lambda: f64) -> f64 {
    rprime * rprime + mu * r * r - 0.5 * lambda * r.powi(4)
}

pub fn w_profile(bp: &BoundStateParams, x: f64) -> Result<f64> {
    if !(bp.s_star > 0.0) {
        return Err(Error::InvalidParameter(format!("s* must be > 0, got {}", bp.s_star)));
    }
    Ok(pulse_unchecked(bp, x))
}

/// `∫₀^∞ w² = (b/s*)² (μ/λ)² · 2/(3κ)`, `κ = √(μ/2)`.
pub fn alpha_integral(mu: f64, lambda: f64, b: f64, s_star: f64) -> Result<f64> {
    if !(mu > 0.0 && lambda > 0.0 && s_star > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha needs mu, lambda, s* > 0 (mu = {mu}, lambda = {lambda}, s* = {s_star})"
        )));
    }
    let kappa = (0.5 * mu).sqrt();
    let amp = b / s_star * mu / lambda;
    Ok(amp * amp * 2.0 / (3.0 * kappa))
}

/// Builds the full parameter set from the effective speed and `μ*`.
pub fn solve_parameters(a: f64, b: f64, s_star: f64, mu_star: f64) -> Result<BoundStateParams> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidParameter(format!("a must be >= 0, got {a}")));
    }
    if !b.is_finite() || b == 0.0 {
        return Err(Error::InvalidParameter("b must be nonzero".into()));
    }
    if !(mu_star.is_finite() && mu_star > 0.0) {
        return Err(Error::InvalidParameter(format!("mu* must be > 0, got {mu_star}")));
    }
    if !(s_star.is_finite() && s_star > b * b) {
        return Err(Error::InvalidParameter(format!(
            "lambda = 1 - b^2/s* = {} must be > 0 (need s* > b^2 = {}, got s* = {s_star})",
            1.0 - b * b / s_star,
            b * b
        )));
    }
    let lambda = 1.0 - b * b / s_star;
    let alpha = alpha_integral(mu_star, lambda, b, s_star)?;
    let s = s_star - a * alpha;
    if s < 0.0 {
        return Err(Error::Inadmissible(format!(
            "frame speed s = s* - a*alpha = {s} is negative (s* = {s_star}, a*alpha = {})",
            a * alpha
        )));
    }
    if s == 0.0 {
        log::warn!("frame speed s = 0: standing wave, not covered by the moving-frame checks");
    }
    let c_const = b * mu_star / lambda;
    let omega = -mu_star - 0.25 * s * s - b * c_const / s_star;
    Ok(BoundStateParams {
        a,
        b,
        mu: mu_star,
        lambda,
        s_star,
        s,
        omega,
        k_wave: -0.5 * s,
        c_const,
        alpha,
        r_inf: (mu_star / lambda).sqrt(),
        gamma: mu_star / (2.0 * lambda).sqrt(),
    })
}

/// Samples the traveling wave at time `t`.
pub fn assemble_bound_state(bp: &BoundStateParams, g: &Grid, t: f64) -> (ComplexField, RealField) {
    (
        ComplexField::from_fn(g, |x| bp.u_exact(x, t)),
        RealField::from_fn(g, |x| bp.v_exact(x, t)),
    )
}

/// Max-norm residuals of both evolution equations at interior nodes, with
/// analytic time derivatives and discrete space derivatives. The transport
/// speed is the construction's `aα`.
pub fn pde_residual(bp: &BoundStateParams, g: &Grid, t: f64) -> (f64, f64) {
    let (u, v) = assemble_bound_state(bp, g, t);
    field_residual(bp, g, t, &u, &v).expect("assembled fields match the grid")
}

/// Same residual for sampled fields, e.g. a reloaded snapshot.
pub fn field_residual(bp: &BoundStateParams, g: &Grid, t: f64, u: &ComplexField, v: &RealField) -> Result<(f64, f64)> {
    g.check_len(u.len())?;
    g.check_len(v.len())?;
    let dx = g.dx();
    let inv_dx2 = 1.0 / (dx * dx);
    let rho: Vec<f64> = u.iter().map(|z| z.norm_sqr()).collect();
    let vx = ddx_unchecked(v, dx);
    let rhox = ddx_unchecked(&rho, dx);
    let speed = bp.a * bp.alpha;
    let i = Complex64::new(0.0, 1.0);

    let mut res_u: f64 = 0.0;
    let mut res_v: f64 = 0.0;
    for j in 1..g.cells() {
        let x = g.x(j);
        let lhs = i * bp.u_t_exact(x, t) + laplacian_at(u, j, inv_dx2);
        let rhs = u[j] * (rho[j] + bp.b * v[j]);
        res_u = res_u.max((lhs - rhs).norm());
        res_v = res_v.max((bp.v_t_exact(x, t) + speed * vx[j] + bp.b * rhox[j]).abs());
    }
    Ok((res_u, res_v))
}

/// Exact end values of a traveling wave, for tracking runs.
#[derive(Debug, Clone, Copy)]
pub struct TravelingWave {
    pub params: BoundStateParams,
    pub length: f64,
}

impl BoundaryData for TravelingWave {
    fn u_ends(&self, t: f64) -> (Complex64, Complex64) {
        (self.params.u_exact(0.0, t), self.params.u_exact(self.length, t))
    }

    fn v_ends(&self, t: f64) -> (f64, f64) {
        (self.params.v_exact(0.0, t), self.params.v_exact(self.length, t))
    }

    /// The half-line integral of `v²` loses the part of the pulse that has
    /// left through `x = 0`; the wave itself moves with `aα`.
    fn speed_override(&self, _t: f64) -> Option<f64> {
        Some(self.params.a * self.params.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub x: f64,
    pub r: f64,
    pub r_prime: f64,
    pub w: f64,
}

pub fn profile_table(bp: &BoundStateParams, g: &Grid) -> Vec<ProfileRow> {
    g.coordinates()
        .map(|x| {
            let (r, r_prime) = kink_unchecked(bp.r_inf, bp.kappa(), x);
            ProfileRow {
                x,
                r,
                r_prime,
                w: pulse_unchecked(bp, x),
            }
        })
        .collect()
}
