//! Weighted moments, the virial functional φ and its second-derivative bound.

use serde::{Deserialize, Serialize};

use super::integrals::Integrals;
use crate::dynamics::SimState;
use crate::error::Result;
use crate::grid::Grid;
use crate::physics::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VirialRecord {
    pub t: f64,
    /// ∫x²|u|²
    pub i2: f64,
    /// ∫x v²
    pub j: f64,
    /// ∫x|u|²
    pub k: f64,
    /// ½ I2 + ∫₀ᵗ J + b² ∫₀ᵗ K
    pub phi: f64,
    /// 8E(0) + b²M(0)
    pub rhs_bound: f64,
}

/// `(I2, J, K)` of a state.
pub fn virial_moments(s: &SimState, g: &Grid) -> Result<(f64, f64, f64)> {
    let i = Integrals::compute(&s.u, &s.v, g)?;
    Ok((i.i2, i.j, i.k))
}

/// `8E0 − ∫|u|⁴ − 2b∫|u|²v − b²∫v² + b²M0`, the exact value of φ'' when the
/// invariants are conserved.
pub fn virial_rhs(i: &Integrals, p: &PhysParams, e0: f64, m0: f64) -> f64 {
    let b2 = p.b * p.b;
    8.0 * e0 - i.u4 - 2.0 * p.b * i.uv - b2 * i.v2 + b2 * m0
}

/// `8E0 + b²M0 < 0`: the initial data admit no global solution.
pub fn blowup_criterion(e0: f64, m0: f64, b: f64) -> bool {
    criterion_value(e0, m0, b) < 0.0
}

pub fn criterion_value(e0: f64, m0: f64, b: f64) -> f64 {
    8.0 * e0 + b * b * m0
}

/// Accumulates φ from sampled moments (trapezoid in time).
#[derive(Debug, Clone)]
pub struct VirialTracker {
    b: f64,
    rhs_bound: f64,
    last: Option<(f64, f64, f64)>,
    int_j: f64,
    int_k: f64,
}

impl VirialTracker {
    pub fn new(b: f64, e0: f64, m0: f64) -> Self {
        VirialTracker {
            b,
            rhs_bound: criterion_value(e0, m0, b),
            last: None,
            int_j: 0.0,
            int_k: 0.0,
        }
    }

    pub fn record(&mut self, t: f64, i: &Integrals) -> VirialRecord {
        if let Some((t_prev, j_prev, k_prev)) = self.last {
            let h = t - t_prev;
            self.int_j += 0.5 * h * (j_prev + i.j);
            self.int_k += 0.5 * h * (k_prev + i.k);
        }
        self.last = Some((t, i.j, i.k));
        VirialRecord {
            t,
            i2: i.i2,
            j: i.j,
            k: i.k,
            phi: 0.5 * i.i2 + self.int_j + self.b * self.b * self.int_k,
            rhs_bound: self.rhs_bound,
        }
    }
}

fn uniform_window(t: &[f64], center: usize) -> Option<f64> {
    let h = t[center + 1] - t[center];
    let ok = (center - 2..center + 2).all(|i| {
        let hi = t[i + 1] - t[i];
        (hi - h).abs() <= 1e-9 * h.abs().max(f64::MIN_POSITIVE)
    });
    (ok && h > 0.0).then_some(h)
}

/// Fourth-order 5-point second derivative at every interior sample whose
/// window is uniformly spaced. Returns `(center index, f'')`.
pub fn second_derivative_5pt(t: &[f64], f: &[f64]) -> Vec<(usize, f64)> {
    (2..t.len().saturating_sub(2))
        .filter_map(|c| {
            let h = uniform_window(t, c)?;
            let d = (-f[c - 2] + 16.0 * f[c - 1] - 30.0 * f[c] + 16.0 * f[c + 1] - f[c + 2]) / (12.0 * h * h);
            Some((c, d))
        })
        .collect()
}

/// Fourth-order 5-point first derivative, same windowing as
/// [`second_derivative_5pt`].
pub fn first_derivative_5pt(t: &[f64], f: &[f64]) -> Vec<(usize, f64)> {
    (2..t.len().saturating_sub(2))
        .filter_map(|c| {
            let h = uniform_window(t, c)?;
            let d = (f[c - 2] - 8.0 * f[c - 1] + 8.0 * f[c + 1] - f[c + 2]) / (12.0 * h);
            Some((c, d))
        })
        .collect()
}

/// What the virial checks need at one sample time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirialSample {
    pub t: f64,
    pub phi: f64,
    pub k: f64,
    pub u4: f64,
    pub uv: f64,
    pub v2: f64,
    pub ux2: f64,
    pub flags: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VirialCheck {
    /// Number of stencil centers with all five samples valid.
    pub points: usize,
    /// 8E(0) + b²M(0)
    pub bound: f64,
    /// Tolerance applied, `10 (dt² + dx²) scale`.
    pub tol: f64,
    /// Magnitude of the terms balanced in φ''.
    pub scale: f64,
    /// max(φ'' − bound); ≤ tol when the inequality holds.
    pub max_excess: f64,
    /// max |φ'' − (8E0 − ∫|u|⁴ − 2b∫|u|²v − b²∫v² + b²M0)|
    pub max_identity_mismatch: f64,
    /// max |dK/dt − (M0 − ∫v²)|
    pub max_first_moment_mismatch: f64,
}

impl VirialCheck {
    pub fn inequality_holds(&self) -> bool {
        self.max_excess <= self.tol
    }

    pub fn identity_holds(&self) -> bool {
        self.max_identity_mismatch <= self.tol
    }

    pub fn first_moment_holds(&self) -> bool {
        self.max_first_moment_mismatch <= self.tol
    }
}

/// Compares finite differences of φ and K with their closed forms along a
/// sampled run, skipping stencils that touch a sample with any validity flag.
pub fn check_virial(samples: &[VirialSample], p: &PhysParams, e0: f64, m0: f64, dt: f64, dx: f64) -> VirialCheck {
    let t: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let phi: Vec<f64> = samples.iter().map(|s| s.phi).collect();
    let k: Vec<f64> = samples.iter().map(|s| s.k).collect();
    let b2 = p.b * p.b;
    let bound = criterion_value(e0, m0, p.b);
    let scale = samples
        .iter()
        .map(|s| 4.0 * s.ux2 + s.u4 + 2.0 * (p.b * s.uv).abs() + p.a * s.v2 * s.v2 + b2 * s.v2 + b2 * m0.abs())
        .fold(8.0 * e0.abs(), f64::max)
        .max(1.0);
    let tol = 10.0 * (dt * dt + dx * dx) * scale;
    let valid = |c: usize| (c - 2..=c + 2).all(|i| samples[i].flags == 0);

    let mut out = VirialCheck {
        bound,
        tol,
        scale,
        max_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    for (c, d2) in second_derivative_5pt(&t, &phi) {
        if !valid(c) {
            continue;
        }
        let s = &samples[c];
        let exact = 8.0 * e0 - s.u4 - 2.0 * p.b * s.uv - b2 * s.v2 + b2 * m0;
        out.points += 1;
        out.max_excess = out.max_excess.max(d2 - bound);
        out.max_identity_mismatch = out.max_identity_mismatch.max((d2 - exact).abs());
    }
    for (c, d1) in first_derivative_5pt(&t, &k) {
        if !valid(c) {
            continue;
        }
        let expected = m0 - samples[c].v2;
        out.max_first_moment_mismatch = out.max_first_moment_mismatch.max((d1 - expected).abs());
    }
    out
}
