//! Second-order finite-difference stencils on a uniform grid.

use std::ops::{Add, Mul, Sub};

use crate::error::Result;
use crate::grid::Grid;

/// Values a stencil can act on (real or complex samples).
pub trait Sample: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Sample for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// First derivative: centered in the interior, one-sided second-order at both ends.
pub fn ddx<T: Sample>(f: &[T], g: &Grid) -> Result<Vec<T>> {
    g.check_len(f.len())?;
    Ok(ddx_unchecked(f, g.dx()))
}

pub(crate) fn ddx_unchecked<T: Sample>(f: &[T], dx: f64) -> Vec<T> {
    let n = f.len() - 1;
    let half = 0.5 / dx;
    let mut out = Vec::with_capacity(f.len());
    out.push((f[1] * 4.0 - f[0] * 3.0 - f[2]) * half);
    for j in 1..n {
        out.push((f[j + 1] - f[j - 1]) * half);
    }
    out.push((f[n] * 3.0 - f[n - 1] * 4.0 + f[n - 2]) * half);
    out
}

/// Three-point second difference at interior node `j`.
#[inline]
pub(crate) fn laplacian_at<T: Sample>(f: &[T], j: usize, inv_dx2: f64) -> T {
    (f[j + 1] - f[j] * 2.0 + f[j - 1]) * inv_dx2
}
