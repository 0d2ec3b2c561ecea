//! Thomas algorithm for constant-coefficient tridiagonal systems.

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::ops::{Div, Mul, Sub};

use crate::error::{Error, Result};

pub trait Scalar: Copy + Zero + One + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Solves `lower*x[i-1] + diag*x[i] + upper*x[i+1] = rhs[i]` in place.
///
/// Coefficients are the same on every row; first/last rows drop the missing
/// neighbour.
pub fn solve_constant<T: Scalar>(lower: T, diag: T, upper: T, rhs: &mut [T]) -> Result<()> {
    let n = rhs.len();
    if n == 0 {
        return Ok(());
    }
    let tiny = 1e-300;
    let mut c = vec![T::zero(); n];
    let mut denom = diag;
    if denom.magnitude() < tiny {
        return Err(Error::SingularSystem { row: 0 });
    }
    c[0] = upper / denom;
    rhs[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag - lower * c[i - 1];
        if denom.magnitude() < tiny {
            return Err(Error::SingularSystem { row: i });
        }
        c[i] = upper / denom;
        rhs[i] = (rhs[i] - lower * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        rhs[i] = rhs[i] - c[i] * rhs[i + 1];
    }
    Ok(())
}
