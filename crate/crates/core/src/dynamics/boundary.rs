use num_complex::Complex64;

/// End values imposed on the fields after every substep.
///
/// Evolution runs use [`Homogeneous`]; analytic-solution tests supply the
/// exact end values of the solution they track.
pub trait BoundaryData: Send + Sync {
    /// `u` at `x = 0` and `x = L`.
    fn u_ends(&self, t: f64) -> (Complex64, Complex64);

    /// `v` at `x = 0` and `x = L`.
    fn v_ends(&self, t: f64) -> (f64, f64);

    /// Transport speed to use instead of `a * ∫v²` over the grid, when the
    /// tracked solution carries part of its long wave outside `[0, L]`.
    fn speed_override(&self, _t: f64) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Homogeneous;

impl BoundaryData for Homogeneous {
    fn u_ends(&self, _t: f64) -> (Complex64, Complex64) {
        (Complex64::default(), Complex64::default())
    }

    fn v_ends(&self, _t: f64) -> (f64, f64) {
        (0.0, 0.0)
    }
}
