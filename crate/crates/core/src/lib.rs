//! Simulation and verification toolkit for the nonlocal quasilinear Benney
//! system on the half-line,
//!
//! ```text
//! i u_t + u_xx = |u|^2 u + b u v
//! v_t + a (∫ v^2 dx) v_x = -b (|u|^2)_x + ε v_xx
//! ```
//!
//! with `u(0,t) = v(0,t) = 0` and decay at infinity.

// `!(x > 0.0)` is how validation rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundstate;
pub mod cli;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod field;
pub mod grid;
pub mod io;
pub mod physics;
pub mod stencil;
pub mod tridiag;

pub use error::{Error, Result};
pub use field::{ComplexField, RealField};
pub use grid::{integrate, make_grid, Grid};
pub use physics::PhysParams;
