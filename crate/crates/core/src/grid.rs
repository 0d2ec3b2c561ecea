//! Uniform truncation of the half-line to `[0, L]` and trapezoid quadrature.

use crate::error::{Error, Result};

/// Smallest admissible number of cells.
pub const MIN_CELLS: usize = 8;

/// Uniform grid with `cells + 1` nodes `x_j = j * dx`, `x_0 = 0`, `x_N = L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    length: f64,
    cells: usize,
    dx: f64,
}

impl Grid {
    pub fn new(length: f64, cells: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "length must be positive and finite, got {length}"
            )));
        }
        if cells < MIN_CELLS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_CELLS} cells, got {cells}"
            )));
        }
        Ok(Grid {
            length,
            cells,
            dx: length / cells as f64,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn nodes(&self) -> usize {
        self.cells + 1
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Coordinate of node `j`; the last node is pinned to `L` exactly.
    pub fn x(&self, j: usize) -> f64 {
        if j == self.cells {
            self.length
        } else {
            j as f64 * self.dx
        }
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.nodes()).map(move |j| self.x(j))
    }

    /// Trapezoid weight of node `j`.
    pub fn weight(&self, j: usize) -> f64 {
        if j == 0 || j == self.cells {
            0.5 * self.dx
        } else {
            self.dx
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.nodes()).map(|j| self.weight(j)).collect()
    }

    /// Same domain with twice as many cells; coarse node `j` is fine node `2j`.
    pub fn refined(&self) -> Grid {
        Grid {
            length: self.length,
            cells: 2 * self.cells,
            dx: self.length / (2 * self.cells) as f64,
        }
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.nodes() {
            return Err(Error::LengthMismatch {
                expected: self.nodes(),
                found: len,
            });
        }
        Ok(())
    }

    /// Trapezoid rule over nodal samples.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        self.check_len(values.len())?;
        Ok(self.integrate_unchecked(values.iter().copied()))
    }

    /// Trapezoid rule over a lazily evaluated integrand (`nodes()` items).
    pub(crate) fn integrate_unchecked(&self, values: impl Iterator<Item = f64>) -> f64 {
        let last = self.cells;
        let mut interior = 0.0;
        let mut ends = 0.0;
        for (j, f) in values.enumerate() {
            if j == 0 || j == last {
                ends += f;
            } else {
                interior += f;
            }
        }
        self.dx * (interior + 0.5 * ends)
    }

    /// Fraction of `∫ density` carried by the nodes with `x >= (1 - frac) L`.
    pub(crate) fn tail_fraction(&self, density: &[f64], frac: f64) -> f64 {
        let total = self.integrate_unchecked(density.iter().copied());
        if total <= 0.0 {
            return 0.0;
        }
        let cut = (1.0 - frac) * self.length;
        let tail = self.integrate_unchecked(
            density
                .iter()
                .enumerate()
                .map(|(j, &d)| if self.x(j) >= cut { d } else { 0.0 }),
        );
        tail / total
    }

    /// Fraction of `∫ density` carried by the nodes with `x <= frac L`.
    pub(crate) fn head_fraction(&self, density: &[f64], frac: f64) -> f64 {
        let total = self.integrate_unchecked(density.iter().copied());
        if total <= 0.0 {
            return 0.0;
        }
        let cut = frac * self.length;
        let head = self.integrate_unchecked(
            density
                .iter()
                .enumerate()
                .map(|(j, &d)| if self.x(j) <= cut { d } else { 0.0 }),
        );
        head / total
    }
}

/// Free-function form of [`Grid::new`].
pub fn make_grid(length: f64, cells: usize) -> Result<Grid> {
    Grid::new(length, cells)
}

/// Trapezoid quadrature of a real field over `[0, L]`.
pub fn integrate(f: &crate::field::RealField, g: &Grid) -> Result<f64> {
    g.integrate(f)
}
