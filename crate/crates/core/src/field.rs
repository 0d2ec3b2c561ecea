//! Nodal field containers for the short wave `u` (complex) and long wave `v` (real).

use std::ops::{Deref, DerefMut};

use num_complex::Complex64;

use crate::grid::Grid;

macro_rules! nodal_field {
    ($name:ident, $elem:ty) => {
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name(Vec<$elem>);

        impl $name {
            pub fn new(values: Vec<$elem>) -> Self {
                $name(values)
            }

            pub fn zeros(grid: &Grid) -> Self {
                $name(vec![<$elem>::default(); grid.nodes()])
            }

            pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> $elem) -> Self {
                $name(grid.coordinates().map(f).collect())
            }

            pub fn into_inner(self) -> Vec<$elem> {
                self.0
            }
        }

        impl Deref for $name {
            type Target = [$elem];
            fn deref(&self) -> &[$elem] {
                &self.0
            }
        }

        impl DerefMut for $name {
            fn deref_mut(&mut self) -> &mut [$elem] {
                &mut self.0
            }
        }

        impl From<Vec<$elem>> for $name {
            fn from(values: Vec<$elem>) -> Self {
                $name(values)
            }
        }
    };
}

nodal_field!(RealField, f64);
nodal_field!(ComplexField, Complex64);

impl RealField {
    pub fn is_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl ComplexField {
    pub fn is_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Pointwise `|u|^2`.
    pub fn density(&self) -> RealField {
        RealField(self.iter().map(|z| z.norm_sqr()).collect())
    }
}
