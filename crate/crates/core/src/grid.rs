//! Uniform one-dimensional grids and complex-valued samples on them.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A uniform grid x_i = x0 + i dx, i = 0..len-1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub dx: f64,
    pub len: usize,
}

impl GridSpec {
    pub fn new(x0: f64, dx: f64, len: usize) -> Result<Self> {
        if !x0.is_finite() || !dx.is_finite() || dx <= 0.0 {
            return Err(Error::InvalidParameter(
                "grid needs finite x0 and dx > 0".into(),
            ));
        }
        if len < 2 {
            return Err(Error::InvalidParameter(
                "grid needs at least 2 points".into(),
            ));
        }
        Ok(Self { x0, dx, len })
    }

    /// Grid of `len` points spanning [-half_width, half_width].
    pub fn symmetric(half_width: f64, len: usize) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::InvalidParameter("half_width must be > 0".into()));
        }
        let dx = 2.0 * half_width / (len.saturating_sub(1)).max(1) as f64;
        Self::new(-half_width, dx, len)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.x(i))
    }
}

/// Complex samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len {
            return Err(Error::InvalidParameter(format!(
                "grid has {} points but {} values were supplied",
                grid.len,
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.grid.x(i), *v))
    }

    /// Largest |value| on the grid.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}
