use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform sample points `x_min = x_0 < … < x_{count-1} = x_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    count: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, count: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("bounds must be finite, got [{x_min}, {x_max}]")));
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid(format!("need x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {count}")));
        }
        Ok(Self { x_min, x_max, count })
    }

    /// 2001 points on `[-6, 6]`, the grid used for identity residuals.
    pub fn default_residual() -> Self {
        Self { x_min: -6.0, x_max: 6.0, count: 2001 }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.count - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        if i + 1 == self.count {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.x(i))
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }
}
