//! Scaled particle-in-a-box basis.
//!
//! On a window `[a, b]` the n-th basis function is
//! `φₙ(x) = sqrt(2/(b-a)) · sin(nπ(x-a)/(b-a))`, `n = 1, 2, …`, and zero
//! outside the window. The kinetic operator `-d²/dx²` is diagonal in this
//! basis with entries `(nπ/(b-a))²`.

use alloc::format;
use core::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Interval `[a, b]` together with the number of basis functions on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisWindow {
    a: f64,
    b: f64,
    size: usize,
}

impl BasisWindow {
    pub fn new(a: f64, b: f64, size: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(domain(format!("window endpoints must be finite, got [{a}, {b}]")));
        }
        if a >= b {
            return Err(domain(format!("window requires a < b, got [{a}, {b}]")));
        }
        if size == 0 {
            return Err(domain("basis size must be at least 1"));
        }
        Ok(Self { a, b, size })
    }

    /// The window `[-L, L]`.
    pub fn symmetric(half_width: f64, size: usize) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(domain(format!("half-width must be positive, got {half_width}")));
        }
        Self::new(-half_width, half_width, size)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == -self.b
    }

    pub fn with_size(&self, size: usize) -> Result<Self> {
        Self::new(self.a, self.b, size)
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.size {
            return Err(Error::Index {
                index: n,
                size: self.size,
            });
        }
        Ok(())
    }

    /// `φₙ(x)`, 1-based.
    pub fn function(&self, n: usize, x: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.eval_unchecked(n, x))
    }

    pub(crate) fn eval_unchecked(&self, n: usize, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let chi = (x - self.a) / self.width();
        libm::sqrt(2.0 / self.width()) * libm::sin(n as f64 * PI * chi)
    }

    /// `(φₙ, -φₙ'')`, the n-th diagonal entry of the kinetic matrix.
    pub fn kinetic_diagonal(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.kinetic_unchecked(n))
    }

    pub(crate) fn kinetic_unchecked(&self, n: usize) -> f64 {
        let k = n as f64 * PI / self.width();
        k * k
    }
}

pub fn basis_function(n: usize, window: &BasisWindow, x: f64) -> Result<f64> {
    window.function(n, x)
}

pub fn kinetic_diagonal(n: usize, window: &BasisWindow) -> Result<f64> {
    window.kinetic_diagonal(n)
}

pub fn symmetric_window(half_width: f64, size: usize) -> Result<BasisWindow> {
    BasisWindow::symmetric(half_width, size)
}
