//! Periodic one-dimensional grids and their conjugate frequency ladders.

use crate::error::{KvnError, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A uniform periodic grid on one axis.
///
/// Points are `origin + j * length / n` for `j in 0..n`, with wrap-around at
/// `origin + length`. Units are dimensionless (hbar = 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n: usize,
    origin: f64,
    length: f64,
    label: String,
}

impl Grid1D {
    /// Build a grid; `n` must be a power of two and at least 2.
    pub fn new(n: usize, origin: f64, length: f64, label: impl Into<String>) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(KvnError::Parameter(format!(
                "grid point count {n} must be a power of two >= 2"
            )));
        }
        if !(length > 0.0) || !length.is_finite() || !origin.is_finite() {
            return Err(KvnError::Parameter(format!(
                "grid domain [{origin}, {origin}+{length}) must be finite with positive length"
            )));
        }
        Ok(Self {
            n,
            origin,
            length,
            label: label.into(),
        })
    }

    /// Symmetric grid on `[-half, half)`.
    pub fn symmetric(n: usize, half: f64, label: impl Into<String>) -> Result<Self> {
        Self::new(n, -half, 2.0 * half, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Grid spacing `length / n`.
    pub fn step(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Coordinate of point `j`.
    pub fn point(&self, j: usize) -> f64 {
        self.origin + j as f64 * self.step()
    }

    /// All coordinates in index order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Conjugate frequency of DFT bin `m`, on the standard signed ladder
    /// `{0, 1, ..., n/2 - 1, -n/2, ..., -1} * (2 pi / length)`.
    pub fn frequency(&self, m: usize) -> f64 {
        let half = self.n / 2;
        let signed = if m < half {
            m as isize
        } else {
            m as isize - self.n as isize
        };
        2.0 * PI * signed as f64 / self.length
    }

    /// All frequencies in bin order.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n).map(|m| self.frequency(m)).collect()
    }

    /// True when the value is one of the grid's admissible frequencies
    /// (within floating-point slack).
    pub fn is_admissible_frequency(&self, kappa: f64) -> bool {
        let unit = 2.0 * PI / self.length;
        let m = (kappa / unit).round();
        let half = self.n as f64 / 2.0;
        (kappa - m * unit).abs() < 1e-12 * unit.max(1.0) && (-half..half).contains(&m)
    }
}
