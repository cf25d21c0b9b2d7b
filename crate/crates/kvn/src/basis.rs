//! Orthonormal mode families on a quantum grid.
//!
//! Modes are sampled analytic profiles re-orthonormalized by modified
//! Gram-Schmidt against the grid measure, which removes the residual
//! non-orthogonality introduced by sampling.

use crate::error::{KvnError, Result};
use crate::grid::Grid1D;
use crate::util::pairwise_sum_c64_by;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct ModeBasis {
    grid: Grid1D,
    modes: Vec<Vec<Complex64>>,
}

impl ModeBasis {
    /// First `count` harmonic-oscillator eigenfunctions (unit mass and
    /// frequency) sampled on the grid, then re-orthonormalized.
    pub fn harmonic(grid: Grid1D, count: usize) -> Result<Self> {
        if count == 0 || count > grid.n() {
            return Err(KvnError::Parameter(format!(
                "mode count {count} out of range for grid of {}",
                grid.n()
            )));
        }
        let pts = grid.points();
        let mut modes: Vec<Vec<f64>> = Vec::with_capacity(count);
        // h_0 = pi^{-1/4} exp(-q^2/2); h_{n+1} via the stable recurrence
        // h_{n+1} = sqrt(2/(n+1)) q h_n - sqrt(n/(n+1)) h_{n-1}.
        let h0: Vec<f64> = pts
            .iter()
            .map(|&q| (-q * q / 2.0).exp() * std::f64::consts::PI.powf(-0.25))
            .collect();
        modes.push(h0);
        if count > 1 {
            let h1: Vec<f64> = pts
                .iter()
                .zip(&modes[0])
                .map(|(&q, &h)| std::f64::consts::SQRT_2 * q * h)
                .collect();
            modes.push(h1);
        }
        for n in 1..count.saturating_sub(1) {
            let a = (2.0 / (n as f64 + 1.0)).sqrt();
            let b = (n as f64 / (n as f64 + 1.0)).sqrt();
            let next: Vec<f64> = (0..pts.len())
                .map(|j| a * pts[j] * modes[n][j] - b * modes[n - 1][j])
                .collect();
            modes.push(next);
        }
        let complex_modes = modes
            .into_iter()
            .map(|m| m.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
            .collect();
        Self::orthonormalized(grid, complex_modes)
    }

    /// Gaussian packets of the given amplitude width at the given centers,
    /// re-orthonormalized in center order.
    pub fn gaussian_packets(grid: Grid1D, centers: &[f64], width: f64) -> Result<Self> {
        if centers.is_empty() {
            return Err(KvnError::Parameter("no packet centers".into()));
        }
        if !(width > 0.0) {
            return Err(KvnError::Parameter("packet width must be positive".into()));
        }
        let pts = grid.points();
        let modes = centers
            .iter()
            .map(|&c| {
                pts.iter()
                    .map(|&q| {
                        Complex64::new((-(q - c).powi(2) / (2.0 * width * width)).exp(), 0.0)
                    })
                    .collect()
            })
            .collect();
        Self::orthonormalized(grid, modes)
    }

    fn orthonormalized(grid: Grid1D, raw: Vec<Vec<Complex64>>) -> Result<Self> {
        let dq = grid.step();
        let mut modes: Vec<Vec<Complex64>> = Vec::with_capacity(raw.len());
        for mut m in raw {
            for done in &modes {
                let proj = pairwise_sum_c64_by(m.len(), &|i| done[i].conj() * m[i]) * dq;
                for i in 0..m.len() {
                    let c = proj * done[i];
                    m[i] -= c;
                }
            }
            let nrm = (pairwise_sum_c64_by(m.len(), &|i| Complex64::new(m[i].norm_sqr(), 0.0))
                .re
                * dq)
                .sqrt();
            if nrm < 1e-12 {
                return Err(KvnError::Domain(
                    "mode family is numerically degenerate on this grid".into(),
                ));
            }
            for z in &mut m {
                *z /= nrm;
            }
            modes.push(m);
        }
        Ok(Self { grid, modes })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn mode(&self, i: usize) -> &[Complex64] {
        &self.modes[i]
    }

    /// `<e_i | v>` with the grid measure, for a raw amplitude slice on the
    /// same grid.
    pub fn overlap(&self, i: usize, v: &[Complex64]) -> Complex64 {
        let dq = self.grid.step();
        pairwise_sum_c64_by(v.len(), &|j| self.modes[i][j].conj() * v[j]) * dq
    }

    /// Amplitudes of `sum_i coeffs[i] e_i` on the grid.
    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); self.grid.n()];
        for (c, m) in coeffs.iter().zip(&self.modes) {
            for (o, v) in out.iter_mut().zip(m) {
                *o += c * v;
            }
        }
        out
    }

    /// Worst-case deviation from orthonormality, for diagnostics.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            for j in i..self.len() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = self.overlap(i, self.modes[j].as_slice());
                worst = worst.max((got - want).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{GaussianAxis, StateVector};

    #[test]
    fn harmonic_modes_orthonormal() {
        let g = Grid1D::symmetric(256, 8.0, "q").unwrap();
        let b = ModeBasis::harmonic(g, 8).unwrap();
        assert!(b.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn ground_mode_matches_gaussian_width_one() {
        let g = Grid1D::symmetric(256, 8.0, "q").unwrap();
        let b = ModeBasis::harmonic(g.clone(), 1).unwrap();
        let s = StateVector::gaussian(vec![g], &[GaussianAxis::packet(0.0)]).unwrap();
        let ov = b.overlap(0, s.amps());
        assert!((ov.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn packet_basis_orthonormal_and_localized() {
        let g = Grid1D::symmetric(128, 16.0, "q").unwrap();
        let b = ModeBasis::gaussian_packets(g, &[-5.0, 5.0], 1.0).unwrap();
        assert!(b.orthonormality_defect() < 1e-12);
        // Each packet keeps essentially all mass on its own side.
        let dq = b.grid().step();
        let left_mass: f64 = b.mode(0)[..64].iter().map(|z| z.norm_sqr()).sum::<f64>() * dq;
        assert!((left_mass - 1.0).abs() < 1e-9);
    }
}
