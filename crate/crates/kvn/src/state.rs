//! States on tensor-product spectral grids.
//!
//! Amplitudes are stored flat in row-major axis order (axis 0 outermost).
//! The norm convention is `sum |a|^2 * cell_volume = 1`, so densities obtained
//! as `|a|^2` integrate to one with the grid's cell measure.

use crate::error::{KvnError, Result};
use crate::grid::Grid1D;
use crate::util::{pairwise_sum_by, pairwise_sum_c64_by};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    grids: Vec<Grid1D>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wrap raw amplitudes without normalizing. Checks finiteness and size.
    pub fn from_amplitudes(grids: Vec<Grid1D>, amps: Vec<Complex64>) -> Result<Self> {
        let total: usize = grids.iter().map(|g| g.n()).product();
        if grids.is_empty() || amps.len() != total {
            return Err(KvnError::ShapeMismatch(format!(
                "expected {total} amplitudes, got {}",
                amps.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(KvnError::Domain("non-finite amplitude".into()));
        }
        Ok(Self { grids, amps })
    }

    /// Build and normalize. Errors if the raw norm is zero.
    pub fn normalized(grids: Vec<Grid1D>, amps: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::from_amplitudes(grids, amps)?;
        let n = s.norm();
        if !(n > 0.0) {
            return Err(KvnError::Domain("cannot normalize a zero state".into()));
        }
        let inv = 1.0 / n;
        for z in &mut s.amps {
            *z *= inv;
        }
        Ok(s)
    }

    /// Normalized product of per-axis Gaussian amplitudes
    /// `exp(-(u - center)^2 / (2 width^2)) * exp(i momentum u)`.
    ///
    /// With this convention the |amplitude|^2 density on each axis has
    /// standard deviation `width / sqrt(2)`; `width = 1` is the harmonic
    /// ground-state profile.
    pub fn gaussian(grids: Vec<Grid1D>, params: &[GaussianAxis]) -> Result<Self> {
        if params.len() != grids.len() {
            return Err(KvnError::ShapeMismatch(format!(
                "{} gaussian axis parameters for {} axes",
                params.len(),
                grids.len()
            )));
        }
        let factors: Vec<Vec<Complex64>> = grids
            .iter()
            .zip(params)
            .map(|(g, p)| {
                g.points()
                    .iter()
                    .map(|&u| {
                        let arg = -(u - p.center).powi(2) / (2.0 * p.width * p.width);
                        Complex64::from_polar(arg.exp(), p.momentum * u)
                    })
                    .collect()
            })
            .collect();
        let total: usize = grids.iter().map(|g| g.n()).product();
        let mut amps = vec![Complex64::default(); total];
        let shape: Vec<usize> = grids.iter().map(|g| g.n()).collect();
        for (flat, z) in amps.iter_mut().enumerate() {
            let mut rem = flat;
            let mut v = Complex64::new(1.0, 0.0);
            for (ax, &n) in shape.iter().enumerate().rev() {
                let j = rem % n;
                rem /= n;
                v *= factors[ax][j];
            }
            *z = v;
        }
        Self::normalized(grids, amps)
    }

    pub fn grids(&self) -> &[Grid1D] {
        &self.grids
    }

    pub fn shape(&self) -> Vec<usize> {
        self.grids.iter().map(|g| g.n()).collect()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    /// Product of all cell widths.
    pub fn cell_volume(&self) -> f64 {
        self.grids.iter().map(|g| g.step()).product()
    }

    /// Index of the axis with the given label.
    pub fn axis(&self, label: &str) -> Result<usize> {
        self.grids
            .iter()
            .position(|g| g.label() == label)
            .ok_or_else(|| KvnError::AxisNotFound(label.into()))
    }

    /// Row-major stride of an axis.
    pub fn stride(&self, axis: usize) -> usize {
        self.grids[axis + 1..].iter().map(|g| g.n()).product()
    }

    pub fn norm_sq(&self) -> f64 {
        let vol = self.cell_volume();
        pairwise_sum_by(self.amps.len(), &|i| self.amps[i].norm_sqr()) * vol
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Check the normalization invariant after a construction labeled
    /// "normalized".
    pub fn assert_normalized(&self, tol: f64) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > tol {
            return Err(KvnError::Domain(format!(
                "state norm {n} deviates from 1 by more than {tol:e}"
            )));
        }
        Ok(())
    }

    /// Multiply amplitudes by a per-cell unit phase `exp(i phase[cell])`.
    pub fn with_phase_field(&self, phase: &[f64]) -> Result<Self> {
        if phase.len() != self.amps.len() {
            return Err(KvnError::ShapeMismatch(
                "phase field length != amplitude count".into(),
            ));
        }
        let amps = self
            .amps
            .iter()
            .zip(phase)
            .map(|(z, &p)| z * Complex64::from_polar(1.0, p))
            .collect();
        Self::from_amplitudes(self.grids.clone(), amps)
    }

    /// Probability mass within `cells` grid cells of any periodic boundary,
    /// along any axis.
    pub fn boundary_mass(&self, cells: usize) -> f64 {
        let shape = self.shape();
        let vol = self.cell_volume();
        let sum = pairwise_sum_by(self.amps.len(), &|flat| {
            let mut rem = flat;
            let mut near = false;
            for &n in shape.iter().rev() {
                let j = rem % n;
                rem /= n;
                if j < cells || j >= n - cells {
                    near = true;
                }
            }
            if near {
                self.amps[flat].norm_sqr()
            } else {
                0.0
            }
        });
        sum * vol
    }

    /// Pointwise density `|a|^2` over all axes.
    pub fn density(&self) -> Density {
        Density {
            grids: self.grids.clone(),
            values: self.amps.iter().map(|z| z.norm_sqr()).collect(),
        }
    }
}

/// Per-axis parameters for [`StateVector::gaussian`].
#[derive(Debug, Clone, Copy)]
pub struct GaussianAxis {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
}

impl GaussianAxis {
    pub fn packet(center: f64) -> Self {
        Self {
            center,
            width: 1.0,
            momentum: 0.0,
        }
    }

    pub fn with_width(center: f64, width: f64) -> Self {
        Self {
            center,
            width,
            momentum: 0.0,
        }
    }
}

/// `<a|b> = sum conj(a) b * cell_volume`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.grids != b.grids {
        return Err(KvnError::ShapeMismatch(
            "inner product between states on different grids".into(),
        ));
    }
    let vol = a.cell_volume();
    let s = pairwise_sum_c64_by(a.amps.len(), &|i| a.amps[i].conj() * b.amps[i]);
    Ok(s * vol)
}

/// Outer product of a quantum-sector state and a classical-sector state.
///
/// The quantum axes come first in the joint row-major layout.
pub fn tensor_product(q: &StateVector, c: &StateVector) -> Result<StateVector> {
    let mut grids = q.grids.to_vec();
    grids.extend(c.grids.iter().cloned());
    let mut amps = Vec::with_capacity(q.amps.len() * c.amps.len());
    for zq in &q.amps {
        for zc in &c.amps {
            amps.push(zq * zc);
        }
    }
    StateVector::from_amplitudes(grids, amps)
}

/// Nonnegative density on a (sub)grid.
#[derive(Debug, Clone)]
pub struct Density {
    grids: Vec<Grid1D>,
    values: Vec<f64>,
}

impl Density {
    pub fn new(grids: Vec<Grid1D>, values: Vec<f64>) -> Result<Self> {
        let total: usize = grids.iter().map(|g| g.n()).product();
        if values.len() != total {
            return Err(KvnError::ShapeMismatch(format!(
                "expected {total} density values, got {}",
                values.len()
            )));
        }
        Ok(Self { grids, values })
    }

    pub fn grids(&self) -> &[Grid1D] {
        &self.grids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cell_volume(&self) -> f64 {
        self.grids.iter().map(|g| g.step()).product()
    }

    pub fn integral(&self) -> f64 {
        pairwise_sum_by(self.values.len(), &|i| self.values[i]) * self.cell_volume()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Largest pointwise difference against another density on the same grid.
    pub fn max_abs_diff(&self, other: &Density) -> Result<f64> {
        if self.grids != other.grids {
            return Err(KvnError::ShapeMismatch(
                "density comparison across different grids".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Marginal density over the named axes, with the summed axes' cell measure
/// folded in: `f(rest) = sum_over |Psi|^2 * (summed cell volume)`.
pub fn marginal_density(state: &StateVector, summed: &[usize]) -> Result<Density> {
    let naxes = state.grids.len();
    for &ax in summed {
        if ax >= naxes {
            return Err(KvnError::AxisNotFound(format!("axis index {ax}")));
        }
    }
    let keep: Vec<usize> = (0..naxes).filter(|ax| !summed.contains(ax)).collect();
    if keep.is_empty() {
        return Err(KvnError::Parameter(
            "marginal must keep at least one axis".into(),
        ));
    }
    let shape = state.shape();
    let keep_shape: Vec<usize> = keep.iter().map(|&ax| shape[ax]).collect();
    let out_len: usize = keep_shape.iter().product();
    let summed_vol: f64 = summed.iter().map(|&ax| state.grids[ax].step()).product();

    // Strides for mapping full flat index -> kept flat index.
    let full_strides: Vec<usize> = (0..naxes).map(|ax| state.stride(ax)).collect();
    let mut keep_strides_out = vec![0usize; naxes];
    {
        let mut acc = 1usize;
        for (pos, &ax) in keep.iter().enumerate().rev() {
            keep_strides_out[ax] = acc;
            acc *= keep_shape[pos];
        }
    }

    let mut values = vec![0.0f64; out_len];
    // Deterministic accumulation: iterate the full array in flat order; each
    // output cell receives contributions in a fixed order.
    for (flat, z) in state.amps.iter().enumerate() {
        let mut out = 0usize;
        for &ax in &keep {
            let j = (flat / full_strides[ax]) % shape[ax];
            out += j * keep_strides_out[ax];
        }
        values[out] += z.norm_sqr();
    }
    for v in &mut values {
        *v *= summed_vol;
    }
    Density::new(keep.iter().map(|&ax| state.grids[ax].clone()).collect(), values)
}

/// Density on the classical phase-space axes: the marginal over every axis
/// whose label starts with `q`.
pub fn classical_marginal(h: &StateVector) -> Result<Density> {
    let summed: Vec<usize> = h
        .grids
        .iter()
        .enumerate()
        .filter(|(_, g)| g.label().starts_with('q'))
        .map(|(i, _)| i)
        .collect();
    if summed.is_empty() {
        // A purely classical state: its own density.
        return Ok(h.density());
    }
    marginal_density(h, &summed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qgrid(n: usize) -> Grid1D {
        Grid1D::symmetric(n, 8.0, "q").unwrap()
    }

    #[test]
    fn normalized_gaussian_has_unit_norm() {
        let g = qgrid(256);
        let s = StateVector::gaussian(
            vec![g],
            &[GaussianAxis::packet(0.0)],
        )
        .unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_overlap_matches_analytic() {
        // Unit-width Gaussians centered 0 and 2 overlap at exp(-d^2/(4 w^2)).
        let g = qgrid(256);
        let a = StateVector::gaussian(vec![g.clone()], &[GaussianAxis::packet(0.0)]).unwrap();
        let b = StateVector::gaussian(vec![g], &[GaussianAxis::packet(2.0)]).unwrap();
        let ov = inner_product(&a, &b).unwrap();
        assert!((ov.re - (-1.0f64).exp()).abs() < 1e-6);
        assert!(ov.im.abs() < 1e-12);
    }

    #[test]
    fn disjoint_indicators_orthogonal_exactly() {
        let g = qgrid(16);
        let n = g.n();
        let mut a = vec![Complex64::default(); n];
        let mut b = vec![Complex64::default(); n];
        for j in 0..n / 2 {
            a[j] = Complex64::new(1.0, 0.0);
            b[j + n / 2] = Complex64::new(1.0, 0.0);
        }
        let sa = StateVector::normalized(vec![g.clone()], a).unwrap();
        let sb = StateVector::normalized(vec![g], b).unwrap();
        let ov = inner_product(&sa, &sb).unwrap();
        assert_eq!(ov, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn inner_product_conjugate_symmetric() {
        let g = qgrid(64);
        let a = StateVector::gaussian(
            vec![g.clone()],
            &[GaussianAxis {
                center: 1.0,
                width: 1.0,
                momentum: 0.7,
            }],
        )
        .unwrap();
        let b = StateVector::gaussian(
            vec![g],
            &[GaussianAxis {
                center: -0.5,
                width: 1.3,
                momentum: -0.2,
            }],
        )
        .unwrap();
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
        let aa = inner_product(&a, &a).unwrap();
        assert!(aa.im.abs() < 1e-15 && aa.re > 0.0);
    }

    #[test]
    fn inner_product_grid_mismatch_errors() {
        let a = StateVector::gaussian(vec![qgrid(64)], &[GaussianAxis::packet(0.0)]).unwrap();
        let b = StateVector::gaussian(vec![qgrid(128)], &[GaussianAxis::packet(0.0)]).unwrap();
        assert!(matches!(
            inner_product(&a, &b),
            Err(KvnError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn tensor_product_norm_and_marginal() {
        let q = StateVector::gaussian(vec![qgrid(32)], &[GaussianAxis::packet(1.0)]).unwrap();
        let gx = Grid1D::symmetric(16, 8.0, "x").unwrap();
        let gk = Grid1D::symmetric(16, 8.0, "k").unwrap();
        let c = StateVector::gaussian(
            vec![gx, gk],
            &[GaussianAxis::packet(-1.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let h = tensor_product(&q, &c).unwrap();
        assert!((h.norm() - 1.0).abs() < 1e-12);

        let f = classical_marginal(&h).unwrap();
        let fc = c.density();
        assert!(f.max_abs_diff(&fc).unwrap() < 1e-12);
        assert!((f.integral() - 1.0).abs() < 1e-9);
        assert!(f.min_value() >= 0.0);
    }

    #[test]
    fn marginal_ignores_phase_field() {
        let gx = Grid1D::symmetric(16, 8.0, "x").unwrap();
        let gk = Grid1D::symmetric(16, 8.0, "k").unwrap();
        let q = StateVector::gaussian(vec![qgrid(16)], &[GaussianAxis::packet(0.0)]).unwrap();
        let c = StateVector::gaussian(
            vec![gx, gk],
            &[GaussianAxis::packet(0.5), GaussianAxis::packet(-0.5)],
        )
        .unwrap();
        let h = tensor_product(&q, &c).unwrap();
        let phase: Vec<f64> = (0..h.amps().len())
            .map(|i| (i as f64 * 0.013).sin() * 2.0)
            .collect();
        let hp = h.with_phase_field(&phase).unwrap();
        let d = classical_marginal(&h)
            .unwrap()
            .max_abs_diff(&classical_marginal(&hp).unwrap())
            .unwrap();
        assert!(d < 1e-14);
    }

    #[test]
    fn two_branch_marginal_masses() {
        // Equal superposition of two branches with disjoint classical packets:
        // the classical marginal carries mass 0.5 in each half plane.
        let gq = qgrid(32);
        let gx = Grid1D::symmetric(64, 16.0, "x").unwrap();
        let gk = Grid1D::symmetric(16, 8.0, "k").unwrap();
        let qa = StateVector::gaussian(vec![gq.clone()], &[GaussianAxis::packet(-2.0)]).unwrap();
        let qb = StateVector::gaussian(vec![gq.clone()], &[GaussianAxis::packet(2.0)]).unwrap();
        let ca = StateVector::gaussian(
            vec![gx.clone(), gk.clone()],
            &[GaussianAxis::packet(-6.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let cb = StateVector::gaussian(
            vec![gx.clone(), gk.clone()],
            &[GaussianAxis::packet(6.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let ha = tensor_product(&qa, &ca).unwrap();
        let hb = tensor_product(&qb, &cb).unwrap();
        let amps: Vec<Complex64> = ha
            .amps()
            .iter()
            .zip(hb.amps())
            .map(|(a, b)| (a + b) * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let h = StateVector::from_amplitudes(ha.grids().to_vec(), amps).unwrap();
        let f = classical_marginal(&h).unwrap();
        // Sum masses over x<0 and x>=0.
        let nx = 64;
        let nk = 16;
        let vol = f.cell_volume();
        let mut left = 0.0;
        let mut right = 0.0;
        for jx in 0..nx {
            for jk in 0..nk {
                let v = f.values()[jx * nk + jk] * vol;
                if jx < nx / 2 {
                    left += v;
                } else {
                    right += v;
                }
            }
        }
        assert!((left - 0.5).abs() < 1e-9, "left mass {left}");
        assert!((right - 0.5).abs() < 1e-9, "right mass {right}");
    }
}
