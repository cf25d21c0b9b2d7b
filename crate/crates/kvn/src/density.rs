//! Truncated-basis density matrices and the quantum partial trace.

use crate::basis::ModeBasis;
use crate::error::{KvnError, Result};
use crate::linalg;
use crate::state::StateVector;
use num_complex::Complex64;

/// A `D x D` density matrix in a truncated orthonormal mode family.
#[derive(Debug, Clone)]
pub struct DensityMatrixT {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrixT {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(KvnError::ShapeMismatch(format!(
                "expected {} entries for dim {dim}",
                dim * dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_pure(coeffs: &[Complex64]) -> Self {
        let dim = coeffs.len();
        let mut entries = vec![Complex64::default(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = coeffs[i] * coeffs[j].conj();
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.entries, self.dim).re
    }

    pub fn purity(&self) -> f64 {
        let sq = linalg::mat_mul(&self.entries, &self.entries, self.dim);
        linalg::trace(&sq, self.dim).re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.entries, self.dim)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigen(&self.entries, self.dim).0
    }

    /// Enforce the state invariants: Hermitian within 1e-10, trace within
    /// `trace_tol` of 1, eigenvalues above -1e-8.
    pub fn validate(&self, trace_tol: f64) -> Result<()> {
        let h = self.hermiticity_defect();
        if h > 1e-10 {
            return Err(KvnError::Domain(format!(
                "density matrix hermiticity defect {h:e}"
            )));
        }
        let t = self.trace();
        if (t - 1.0).abs() > trace_tol {
            return Err(KvnError::Domain(format!(
                "density matrix trace {t} deviates from 1 beyond {trace_tol:e}"
            )));
        }
        if let Some(min) = self
            .eigenvalues()
            .first()
            .copied()
            .filter(|&m| m < -1e-8)
        {
            return Err(KvnError::Domain(format!(
                "density matrix has eigenvalue {min:e} below -1e-8"
            )));
        }
        Ok(())
    }

    /// Scale all entries (used to fold conditional probabilities in or out).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    /// Trace distance `0.5 * sum |eig(rho - sigma)|`.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        let diff: Vec<Complex64> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        let (evals, _) = linalg::hermitian_eigen(&diff, self.dim);
        0.5 * evals.iter().map(|e| e.abs()).sum::<f64>()
    }

    /// `<psi| rho |psi>` for a pure state given by basis coefficients.
    pub fn fidelity_with_pure(&self, coeffs: &[Complex64]) -> f64 {
        let mut acc = Complex64::default();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += coeffs[i].conj() * self.entries[i * self.dim + j] * coeffs[j];
            }
        }
        acc.re
    }
}

/// Reduced quantum state of a hybrid state in a truncated mode family.
///
/// Returns the matrix and the leakage `1 - trace` outside the family's span
/// (up to the state's own norm defect). The quantum axis must be axis 0.
pub fn partial_trace_quantum(
    h: &StateVector,
    basis: &ModeBasis,
    d: usize,
) -> Result<(DensityMatrixT, f64)> {
    if d == 0 || d > basis.len() {
        return Err(KvnError::Parameter(format!(
            "truncation {d} exceeds basis size {}",
            basis.len()
        )));
    }
    let qax = h.axis("q")?;
    if qax != 0 {
        return Err(KvnError::ShapeMismatch(
            "partial trace expects the quantum axis outermost".into(),
        ));
    }
    let nq = h.grids()[0].n();
    if basis.grid() != &h.grids()[0] {
        return Err(KvnError::ShapeMismatch(
            "mode basis lives on a different quantum grid".into(),
        ));
    }
    let rest: usize = h.shape()[1..].iter().product();
    let cell_area: f64 = h.grids()[1..].iter().map(|g| g.step()).product();
    let dq = h.grids()[0].step();

    // Overlaps O_i(c) = <e_i | Psi(., c)> over the quantum axis, for each
    // classical cell c.
    let amps = h.amps();
    let mut overlaps = vec![Complex64::default(); d * rest];
    for i in 0..d {
        let mode = basis.mode(i);
        for (jq, mq) in mode.iter().enumerate().take(nq) {
            let mconj = mq.conj() * dq;
            let row = &amps[jq * rest..(jq + 1) * rest];
            let orow = &mut overlaps[i * rest..(i + 1) * rest];
            for (o, a) in orow.iter_mut().zip(row) {
                *o += mconj * a;
            }
        }
    }

    let mut entries = vec![Complex64::default(); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::default();
            let oi = &overlaps[i * rest..(i + 1) * rest];
            let oj = &overlaps[j * rest..(j + 1) * rest];
            for c in 0..rest {
                acc += oi[c] * oj[c].conj();
            }
            entries[i * d + j] = acc * cell_area;
        }
    }
    let rho = DensityMatrixT::new(d, entries)?;
    let leakage = h.norm_sq() - rho.trace();
    if rho.trace() > h.norm_sq() + 1e-9 {
        return Err(KvnError::Domain(format!(
            "partial trace exceeded state norm: trace {} vs norm^2 {}",
            rho.trace(),
            h.norm_sq()
        )));
    }
    Ok((rho, leakage))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::state::{tensor_product, GaussianAxis, StateVector};

    fn setup() -> (Grid1D, Vec<Grid1D>) {
        let gq = Grid1D::symmetric(128, 8.0, "q").unwrap();
        let gx = Grid1D::symmetric(32, 8.0, "x").unwrap();
        let gk = Grid1D::symmetric(32, 8.0, "k").unwrap();
        (gq, vec![gx, gk])
    }

    #[test]
    fn product_state_with_ground_mode_is_pure() {
        let (gq, gc) = setup();
        let basis = ModeBasis::harmonic(gq.clone(), 4).unwrap();
        // psi_q = e_0 exactly (synthesized from the basis).
        let q = StateVector::normalized(vec![gq], basis.mode(0).to_vec()).unwrap();
        let c = StateVector::gaussian(
            gc,
            &[GaussianAxis::packet(0.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let h = tensor_product(&q, &c).unwrap();
        let (rho, leak) = partial_trace_quantum(&h, &basis, 4).unwrap();
        assert!((rho.entry(0, 0).re - 1.0).abs() < 1e-9);
        for i in 1..4 {
            assert!(rho.entry(i, i).norm() < 1e-9);
        }
        assert!(leak.abs() < 1e-9);
        assert!((rho.purity() - 1.0).abs() < 1e-8);
        rho.validate(1e-9).unwrap();
    }

    #[test]
    fn entangled_two_branch_purity_half() {
        let (gq, gc) = setup();
        let basis = ModeBasis::harmonic(gq.clone(), 2).unwrap();
        let q0 = StateVector::normalized(vec![gq.clone()], basis.mode(0).to_vec()).unwrap();
        let q1 = StateVector::normalized(vec![gq], basis.mode(1).to_vec()).unwrap();
        let ca = StateVector::gaussian(
            gc.clone(),
            &[GaussianAxis::packet(-4.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let cb = StateVector::gaussian(
            gc,
            &[GaussianAxis::packet(4.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let ha = tensor_product(&q0, &ca).unwrap();
        let hb = tensor_product(&q1, &cb).unwrap();
        let amps: Vec<Complex64> = ha
            .amps()
            .iter()
            .zip(hb.amps())
            .map(|(a, b)| (a + b) * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let h = StateVector::from_amplitudes(ha.grids().to_vec(), amps).unwrap();
        let (rho, _) = partial_trace_quantum(&h, &basis, 2).unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-6, "purity {}", rho.purity());
    }

    #[test]
    fn truncation_beyond_basis_errors() {
        let (gq, gc) = setup();
        let basis = ModeBasis::harmonic(gq.clone(), 2).unwrap();
        let q = StateVector::gaussian(vec![gq], &[GaussianAxis::packet(0.0)]).unwrap();
        let c = StateVector::gaussian(
            gc,
            &[GaussianAxis::packet(0.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let h = tensor_product(&q, &c).unwrap();
        assert!(partial_trace_quantum(&h, &basis, 3).is_err());
    }
}
