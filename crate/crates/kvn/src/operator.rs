//! Grid operators: coordinate polynomials, spectral derivatives, and their
//! exactly exponentiable compositions.

use crate::error::{KvnError, Result};
use crate::fft::{transform_axis, Direction};
use crate::state::{inner_product, StateVector};
use crate::util::poly_eval;
use num_complex::Complex64;

/// Tolerance on the imaginary part of a self-adjoint expectation.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// An operator acting on one or two axes of a state.
///
/// * `CoordPoly` is exact pointwise multiplication by a polynomial in the
///   axis coordinate.
/// * `Derivative` is the spectral operator `-i d/du` on its axis: transform,
///   multiply by the signed frequency ladder, transform back.
/// * `Composed` is the product `poly(a) * (-i d/db)` on distinct axes `a`, `b`.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    CoordPoly { axis: String, coeffs: Vec<f64> },
    Derivative { axis: String },
    Composed {
        poly_axis: String,
        coeffs: Vec<f64>,
        deriv_axis: String,
    },
}

impl OperatorSpec {
    /// Multiplication by the coordinate itself.
    pub fn coordinate(axis: impl Into<String>) -> Self {
        OperatorSpec::CoordPoly {
            axis: axis.into(),
            coeffs: vec![0.0, 1.0],
        }
    }

    /// Multiplication by the squared coordinate.
    pub fn coordinate_sq(axis: impl Into<String>) -> Self {
        OperatorSpec::CoordPoly {
            axis: axis.into(),
            coeffs: vec![0.0, 0.0, 1.0],
        }
    }

    /// The identity, as a degree-zero coordinate polynomial.
    pub fn identity(axis: impl Into<String>) -> Self {
        OperatorSpec::CoordPoly {
            axis: axis.into(),
            coeffs: vec![1.0],
        }
    }

    pub fn derivative(axis: impl Into<String>) -> Self {
        OperatorSpec::Derivative { axis: axis.into() }
    }

    pub fn composed(
        poly_axis: impl Into<String>,
        coeffs: Vec<f64>,
        deriv_axis: impl Into<String>,
    ) -> Result<Self> {
        let poly_axis = poly_axis.into();
        let deriv_axis = deriv_axis.into();
        if poly_axis == deriv_axis {
            return Err(KvnError::Parameter(
                "composed operator requires distinct axes".into(),
            ));
        }
        Ok(OperatorSpec::Composed {
            poly_axis,
            coeffs,
            deriv_axis,
        })
    }

    fn axes(&self) -> Vec<&str> {
        match self {
            OperatorSpec::CoordPoly { axis, .. } | OperatorSpec::Derivative { axis } => {
                vec![axis]
            }
            OperatorSpec::Composed {
                poly_axis,
                deriv_axis,
                ..
            } => vec![poly_axis, deriv_axis],
        }
    }
}

/// Multiply amplitudes in place by `f(u_axis)` evaluated per cell.
fn mul_axis_fn(
    amps: &mut [Complex64],
    shape: &[usize],
    axis: usize,
    factor: &[Complex64],
) {
    let stride: usize = shape[axis + 1..].iter().product();
    let n = shape[axis];
    let block = n * stride;
    for (chunk_i, chunk) in amps.chunks_exact_mut(block).enumerate() {
        let _ = chunk_i;
        for j in 0..n {
            let f = factor[j];
            for z in &mut chunk[j * stride..(j + 1) * stride] {
                *z *= f;
            }
        }
    }
}

/// Apply `op` to `s`, returning a new state (not renormalized; application is
/// linear).
pub fn apply_operator(op: &OperatorSpec, s: &StateVector) -> Result<StateVector> {
    for ax in op.axes() {
        s.axis(ax)?;
    }
    let shape = s.shape();
    let mut out = s.clone();
    match op {
        OperatorSpec::CoordPoly { axis, coeffs } => {
            let ax = s.axis(axis)?;
            let factor: Vec<Complex64> = s.grids()[ax]
                .points()
                .iter()
                .map(|&u| Complex64::new(poly_eval(coeffs, u), 0.0))
                .collect();
            mul_axis_fn(out.amps_mut(), &shape, ax, &factor);
        }
        OperatorSpec::Derivative { axis } => {
            let ax = s.axis(axis)?;
            let factor: Vec<Complex64> = s.grids()[ax]
                .frequencies()
                .iter()
                .map(|&w| Complex64::new(w, 0.0))
                .collect();
            transform_axis(out.amps_mut(), &shape, ax, Direction::Forward);
            mul_axis_fn(out.amps_mut(), &shape, ax, &factor);
            transform_axis(out.amps_mut(), &shape, ax, Direction::Inverse);
        }
        OperatorSpec::Composed {
            poly_axis,
            coeffs,
            deriv_axis,
        } => {
            let pax = s.axis(poly_axis)?;
            let dax = s.axis(deriv_axis)?;
            let wfac: Vec<Complex64> = s.grids()[dax]
                .frequencies()
                .iter()
                .map(|&w| Complex64::new(w, 0.0))
                .collect();
            let pfac: Vec<Complex64> = s.grids()[pax]
                .points()
                .iter()
                .map(|&u| Complex64::new(poly_eval(coeffs, u), 0.0))
                .collect();
            transform_axis(out.amps_mut(), &shape, dax, Direction::Forward);
            mul_axis_fn(out.amps_mut(), &shape, dax, &wfac);
            transform_axis(out.amps_mut(), &shape, dax, Direction::Inverse);
            mul_axis_fn(out.amps_mut(), &shape, pax, &pfac);
        }
    }
    Ok(out)
}

/// `<s|op s>` for a self-adjoint operator on a normalized state.
///
/// The imaginary part is checked against [`EXPECTATION_IMAG_TOL`] and then
/// discarded.
pub fn expectation(op: &OperatorSpec, s: &StateVector) -> Result<f64> {
    s.assert_normalized(1e-6)?;
    let os = apply_operator(op, s)?;
    let v = inner_product(s, &os)?;
    if v.im.abs() > EXPECTATION_IMAG_TOL {
        return Err(KvnError::SelfAdjointness {
            imag: v.im,
            tol: EXPECTATION_IMAG_TOL,
        });
    }
    Ok(v.re)
}

/// Apply `exp(-i t op)` exactly. Every [`OperatorSpec`] kind is diagonal in a
/// representation reachable by axis transforms, so the exponential is a unit
/// phase table in that representation.
pub fn apply_exp(op: &OperatorSpec, t: f64, s: &StateVector) -> Result<StateVector> {
    for ax in op.axes() {
        s.axis(ax)?;
    }
    let shape = s.shape();
    let mut out = s.clone();
    match op {
        OperatorSpec::CoordPoly { axis, coeffs } => {
            let ax = s.axis(axis)?;
            let factor: Vec<Complex64> = s.grids()[ax]
                .points()
                .iter()
                .map(|&u| Complex64::from_polar(1.0, -t * poly_eval(coeffs, u)))
                .collect();
            mul_axis_fn(out.amps_mut(), &shape, ax, &factor);
        }
        OperatorSpec::Derivative { axis } => {
            let ax = s.axis(axis)?;
            let factor: Vec<Complex64> = s.grids()[ax]
                .frequencies()
                .iter()
                .map(|&w| Complex64::from_polar(1.0, -t * w))
                .collect();
            transform_axis(out.amps_mut(), &shape, ax, Direction::Forward);
            mul_axis_fn(out.amps_mut(), &shape, ax, &factor);
            transform_axis(out.amps_mut(), &shape, ax, Direction::Inverse);
        }
        OperatorSpec::Composed {
            poly_axis,
            coeffs,
            deriv_axis,
        } => {
            let pax = s.axis(poly_axis)?;
            let dax = s.axis(deriv_axis)?;
            // Diagonal in (poly axis position) x (derivative axis frequency):
            // build the 2-D phase on the fly with a per-(jp, jd) loop.
            let pvals: Vec<f64> = s.grids()[pax]
                .points()
                .iter()
                .map(|&u| poly_eval(coeffs, u))
                .collect();
            let wvals = s.grids()[dax].frequencies();
            transform_axis(out.amps_mut(), &shape, dax, Direction::Forward);
            let amps = out.amps_mut();
            let ns: Vec<usize> = shape.clone();
            let stride_p: usize = ns[pax + 1..].iter().product();
            let stride_d: usize = ns[dax + 1..].iter().product();
            for (flat, z) in amps.iter_mut().enumerate() {
                let jp = (flat / stride_p) % ns[pax];
                let jd = (flat / stride_d) % ns[dax];
                *z *= Complex64::from_polar(1.0, -t * pvals[jp] * wvals[jd]);
            }
            transform_axis(out.amps_mut(), &shape, dax, Direction::Inverse);
        }
    }
    Ok(out)
}
