//! Unitary FFTs along one axis of a flat row-major array.
//!
//! Both directions carry a `1/sqrt(n)` factor, so a transform preserves the
//! weighted L2 norm used by [`crate::state::StateVector`] (Parseval) and the
//! frequency representation shares the position-space cell weight.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Plan (or fetch a cached plan for) an FFT of length `n`.
pub fn plan(n: usize, dir: Direction) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        match dir {
            Direction::Forward => p.plan_fft_forward(n),
            Direction::Inverse => p.plan_fft_inverse(n),
        }
    })
}

/// In-place unitary transform along `axis` of a row-major array with `shape`.
pub fn transform_axis(
    buf: &mut [Complex64],
    shape: &[usize],
    axis: usize,
    dir: Direction,
) {
    let n = shape[axis];
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let fft = plan(n, dir);
    let scale = 1.0 / (n as f64).sqrt();
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    if stride == 1 {
        for lane in buf.chunks_exact_mut(n).take(outer) {
            fft.process_with_scratch(lane, &mut scratch);
            for z in lane.iter_mut() {
                *z *= scale;
            }
        }
        return;
    }

    const TILE: usize = 32;
    let mut tile = vec![Complex64::default(); TILE * n];
    for o in 0..outer {
        let obase = o * n * stride;
        let mut i0 = 0;
        while i0 < stride {
            let t = TILE.min(stride - i0);
            for j in 0..n {
                let row = obase + j * stride + i0;
                for l in 0..t {
                    tile[l * n + j] = buf[row + l];
                }
            }
            for l in 0..t {
                fft.process_with_scratch(&mut tile[l * n..(l + 1) * n], &mut scratch);
            }
            for j in 0..n {
                let row = obase + j * stride + i0;
                for l in 0..t {
                    buf[row + l] = tile[l * n + j] * scale;
                }
            }
            i0 += t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::pairwise_sum_f64;

    fn norm_sq(v: &[Complex64]) -> f64 {
        pairwise_sum_f64(&v.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>())
    }

    #[test]
    fn parseval_and_roundtrip() {
        let shape = [4, 8, 16];
        let total: usize = shape.iter().product();
        let mut buf: Vec<Complex64> = (0..total)
            .map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let orig = buf.clone();
        let n0 = norm_sq(&buf);
        for axis in 0..3 {
            transform_axis(&mut buf, &shape, axis, Direction::Forward);
            assert!((norm_sq(&buf) - n0).abs() < 1e-12 * n0);
        }
        for axis in 0..3 {
            transform_axis(&mut buf, &shape, axis, Direction::Inverse);
        }
        let err = buf
            .iter()
            .zip(&orig)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn forward_matches_dft_on_middle_axis() {
        // 2x4x3 array; check axis 1 against a direct DFT.
        let shape = [2, 4, 3];
        let total = 24;
        let mut buf: Vec<Complex64> = (0..total)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let orig = buf.clone();
        transform_axis(&mut buf, &shape, 1, Direction::Forward);
        let n = 4;
        let scale = 1.0 / (n as f64).sqrt();
        for a in 0..2 {
            for i in 0..3 {
                for m in 0..n {
                    let mut acc = Complex64::default();
                    for j in 0..n {
                        let w = Complex64::from_polar(
                            1.0,
                            -2.0 * std::f64::consts::PI * (m * j) as f64 / n as f64,
                        );
                        acc += orig[a * 12 + j * 3 + i] * w;
                    }
                    let got = buf[a * 12 + m * 3 + i];
                    assert!((got - acc * scale).norm() < 1e-12);
                }
            }
        }
    }
}
