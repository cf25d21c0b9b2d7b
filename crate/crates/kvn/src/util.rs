//! Deterministic reductions and small numeric helpers.
//!
//! All grid reductions in this crate go through the pairwise sums below so
//! that results do not depend on thread count or chunking.

use num_complex::Complex64;

const PAIRWISE_BASE: usize = 32;

/// Pairwise sum of complex values in a fixed recursion order.
pub fn pairwise_sum_c64(v: &[Complex64]) -> Complex64 {
    if v.len() <= PAIRWISE_BASE {
        let mut acc = Complex64::new(0.0, 0.0);
        for z in v {
            acc += z;
        }
        acc
    } else {
        let mid = v.len() / 2;
        pairwise_sum_c64(&v[..mid]) + pairwise_sum_c64(&v[mid..])
    }
}

/// Pairwise sum of real values in a fixed recursion order.
pub fn pairwise_sum_f64(v: &[f64]) -> f64 {
    if v.len() <= PAIRWISE_BASE {
        let mut acc = 0.0;
        for x in v {
            acc += x;
        }
        acc
    } else {
        let mid = v.len() / 2;
        pairwise_sum_f64(&v[..mid]) + pairwise_sum_f64(&v[mid..])
    }
}

/// Pairwise sum of `f(i)` over `0..n` without materializing the sequence.
///
/// Splitting is on the index range, so the result equals what
/// `pairwise_sum_f64` would produce on the collected values.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    pairwise_range(0, n, f)
}

fn pairwise_range<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
    if hi - lo <= PAIRWISE_BASE {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise_range(lo, mid, f) + pairwise_range(mid, hi, f)
    }
}

/// Pairwise complex sum over an index range via a closure.
pub fn pairwise_sum_c64_by<F: Fn(usize) -> Complex64>(n: usize, f: &F) -> Complex64 {
    pairwise_range_c64(0, n, f)
}

fn pairwise_range_c64<F: Fn(usize) -> Complex64>(lo: usize, hi: usize, f: &F) -> Complex64 {
    if hi - lo <= PAIRWISE_BASE {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise_range_c64(lo, mid, f) + pairwise_range_c64(mid, hi, f)
    }
}

/// Evaluate a real polynomial (coefficients in ascending power order) at `u`.
pub fn poly_eval(coeffs: &[f64], u: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * u + c;
    }
    acc
}

/// Coefficients of the derivative of a polynomial.
pub fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &c)| m as f64 * c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let naive: f64 = v.iter().sum();
        assert!((pairwise_sum_f64(&v) - naive).abs() < 1e-10);
        let by = pairwise_sum_by(v.len(), &|i| v[i]);
        assert_eq!(by, pairwise_sum_f64(&v));
    }

    #[test]
    fn poly_eval_and_derivative() {
        // 1 + 2u + 3u^2
        let c = [1.0, 2.0, 3.0];
        assert_eq!(poly_eval(&c, 2.0), 17.0);
        assert_eq!(poly_derivative(&c), vec![2.0, 6.0]);
        assert_eq!(poly_derivative(&[5.0]), vec![0.0]);
    }
}
