//! Small dense complex matrices: just enough linear algebra for truncated
//! density matrices, POVM validation, and Choi decompositions.
//!
//! Matrices are row-major `Vec<Complex64>` of dimension `d*d`. Everything here
//! is deterministic and single-threaded; dimensions stay tiny (d <= ~32).

use num_complex::Complex64;

pub fn mat_mul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::default(); d * d];
    for i in 0..d {
        for l in 0..d {
            let ail = a[i * d + l];
            if ail == Complex64::default() {
                continue;
            }
            for j in 0..d {
                c[i * d + j] += ail * b[l * d + j];
            }
        }
    }
    c
}

pub fn dagger(a: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); d * d];
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = a[i * d + j].conj();
        }
    }
    out
}

pub fn identity(d: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::default(); d * d];
    for i in 0..d {
        m[i * d + i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn trace(a: &[Complex64], d: usize) -> Complex64 {
    (0..d).map(|i| a[i * d + i]).sum()
}

/// Largest entrywise deviation from Hermiticity.
pub fn hermiticity_defect(a: &[Complex64], d: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((a[i * d + j] - a[j * d + i].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise absolute value.
pub fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues (ascending) and the matching orthonormal
/// eigenvectors as matrix columns (`vecs[i*d + c]` is component `i` of
/// eigenvector `c`).
pub fn hermitian_eigen(a: &[Complex64], d: usize) -> (Vec<f64>, Vec<Complex64>) {
    let mut m = a.to_vec();
    // Symmetrize to kill roundoff-level defects.
    for i in 0..d {
        for j in 0..d {
            let h = (m[i * d + j] + m[j * d + i].conj()) * 0.5;
            m[i * d + j] = h;
        }
        m[i * d + i] = Complex64::new(m[i * d + i].re, 0.0);
    }
    let mut v = identity(d);
    let scale = max_abs(&m).max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..d {
            for j in (i + 1)..d {
                off = off.max(m[i * d + j].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = m[p * d + q];
                if apq.norm() <= tol * 1e-2 {
                    continue;
                }
                let app = m[p * d + p].re;
                let aqq = m[q * d + q].re;
                // Unitary 2x2 rotation J = [[c, -s*e^{-i phi}], [s*e^{i phi}, c]]
                // with phi = arg(apq), diagonalizing the (p, q) block.
                let phi = apq.arg();
                let r = apq.norm();
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                let eip = Complex64::from_polar(1.0, phi);
                let eim = eip.conj();

                // Update rows/columns p and q of m: m <- J^dagger m J.
                for k in 0..d {
                    let mkp = m[k * d + p];
                    let mkq = m[k * d + q];
                    m[k * d + p] = mkp * c + mkq * s * eim;
                    m[k * d + q] = -mkp * s * eip + mkq * c;
                }
                for k in 0..d {
                    let mpk = m[p * d + k];
                    let mqk = m[q * d + k];
                    m[p * d + k] = mpk * c + mqk * s * eip;
                    m[q * d + k] = -mpk * s * eim + mqk * c;
                }
                m[p * d + q] = Complex64::default();
                m[q * d + p] = Complex64::default();
                m[p * d + p] = Complex64::new(m[p * d + p].re, 0.0);
                m[q * d + q] = Complex64::new(m[q * d + q].re, 0.0);

                for k in 0..d {
                    let vkp = v[k * d + p];
                    let vkq = v[k * d + q];
                    v[k * d + p] = vkp * c + vkq * s * eim;
                    v[k * d + q] = -vkp * s * eip + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let evals_raw: Vec<f64> = (0..d).map(|i| m[i * d + i].re).collect();
    order.sort_by(|&i, &j| evals_raw[i].partial_cmp(&evals_raw[j]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| evals_raw[i]).collect();
    let mut vecs = vec![Complex64::default(); d * d];
    for (col_new, &col_old) in order.iter().enumerate() {
        for i in 0..d {
            vecs[i * d + col_new] = v[i * d + col_old];
        }
    }
    (evals, vecs)
}

/// Deterministic unitary from a seeded complex Ginibre matrix via modified
/// Gram-Schmidt.
pub fn random_unitary(d: usize, rng: &mut impl rand::Rng) -> Vec<Complex64> {
    use rand::distributions::Distribution;
    let normal = rand_distr_standard_normal();
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| Complex64::new(normal.sample(rng), normal.sample(rng)))
                .collect()
        })
        .collect();
    for c in 0..d {
        for prev in 0..c {
            let proj: Complex64 = (0..d).map(|i| cols[prev][i].conj() * cols[c][i]).sum();
            for i in 0..d {
                let correction = proj * cols[prev][i];
                cols[c][i] -= correction;
            }
        }
        let nrm: f64 = (0..d).map(|i| cols[c][i].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            cols[c][i] /= nrm;
        }
    }
    let mut u = vec![Complex64::default(); d * d];
    for c in 0..d {
        for i in 0..d {
            u[i * d + c] = cols[c][i];
        }
    }
    u
}

fn rand_distr_standard_normal() -> impl rand::distributions::Distribution<f64> {
    // Box-Muller over the open unit interval; avoids a rand_distr dependency.
    struct BoxMuller;
    impl rand::distributions::Distribution<f64> for BoxMuller {
        fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> f64 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        }
    }
    BoxMuller
}

/// How far `u` is from unitarity, as `max |u^dagger u - 1|`.
pub fn unitarity_defect(u: &[Complex64], d: usize) -> f64 {
    let ud = dagger(u, d);
    let p = mat_mul(&ud, u, d);
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let want = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            };
            worst = worst.max((p[i * d + j] - want).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn eigen_of_known_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let (evals, vecs) = hermitian_eigen(&a, 2);
        assert!((evals[0] - 1.0).abs() < 1e-12);
        assert!((evals[1] - 3.0).abs() < 1e-12);
        // Check A v = lambda v for both columns.
        for c in 0..2 {
            for i in 0..2 {
                let av: Complex64 = (0..2).map(|j| a[i * 2 + j] * vecs[j * 2 + c]).sum();
                assert!((av - vecs[i * 2 + c] * evals[c]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let d = 6;
        let u = random_unitary(d, &mut rng);
        assert!(unitarity_defect(&u, d) < 1e-12);
        // Build H = U diag(w) U^dagger with known spectrum.
        let w: Vec<f64> = (0..d).map(|i| i as f64 - 2.5).collect();
        let mut h = vec![Complex64::default(); d * d];
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    h[i * d + j] += u[i * d + l] * w[l] * u[j * d + l].conj();
                }
            }
        }
        let (evals, _) = hermitian_eigen(&h, d);
        for (got, want) in evals.iter().zip(&w) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }
}
