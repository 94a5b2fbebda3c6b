//! Test-only oracles. Each one recomputes a quantity by a route that shares no
//! code with the library: explicit loops instead of BLAS-style products, a
//! cyclic Jacobi sweep instead of the library eigensolver, and closed forms
//! where they exist.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starframe::algebra::AlgebraShape;
use starframe::linalg::CMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shapes with at most three blocks of size at most `max_n`.
pub fn shape_from(seed: u64, max_n: usize) -> AlgebraShape {
    let m = 1 + (seed % 3) as usize;
    let dims = (0..m).map(|k| 1 + ((seed >> (8 * k + 4)) as usize % max_n)).collect();
    AlgebraShape::new(dims).unwrap()
}

pub fn naive_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows());
    let mut c = CMatrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..a.ncols() {
                s += a[(i, k)] * b[(k, j)];
            }
            c[(i, j)] = s;
        }
    }
    c
}

pub fn naive_adjoint(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations on
/// the real symmetric embedding `[[Re, -Im], [Im, Re]]` (each eigenvalue of the
/// embedding appears twice).
pub fn jacobi_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.nrows();
    let m = 2 * n;
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..m).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(1e-300) {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    d.sort_by(f64::total_cmp);
    d.into_iter().step_by(2).collect()
}

/// Largest singular value as the square root of the top Jacobi eigenvalue of `a*a`.
pub fn jacobi_op_norm(a: &CMatrix) -> f64 {
    let g = naive_mul(&naive_adjoint(a), a);
    jacobi_eigenvalues(&g).last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Eigenvalues of a Hermitian 2×2 matrix `[[a, b], [b̄, d]]` in closed form, ascending.
pub fn eig2_hermitian(m: &CMatrix) -> [f64; 2] {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - r, mean + r]
}

/// Extremes of the Rayleigh quotient `v*Hv / v*v` over `samples` random directions.
pub fn rayleigh_scan(h: &CMatrix, samples: usize, seed: u64) -> (f64, f64) {
    use rand_distr::{Distribution, StandardNormal};
    let mut r = rng(seed);
    let n = h.nrows();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)))
            .collect();
        let mut num = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                num += v[i].conj() * h[(i, j)] * v[j];
            }
        }
        let den: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let q = num.re / den;
        lo = lo.min(q);
        hi = hi.max(q);
    }
    (lo, hi)
}

/// Unit vectors `(cos t, e^{iφ} sin t)` on a `steps × 2·steps` grid covering the
/// complex projective line.
pub fn unit_grid_c2(steps: usize) -> Vec<[Complex64; 2]> {
    let mut out = Vec::with_capacity(2 * steps * (steps + 1));
    for a in 0..=steps {
        let t = std::f64::consts::FRAC_PI_2 * a as f64 / steps as f64;
        for b in 0..2 * steps {
            let phi = std::f64::consts::PI * b as f64 / steps as f64;
            out.push([Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), phi)]);
        }
    }
    out
}
