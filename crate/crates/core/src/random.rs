//! Seeded generators for test instances. All functions are deterministic given the RNG state.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::linalg::CMatrix;
use crate::module::{ModuleOperator, ModuleVector};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

/// Matrix with orthonormal columns (`rows ≥ cols`).
pub fn isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    debug_assert!(rows >= cols);
    unitary(rows, rng).columns(0, cols).into_owned()
}

/// U diag(values) U* with a random unitary U.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> CMatrix {
    let n = values.len();
    let u = unitary(n, rng);
    let d = CMatrix::from_diagonal(&DVector::from_iterator(
        n,
        values.iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    let m = &u * d * u.adjoint();
    (&m + m.adjoint()).scale(0.5)
}

/// Matrix with singular values drawn uniformly from `[lo, hi]`.
pub fn matrix_with_singular_values<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> CMatrix {
    let s: Vec<f64> = (0..n).map(|_| uniform(lo, hi, rng)).collect();
    let u = unitary(n, rng);
    let v = unitary(n, rng);
    let d = CMatrix::from_diagonal(&DVector::from_iterator(n, s.iter().map(|&x| Complex64::new(x, 0.0))));
    u * d * v.adjoint()
}

pub(crate) fn uniform<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

pub fn element<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R) -> AlgebraElement {
    let blocks = shape.block_dims().iter().map(|&n| gaussian_matrix(n, n, rng)).collect();
    AlgebraElement::from_blocks(blocks).expect("valid shape")
}

pub fn hermitian_element<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R) -> AlgebraElement {
    let x = element(shape, rng);
    x.add(&x.adjoint()).expect("same shape").scale_real(0.5)
}

/// Positive element whose blockwise spectrum lies in `[lo, hi]`.
pub fn positive_element<R: Rng + ?Sized>(shape: &AlgebraShape, lo: f64, hi: f64, rng: &mut R) -> AlgebraElement {
    let blocks = shape
        .block_dims()
        .iter()
        .map(|&n| {
            let vals: Vec<f64> = (0..n).map(|_| uniform(lo, hi, rng)).collect();
            hermitian_with_spectrum(&vals, rng)
        })
        .collect();
    AlgebraElement::from_blocks(blocks).expect("valid shape")
}

/// Element with all singular values in `[lo, hi]`.
pub fn invertible_element<R: Rng + ?Sized>(shape: &AlgebraShape, lo: f64, hi: f64, rng: &mut R) -> AlgebraElement {
    let blocks = shape
        .block_dims()
        .iter()
        .map(|&n| matrix_with_singular_values(n, lo, hi, rng))
        .collect();
    AlgebraElement::from_blocks(blocks).expect("valid shape")
}

pub fn vector<R: Rng + ?Sized>(shape: &AlgebraShape, dim: usize, rng: &mut R) -> ModuleVector {
    ModuleVector::new((0..dim).map(|_| element(shape, rng)).collect()).expect("valid vector")
}

pub fn operator<R: Rng + ?Sized>(shape: &AlgebraShape, dim: usize, rng: &mut R) -> ModuleOperator {
    let entries = (0..dim * dim).map(|_| element(shape, rng)).collect();
    ModuleOperator::from_entries(shape, dim, entries).expect("valid operator")
}

/// Operator whose realization has every singular value in `[lo, hi]`.
pub fn invertible_operator<R: Rng + ?Sized>(
    shape: &AlgebraShape,
    dim: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> ModuleOperator {
    let realized = invertible_element(&shape.amplified(dim), lo, hi, rng);
    ModuleOperator::from_realization(shape, dim, &realized).expect("consistent realization")
}

/// Positive operator whose realization spectrum lies in `[lo, hi]`.
pub fn positive_operator<R: Rng + ?Sized>(
    shape: &AlgebraShape,
    dim: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> ModuleOperator {
    let realized = positive_element(&shape.amplified(dim), lo, hi, rng);
    ModuleOperator::from_realization(shape, dim, &realized).expect("consistent realization")
}
