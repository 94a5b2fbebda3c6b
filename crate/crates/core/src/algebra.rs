//! Finite-dimensional model of a pro-C*-algebra: A = M_{n_1}(ℂ) ⊕ … ⊕ M_{n_m}(ℂ).
//!
//! The seminorm family is indexed by blocks: `p_k(x)` is the operator norm of
//! block `k`. Every order and spectral question decomposes blockwise.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Default relative tolerance for positivity, Hermiticity and invertibility checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Block dimensions `[n_1, …, n_m]` of a direct sum of matrix algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct AlgebraShape {
    block_dims: Vec<usize>,
}

impl AlgebraShape {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidArgument("algebra needs at least one block".into()));
        }
        if let Some(k) = block_dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidArgument(format!("block {k} has dimension 0")));
        }
        Ok(Self { block_dims })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Number of blocks, which is also the number of seminorms.
    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.block_dims[k]
    }

    /// Shape of the realization of `d × d` matrices over this algebra: blocks `d·n_k`.
    pub fn amplified(&self, d: usize) -> AlgebraShape {
        AlgebraShape {
            block_dims: self.block_dims.iter().map(|&n| n * d).collect(),
        }
    }

    pub(crate) fn check_index(&self, k: usize) -> Result<()> {
        if k < self.num_blocks() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                len: self.num_blocks(),
            })
        }
    }

    pub(crate) fn ensure_same(&self, other: &AlgebraShape) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::shape(&self.block_dims, &other.block_dims))
        }
    }
}

/// Scalar functions available to the continuous functional calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralFunction {
    Sqrt,
    Inv,
    InvSqrt,
}

/// An element of the algebra: one square complex matrix per block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::wire::ElementWire", try_from = "crate::wire::ElementWire")]
pub struct AlgebraElement {
    shape: AlgebraShape,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn zero(shape: &AlgebraShape) -> Self {
        let blocks = shape.block_dims.iter().map(|&n| linalg::zeros(n)).collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// The unit 1_A.
    pub fn unit(shape: &AlgebraShape) -> Self {
        Self::scalar(shape, Complex64::new(1.0, 0.0))
    }

    /// `c · 1_A`.
    pub fn scalar(shape: &AlgebraShape, c: Complex64) -> Self {
        let blocks = shape
            .block_dims
            .iter()
            .map(|&n| linalg::identity(n) * c)
            .collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// Builds an element from its blocks; the shape is read off the block sizes.
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            if b.nrows() != b.ncols() {
                return Err(Error::InvalidArgument(format!(
                    "block {k} is {}x{}, expected square",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        let shape = AlgebraShape::new(blocks.iter().map(|b| b.nrows()).collect())?;
        Ok(Self { shape, blocks })
    }

    /// Element whose block `k` is the diagonal matrix `diag(entries[k])`.
    pub fn diagonal(entries: &[Vec<f64>]) -> Result<Self> {
        let blocks = entries
            .iter()
            .map(|d| {
                CMatrix::from_diagonal(&DVector::from_iterator(
                    d.len(),
                    d.iter().map(|&x| Complex64::new(x, 0.0)),
                ))
            })
            .collect();
        Self::from_blocks(blocks)
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMatrix {
        &self.blocks[k]
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.shape.ensure_same(&other.shape)?;
        Ok(Self {
            shape: self.shape.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn map_blocks(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// The involution x ↦ x*: blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.map_blocks(|a| a.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_blocks(|a| a * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map_blocks(|a| a.scale(c))
    }

    /// The seminorm `p_k`: largest singular value of block `k`.
    pub fn seminorm(&self, k: usize) -> Result<f64> {
        self.shape.check_index(k)?;
        Ok(linalg::op_norm(&self.blocks[k]))
    }

    pub fn seminorms(&self) -> Vec<f64> {
        self.blocks.iter().map(linalg::op_norm).collect()
    }

    /// Maximum over the seminorm family.
    pub fn norm_inf(&self) -> f64 {
        self.seminorms().into_iter().fold(0.0, f64::max)
    }

    /// Smallest singular value over all blocks; zero signals a non-invertible element.
    pub fn min_modulus(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::min_singular)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_invertible(&self, tol: f64) -> bool {
        self.blocks
            .iter()
            .all(|b| linalg::min_singular(b) > tol * (1.0 + linalg::op_norm(b)))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.blocks
            .iter()
            .all(|b| linalg::asymmetry(b) <= tol * (1.0 + linalg::op_norm(b)))
    }

    /// Membership in A⁺ up to the scale-relative tolerance `tol·(1 + ‖block‖)`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.blocks.iter().all(|b| {
            let slack = tol * (1.0 + linalg::op_norm(b));
            if linalg::asymmetry(b) > slack {
                return false;
            }
            let (vals, _) = linalg::hermitian_eigen(b);
            vals.first().is_none_or(|&lo| lo >= -slack)
        })
    }

    /// `self ≤ other`, i.e. `other − self ∈ A⁺`.
    pub fn order_leq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(other.sub(self)?.is_positive(tol))
    }

    /// Blockwise eigenvalues.
    pub fn spectrum(&self) -> Vec<Vec<Complex64>> {
        self.blocks.iter().map(linalg::eigenvalues).collect()
    }

    /// Eigenvalues of the Hermitian part of each block, ascending.
    pub fn hermitian_spectrum(&self) -> Vec<Vec<f64>> {
        self.blocks.iter().map(|b| linalg::hermitian_eigen(b).0).collect()
    }

    /// When every block is a scalar multiple of the identity (within `tol`), returns
    /// those scalars; such elements are central.
    pub fn central_values(&self, tol: f64) -> Option<Vec<Complex64>> {
        self.blocks
            .iter()
            .map(|b| {
                let n = b.nrows();
                let c = b.trace() / n as f64;
                let resid = linalg::op_norm(&(b - linalg::identity(n) * c));
                (resid <= tol * (1.0 + c.norm())).then_some(c)
            })
            .collect()
    }

    /// Continuous functional calculus on positive elements.
    ///
    /// Each block is symmetrized, diagonalized, `f` is applied to the eigenvalues,
    /// and the block is reassembled. `Sqrt` accepts positive input (small negative
    /// eigenvalues within tolerance are clamped to zero); `Inv` and `InvSqrt`
    /// additionally require the smallest eigenvalue to exceed `tol`.
    pub fn func_calc(&self, f: SpectralFunction, tol: f64) -> Result<Self> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (k, b) in self.blocks.iter().enumerate() {
            let slack = tol * (1.0 + linalg::op_norm(b));
            let asym = linalg::asymmetry(b);
            if asym > slack {
                return Err(Error::NotHermitian {
                    block: k,
                    asymmetry: asym,
                });
            }
            let (vals, vecs) = linalg::hermitian_eigen(b);
            let lo = vals.first().copied().unwrap_or(0.0);
            if lo < -slack {
                return Err(Error::NotPositive {
                    block: k,
                    min_eigenvalue: lo,
                });
            }
            let mapped: Vec<f64> = match f {
                SpectralFunction::Sqrt => vals.iter().map(|&v| v.max(0.0).sqrt()).collect(),
                SpectralFunction::Inv | SpectralFunction::InvSqrt => {
                    if lo <= tol {
                        return Err(Error::Singular {
                            block: k,
                            min_value: lo,
                            threshold: tol,
                        });
                    }
                    if f == SpectralFunction::Inv {
                        vals.iter().map(|&v| 1.0 / v).collect()
                    } else {
                        vals.iter().map(|&v| 1.0 / v.sqrt()).collect()
                    }
                }
            };
            blocks.push(linalg::from_eigen(&mapped, &vecs));
        }
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// General (not necessarily positive) inverse; fails when some block's smallest
    /// singular value is at or below `tol·(1 + ‖block‖)`.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (k, b) in self.blocks.iter().enumerate() {
            let smin = linalg::min_singular(b);
            let threshold = tol * (1.0 + linalg::op_norm(b));
            let inv = (smin > threshold).then(|| b.clone().try_inverse()).flatten();
            match inv {
                Some(inv) => blocks.push(inv),
                None => {
                    return Err(Error::Singular {
                        block: k,
                        min_value: smin,
                        threshold,
                    })
                }
            }
        }
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// Largest Frobenius distance between corresponding blocks.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.shape.ensure_same(&other.shape)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| linalg::distance(a, b))
            .fold(0.0, f64::max))
    }
}
