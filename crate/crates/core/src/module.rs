//! The free Hilbert A-module X = A^d and its adjointable operators.
//!
//! Vectors are left modules: `(a·ξ)_i = a ξ_i`, and `⟨ξ, η⟩ = Σ_i ξ_i η_i*`.
//! Operators are d×d matrices over A acting on the right,
//! `(Tξ)_j = Σ_i ξ_i M_ij`, which commutes with the left action.
//!
//! The realization maps an operator to one complex matrix of size `d·n_k` per
//! block. Block `k` of the realization is the full transpose of the block
//! matrix `[M_ij]_k`, so that realization is a *-homomorphism
//! (`realize(S∘T) = realize(S)·realize(T)`, `realize(T*) = realize(T)†`) when
//! vectors are realized as column stacks `[ξ_1ᵀ; …; ξ_dᵀ]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape, SpectralFunction};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// An element ξ = (ξ_1, …, ξ_d) of A^d.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::wire::VectorWire", try_from = "crate::wire::VectorWire")]
pub struct ModuleVector {
    shape: AlgebraShape,
    components: Vec<AlgebraElement>,
}

impl ModuleVector {
    pub fn new(components: Vec<AlgebraElement>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("module vector needs at least one component".into()))?;
        let shape = first.shape().clone();
        for c in &components[1..] {
            shape.ensure_same(c.shape())?;
        }
        Ok(Self { shape, components })
    }

    pub fn zero(shape: &AlgebraShape, dim: usize) -> Self {
        Self {
            shape: shape.clone(),
            components: vec![AlgebraElement::zero(shape); dim.max(1)],
        }
    }

    /// `e_i · 1_A`.
    pub fn basis(shape: &AlgebraShape, dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, len: dim });
        }
        let mut v = Self::zero(shape, dim);
        v.components[i] = AlgebraElement::unit(shape);
        Ok(v)
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[AlgebraElement] {
        &self.components
    }

    pub(crate) fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.shape.ensure_same(&other.shape)?;
        if self.dim() != other.dim() {
            return Err(Error::mismatch(format!("dim {}", self.dim()), format!("dim {}", other.dim())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            shape: self.shape.clone(),
            components,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Left module action `a·ξ`.
    pub fn scalar_action(&self, a: &AlgebraElement) -> Result<Self> {
        let components = self.components.iter().map(|x| a.mul(x)).collect::<Result<_>>()?;
        Ok(Self {
            shape: self.shape.clone(),
            components,
        })
    }

    /// `⟨ξ, η⟩ = Σ_i ξ_i η_i*`.
    pub fn inner_product(&self, other: &Self) -> Result<AlgebraElement> {
        self.ensure_compatible(other)?;
        let mut acc = AlgebraElement::zero(&self.shape);
        for (x, y) in self.components.iter().zip(&other.components) {
            acc = acc.add(&x.mul(&y.adjoint())?)?;
        }
        Ok(acc)
    }

    /// `p̄_k(ξ) = sqrt(p_k(⟨ξ, ξ⟩))`.
    pub fn module_seminorm(&self, k: usize) -> Result<f64> {
        Ok(self.inner_product(self)?.seminorm(k)?.sqrt())
    }

    /// Column realization: per block, the `(d·n_k) × n_k` stack `[ξ_1ᵀ; …; ξ_dᵀ]`.
    pub fn realize(&self) -> Vec<CMatrix> {
        let d = self.dim();
        self.shape
            .block_dims()
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let mut col = CMatrix::zeros(d * n, n);
                for (i, c) in self.components.iter().enumerate() {
                    col.view_mut((i * n, 0), (n, n)).copy_from(&c.block(k).transpose());
                }
                col
            })
            .collect()
    }

    /// Inverse of [`ModuleVector::realize`].
    pub fn from_realization(shape: &AlgebraShape, dim: usize, columns: &[CMatrix]) -> Result<Self> {
        if columns.len() != shape.num_blocks() {
            return Err(Error::shape(shape.num_blocks(), columns.len()));
        }
        for (k, col) in columns.iter().enumerate() {
            let n = shape.dim(k);
            if col.nrows() != dim * n || col.ncols() != n {
                return Err(Error::shape((dim * n, n), (col.nrows(), col.ncols())));
            }
        }
        let components = (0..dim)
            .map(|i| {
                let blocks = columns
                    .iter()
                    .enumerate()
                    .map(|(k, col)| {
                        let n = shape.dim(k);
                        col.view((i * n, 0), (n, n)).transpose()
                    })
                    .collect();
                AlgebraElement::from_blocks(blocks)
            })
            .collect::<Result<_>>()?;
        Self::new(components)
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.ensure_compatible(other)?;
        self.components
            .iter()
            .zip(&other.components)
            .try_fold(0.0f64, |acc, (a, b)| Ok(acc.max(a.distance(b)?)))
    }
}

/// Norm data of an operator: `p̂_k` per seminorm, `‖T‖_∞`, and the uniform lower
/// bound (smallest singular value over all realization blocks).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorNorms {
    pub per_block: Vec<f64>,
    pub norm_inf: f64,
    pub min_modulus: f64,
}

/// An adjointable operator on A^d, stored as its d×d matrix of algebra entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::wire::OperatorWire", try_from = "crate::wire::OperatorWire")]
pub struct ModuleOperator {
    shape: AlgebraShape,
    dim: usize,
    entries: Vec<AlgebraElement>,
}

impl ModuleOperator {
    /// `entries` is row-major: entry `(i, j)` sits at `i·d + j`.
    pub fn from_entries(shape: &AlgebraShape, dim: usize, entries: Vec<AlgebraElement>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("module dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::mismatch(format!("{} entries", dim * dim), format!("{} entries", entries.len())));
        }
        for e in &entries {
            shape.ensure_same(e.shape())?;
        }
        Ok(Self {
            shape: shape.clone(),
            dim,
            entries,
        })
    }

    pub fn zero(shape: &AlgebraShape, dim: usize) -> Self {
        Self {
            shape: shape.clone(),
            dim,
            entries: vec![AlgebraElement::zero(shape); dim * dim],
        }
    }

    pub fn identity(shape: &AlgebraShape, dim: usize) -> Self {
        Self::scalar(shape, dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(shape: &AlgebraShape, dim: usize, c: Complex64) -> Self {
        let mut op = Self::zero(shape, dim);
        for i in 0..dim {
            op.entries[i * dim + i] = AlgebraElement::scalar(shape, c);
        }
        op
    }

    /// Diagonal operator with entries `a_i` on the diagonal.
    pub fn diagonal(diag: Vec<AlgebraElement>) -> Result<Self> {
        let dim = diag.len();
        let shape = diag
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty diagonal".into()))?
            .shape()
            .clone();
        let mut op = Self::zero(&shape, dim);
        for (i, a) in diag.into_iter().enumerate() {
            shape.ensure_same(a.shape())?;
            op.entries[i * dim + i] = a;
        }
        Ok(op)
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.dim + j]
    }

    pub(crate) fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.shape.ensure_same(&other.shape)?;
        if self.dim != other.dim {
            return Err(Error::mismatch(format!("dim {}", self.dim), format!("dim {}", other.dim)));
        }
        Ok(())
    }

    fn ensure_acts_on(&self, x: &ModuleVector) -> Result<()> {
        self.shape.ensure_same(x.shape())?;
        if self.dim != x.dim() {
            return Err(Error::mismatch(format!("dim {}", self.dim), format!("dim {}", x.dim())));
        }
        Ok(())
    }

    /// `(Tξ)_j = Σ_i ξ_i M_ij`.
    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.ensure_acts_on(x)?;
        let d = self.dim;
        let components = (0..d)
            .map(|j| {
                (0..d).try_fold(AlgebraElement::zero(&self.shape), |acc, i| {
                    acc.add(&x.components()[i].mul(self.entry(i, j))?)
                })
            })
            .collect::<Result<_>>()?;
        ModuleVector::new(components)
    }

    /// Adjoint: `(M*)_ji = (M_ij)*`.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.entry(j, i).adjoint());
            }
        }
        Self {
            shape: self.shape.clone(),
            dim: d,
            entries,
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        // ξ ↦ ξ·M_other·M_self
        for i in 0..d {
            for k in 0..d {
                let e = (0..d).try_fold(AlgebraElement::zero(&self.shape), |acc, j| {
                    acc.add(&other.entry(i, j).mul(self.entry(j, k))?)
                })?;
                entries.push(e);
            }
        }
        Ok(Self {
            shape: self.shape.clone(),
            dim: d,
            entries,
        })
    }

    fn zip_entries(&self, other: &Self, f: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement>) -> Result<Self> {
        self.ensure_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(Self {
            shape: self.shape.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_entries(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_entries(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Faithful realization as an element of ⊕_k M_{d·n_k}(ℂ).
    pub fn realize(&self) -> AlgebraElement {
        let d = self.dim;
        let blocks = self
            .shape
            .block_dims()
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let mut r = CMatrix::zeros(d * n, d * n);
                for i in 0..d {
                    for j in 0..d {
                        r.view_mut((j * n, i * n), (n, n))
                            .copy_from(&self.entry(i, j).block(k).transpose());
                    }
                }
                r
            })
            .collect();
        AlgebraElement::from_blocks(blocks).expect("realization blocks are square")
    }

    /// Inverse of [`ModuleOperator::realize`].
    pub fn from_realization(shape: &AlgebraShape, dim: usize, realized: &AlgebraElement) -> Result<Self> {
        shape.amplified(dim).ensure_same(realized.shape())?;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let blocks = shape
                    .block_dims()
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| realized.block(k).view((j * n, i * n), (n, n)).transpose())
                    .collect();
                entries.push(AlgebraElement::from_blocks(blocks)?);
            }
        }
        Self::from_entries(shape, dim, entries)
    }

    pub fn norms(&self) -> OperatorNorms {
        let realized = self.realize();
        let per_block = realized.seminorms();
        let norm_inf = per_block.iter().copied().fold(0.0, f64::max);
        OperatorNorms {
            per_block,
            norm_inf,
            min_modulus: realized.min_modulus(),
        }
    }

    /// Threshold below which a singular value counts as zero: `tol·(1 + ‖T‖_∞)`.
    pub fn invertibility_threshold(&self, tol: f64) -> f64 {
        tol * (1.0 + self.norms().norm_inf)
    }

    /// Numeric invertibility decision (injective with closed range ⟺ surjective ⟺
    /// invertible in finite dimension).
    pub fn is_invertible(&self, tol: f64) -> bool {
        let norms = self.norms();
        norms.min_modulus > tol * (1.0 + norms.norm_inf)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.realize().is_hermitian(tol)
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.realize().is_positive(tol)
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let norms = self.norms();
        let threshold = tol * (1.0 + norms.norm_inf);
        if norms.min_modulus <= threshold {
            return Err(Error::Singular {
                block: self.weakest_block(),
                min_value: norms.min_modulus,
                threshold,
            });
        }
        let realized = self.realize();
        let blocks = realized
            .blocks()
            .iter()
            .enumerate()
            .map(|(k, b)| {
                b.clone().try_inverse().ok_or(Error::Singular {
                    block: k,
                    min_value: linalg::min_singular(b),
                    threshold,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_realization(&self.shape, self.dim, &AlgebraElement::from_blocks(blocks)?)
    }

    fn weakest_block(&self) -> usize {
        self.realize()
            .blocks()
            .iter()
            .map(linalg::min_singular)
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
            .unwrap_or(0)
    }

    /// Functional calculus on a positive operator, computed on the realization.
    pub fn func_calc(&self, f: SpectralFunction, tol: f64) -> Result<Self> {
        let r = self.realize().func_calc(f, tol)?;
        Self::from_realization(&self.shape, self.dim, &r)
    }

    /// Largest Frobenius distance between realization blocks.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.ensure_compatible(other)?;
        self.realize().distance(&other.realize())
    }
}
