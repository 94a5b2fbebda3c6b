//! *-homomorphisms between finite direct sums of matrix algebras, in normal form.
//!
//! Target block `j` is `U_j (⊕_k a_k^{⊕ m_jk} ⊕ 0) U_j*`: source blocks repeated
//! by their multiplicities in source order, zero-padded, then conjugated by a
//! unitary. Every *-homomorphism between such algebras has this form.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::module::{ModuleOperator, ModuleVector};

const UNITARY_TOLERANCE: f64 = 1e-9;

/// Structure of one target block.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetBlock {
    /// Multiplicity of each source block inside this target block.
    pub multiplicities: Vec<usize>,
    /// Conjugating unitary of size `n'_j`.
    pub unitary: CMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarHomomorphism {
    source: AlgebraShape,
    target: AlgebraShape,
    blocks: Vec<TargetBlock>,
}

impl StarHomomorphism {
    pub fn new(source: AlgebraShape, target: AlgebraShape, blocks: Vec<TargetBlock>) -> Result<Self> {
        if blocks.len() != target.num_blocks() {
            return Err(Error::shape(
                format!("{} target blocks", target.num_blocks()),
                format!("{} target blocks", blocks.len()),
            ));
        }
        for (j, b) in blocks.iter().enumerate() {
            if b.multiplicities.len() != source.num_blocks() {
                return Err(Error::InvalidArgument(format!(
                    "target block {j}: {} multiplicities for {} source blocks",
                    b.multiplicities.len(),
                    source.num_blocks()
                )));
            }
            let used: usize = b
                .multiplicities
                .iter()
                .zip(source.block_dims())
                .map(|(m, n)| m * n)
                .sum();
            let nj = target.dim(j);
            if used > nj {
                return Err(Error::InvalidArgument(format!(
                    "target block {j}: multiplicities need dimension {used} > {nj}"
                )));
            }
            if b.unitary.nrows() != nj || b.unitary.ncols() != nj {
                return Err(Error::InvalidArgument(format!(
                    "target block {j}: unitary is {}x{}, expected {nj}x{nj}",
                    b.unitary.nrows(),
                    b.unitary.ncols()
                )));
            }
            let defect = linalg::op_norm(&(b.unitary.adjoint() * &b.unitary - linalg::identity(nj)));
            if defect > UNITARY_TOLERANCE {
                return Err(Error::InvalidArgument(format!(
                    "target block {j}: conjugating matrix is not unitary (defect {defect:.3e})"
                )));
            }
        }
        Ok(Self { source, target, blocks })
    }

    pub fn identity(shape: &AlgebraShape) -> Self {
        let m = shape.num_blocks();
        let blocks = (0..m)
            .map(|j| TargetBlock {
                multiplicities: (0..m).map(|k| usize::from(k == j)).collect(),
                unitary: linalg::identity(shape.dim(j)),
            })
            .collect();
        Self {
            source: shape.clone(),
            target: shape.clone(),
            blocks,
        }
    }

    /// Inner automorphism `a ↦ U a U*` with one unitary per block.
    pub fn conjugation(shape: &AlgebraShape, unitaries: Vec<CMatrix>) -> Result<Self> {
        let mut id = Self::identity(shape);
        if unitaries.len() != shape.num_blocks() {
            return Err(Error::shape(shape.num_blocks(), unitaries.len()));
        }
        for (b, u) in id.blocks.iter_mut().zip(unitaries) {
            b.unitary = u;
        }
        Self::new(id.source, id.target, id.blocks)
    }

    /// `a ↦ a ⊕ … ⊕ a` (`times` copies), block by block.
    pub fn amplification(shape: &AlgebraShape, times: usize) -> Result<Self> {
        if times == 0 {
            return Err(Error::InvalidArgument("amplification needs at least one copy".into()));
        }
        let target = shape.amplified(times);
        let m = shape.num_blocks();
        let blocks = (0..m)
            .map(|j| TargetBlock {
                multiplicities: (0..m).map(|k| if k == j { times } else { 0 }).collect(),
                unitary: linalg::identity(target.dim(j)),
            })
            .collect();
        Self::new(shape.clone(), target, blocks)
    }

    /// Embeds the whole algebra block-diagonally into one matrix block of size
    /// `Σ n_k + padding`. Non-unital when `padding > 0`.
    pub fn block_embedding(shape: &AlgebraShape, padding: usize) -> Result<Self> {
        let n: usize = shape.block_dims().iter().sum::<usize>() + padding;
        let target = AlgebraShape::new(vec![n])?;
        let blocks = vec![TargetBlock {
            multiplicities: vec![1; shape.num_blocks()],
            unitary: linalg::identity(n),
        }];
        Self::new(shape.clone(), target, blocks)
    }

    pub fn source_shape(&self) -> &AlgebraShape {
        &self.source
    }

    pub fn target_shape(&self) -> &AlgebraShape {
        &self.target
    }

    pub fn target_blocks(&self) -> &[TargetBlock] {
        &self.blocks
    }

    fn padding(&self, j: usize) -> usize {
        let used: usize = self.blocks[j]
            .multiplicities
            .iter()
            .zip(self.source.block_dims())
            .map(|(m, n)| m * n)
            .sum();
        self.target.dim(j) - used
    }

    pub fn is_unital(&self) -> bool {
        (0..self.target.num_blocks()).all(|j| self.padding(j) == 0)
    }

    pub fn is_injective(&self) -> bool {
        (0..self.source.num_blocks()).all(|k| self.blocks.iter().any(|b| b.multiplicities[k] > 0))
    }

    /// Surjective iff each target block is a single source block copied once and
    /// distinct target blocks come from distinct source blocks.
    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.source.num_blocks()];
        for (j, b) in self.blocks.iter().enumerate() {
            let nonzero: Vec<usize> = (0..b.multiplicities.len()).filter(|&k| b.multiplicities[k] > 0).collect();
            let [k] = nonzero[..] else { return false };
            if b.multiplicities[k] != 1 || self.padding(j) != 0 || seen[k] {
                return false;
            }
            seen[k] = true;
        }
        true
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.source.ensure_same(x.shape())?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let nj = self.target.dim(j);
                let mut d = CMatrix::zeros(nj, nj);
                let mut at = 0;
                for (k, &m) in b.multiplicities.iter().enumerate() {
                    let n = self.source.dim(k);
                    for _ in 0..m {
                        d.view_mut((at, at), (n, n)).copy_from(x.block(k));
                        at += n;
                    }
                }
                &b.unitary * d * b.unitary.adjoint()
            })
            .collect();
        AlgebraElement::from_blocks(blocks)
    }

    /// Componentwise application on A^d; this is the map θ induced by φ.
    pub fn apply_vector(&self, x: &ModuleVector) -> Result<ModuleVector> {
        ModuleVector::new(x.components().iter().map(|c| self.apply(c)).collect::<Result<_>>()?)
    }

    /// Entrywise application on d×d matrices over A.
    pub fn apply_operator(&self, t: &ModuleOperator) -> Result<ModuleOperator> {
        let entries = t.entries().iter().map(|e| self.apply(e)).collect::<Result<_>>()?;
        ModuleOperator::from_entries(&self.target, t.dim(), entries)
    }

    /// `self ∘ first`, returned in normal form.
    pub fn compose(&self, first: &StarHomomorphism) -> Result<StarHomomorphism> {
        first.target.ensure_same(&self.source)?;
        let src = &first.source;
        let mut blocks = Vec::with_capacity(self.target.num_blocks());
        for (j, outer) in self.blocks.iter().enumerate() {
            let nj = self.target.dim(j);
            // Segments of the nested block-diagonal, in nested order: Some(k) for a
            // copy of source block k, None(size) for padding.
            let mut segments: Vec<(Option<usize>, usize)> = Vec::new();
            let mut w = CMatrix::zeros(nj, nj);
            let mut at = 0;
            for (l, &m2) in outer.multiplicities.iter().enumerate() {
                let inner = &first.blocks[l];
                let nl = first.target.dim(l);
                for _ in 0..m2 {
                    w.view_mut((at, at), (nl, nl)).copy_from(&inner.unitary);
                    at += nl;
                    for (k, &m1) in inner.multiplicities.iter().enumerate() {
                        segments.extend(std::iter::repeat_n((Some(k), src.dim(k)), m1));
                    }
                    let pad = first.padding(l);
                    if pad > 0 {
                        segments.push((None, pad));
                    }
                }
            }
            let pad = nj - at;
            for i in 0..pad {
                w[(at + i, at + i)] = Complex64::new(1.0, 0.0);
            }
            if pad > 0 {
                segments.push((None, pad));
            }

            let mut multiplicities = vec![0usize; src.num_blocks()];
            for (s, _) in &segments {
                if let Some(k) = s {
                    multiplicities[*k] += 1;
                }
            }
            let mut offsets = Vec::with_capacity(src.num_blocks());
            let mut acc = 0;
            for (k, &m) in multiplicities.iter().enumerate() {
                offsets.push(acc);
                acc += m * src.dim(k);
            }
            let mut zero_offset = acc;

            // P maps normal-form positions to nested positions.
            let mut p = CMatrix::zeros(nj, nj);
            let mut nested_at = 0;
            let mut used = vec![0usize; src.num_blocks()];
            for (s, size) in &segments {
                let normal_at = match s {
                    Some(k) => {
                        let start = offsets[*k] + used[*k] * size;
                        used[*k] += 1;
                        start
                    }
                    None => {
                        let start = zero_offset;
                        zero_offset += size;
                        start
                    }
                };
                for i in 0..*size {
                    p[(nested_at + i, normal_at + i)] = Complex64::new(1.0, 0.0);
                }
                nested_at += size;
            }
            blocks.push(TargetBlock {
                multiplicities,
                unitary: &outer.unitary * w * p,
            });
        }
        Self::new(src.clone(), self.target.clone(), blocks)
    }
}
