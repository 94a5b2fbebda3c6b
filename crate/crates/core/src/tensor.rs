//! External tensor products `A ⊗ B`, `X ⊗ Y` and of operator frames.
//!
//! Block `(k, l)` of the product algebra sits at position `k·m + l` where `m` is
//! the number of blocks of `B` (left block outer). Module index `(i, j)` sits at
//! `i·e + j` where `e` is the dimension of `Y`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::frame::{Bound, FrameBounds, FrameCertificate, OperatorFrame};
use crate::module::{ModuleOperator, ModuleVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LayoutWire", into = "LayoutWire")]
pub struct TensorLayout {
    left_shape: AlgebraShape,
    right_shape: AlgebraShape,
    product_shape: AlgebraShape,
    left_dim: usize,
    right_dim: usize,
}

/// Serialized form with the block order and index map spelled out.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutWire {
    left_blocks: Vec<usize>,
    right_blocks: Vec<usize>,
    product_blocks: Vec<usize>,
    /// `block_order[p] = [k, l]`
    block_order: Vec<[usize; 2]>,
    left_dim: usize,
    right_dim: usize,
    /// `index_map[r] = [i, j]`
    index_map: Vec<[usize; 2]>,
}

impl From<TensorLayout> for LayoutWire {
    fn from(t: TensorLayout) -> Self {
        let m = t.right_shape.num_blocks();
        Self {
            left_blocks: t.left_shape.block_dims().to_vec(),
            right_blocks: t.right_shape.block_dims().to_vec(),
            product_blocks: t.product_shape.block_dims().to_vec(),
            block_order: (0..t.product_shape.num_blocks()).map(|p| [p / m, p % m]).collect(),
            left_dim: t.left_dim,
            right_dim: t.right_dim,
            index_map: (0..t.product_dim()).map(|r| [r / t.right_dim, r % t.right_dim]).collect(),
        }
    }
}

impl TryFrom<LayoutWire> for TensorLayout {
    type Error = Error;

    fn try_from(w: LayoutWire) -> Result<Self> {
        let layout = TensorLayout::new(
            AlgebraShape::new(w.left_blocks)?,
            AlgebraShape::new(w.right_blocks)?,
            w.left_dim,
            w.right_dim,
        )?;
        let canonical = LayoutWire::from(layout.clone());
        if w.product_blocks != canonical.product_blocks
            || w.block_order != canonical.block_order
            || w.index_map != canonical.index_map
        {
            return Err(Error::Structural(
                "layout block order or index map disagrees with the left-outer convention".into(),
            ));
        }
        Ok(layout)
    }
}

impl TensorLayout {
    pub fn new(left_shape: AlgebraShape, right_shape: AlgebraShape, left_dim: usize, right_dim: usize) -> Result<Self> {
        if left_dim == 0 || right_dim == 0 {
            return Err(Error::InvalidArgument("module dimensions must be positive".into()));
        }
        let product = left_shape
            .block_dims()
            .iter()
            .flat_map(|&n| right_shape.block_dims().iter().map(move |&m| n * m))
            .collect();
        Ok(Self {
            product_shape: AlgebraShape::new(product)?,
            left_shape,
            right_shape,
            left_dim,
            right_dim,
        })
    }

    /// Layout for the tensor product of the modules carrying two frames.
    pub fn for_frames(left: &OperatorFrame, right: &OperatorFrame) -> Result<Self> {
        Self::new(left.shape().clone(), right.shape().clone(), left.dim(), right.dim())
    }

    pub fn left_shape(&self) -> &AlgebraShape {
        &self.left_shape
    }

    pub fn right_shape(&self) -> &AlgebraShape {
        &self.right_shape
    }

    pub fn product_shape(&self) -> &AlgebraShape {
        &self.product_shape
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn product_dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn block_index(&self, k: usize, l: usize) -> usize {
        k * self.right_shape.num_blocks() + l
    }

    pub fn block_pair(&self, p: usize) -> (usize, usize) {
        let m = self.right_shape.num_blocks();
        (p / m, p % m)
    }

    pub fn module_index(&self, i: usize, j: usize) -> usize {
        i * self.right_dim + j
    }

    pub fn module_pair(&self, r: usize) -> (usize, usize) {
        (r / self.right_dim, r % self.right_dim)
    }

    /// For product block `(k, l)`: entry `r` is the row of
    /// `realize(T)_k ⊗ realize(L)_l` that corresponds to row `r` of
    /// `realize(T ⊗ L)_{(k,l)}`.
    pub fn realization_permutation(&self, k: usize, l: usize) -> Vec<usize> {
        let (n, m) = (self.left_shape.dim(k), self.right_shape.dim(l));
        let e = self.right_dim;
        let mut perm = Vec::with_capacity(self.product_dim() * n * m);
        for i in 0..self.left_dim {
            for j in 0..e {
                for a in 0..n {
                    for b in 0..m {
                        perm.push((i * n + a) * (e * m) + j * m + b);
                    }
                }
            }
        }
        perm
    }

    pub fn element_tensor(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.left_shape.ensure_same(a.shape())?;
        self.right_shape.ensure_same(b.shape())?;
        let blocks = a
            .blocks()
            .iter()
            .flat_map(|x| b.blocks().iter().map(move |y| x.kronecker(y)))
            .collect();
        AlgebraElement::from_blocks(blocks)
    }

    /// Component `(i, j)` is `x_i ⊗ y_j`.
    pub fn vector_tensor(&self, x: &ModuleVector, y: &ModuleVector) -> Result<ModuleVector> {
        self.check_dims(x.dim(), y.dim())?;
        let mut components = Vec::with_capacity(self.product_dim());
        for xi in x.components() {
            for yj in y.components() {
                components.push(self.element_tensor(xi, yj)?);
            }
        }
        ModuleVector::new(components)
    }

    /// Entry `((i,j), (i',j'))` is `M_{ii'} ⊗ N_{jj'}`, so `(T⊗L)(ξ⊗η) = Tξ ⊗ Lη`.
    pub fn operator_tensor(&self, t: &ModuleOperator, l: &ModuleOperator) -> Result<ModuleOperator> {
        self.check_dims(t.dim(), l.dim())?;
        let dim = self.product_dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            let (i, j) = self.module_pair(p);
            for q in 0..dim {
                let (i2, j2) = self.module_pair(q);
                entries.push(self.element_tensor(t.entry(i, i2), l.entry(j, j2))?);
            }
        }
        ModuleOperator::from_entries(&self.product_shape, dim, entries)
    }

    /// `A ⊗ C`; scalar constants multiply, and a scalar `c` meets an element as `√c·1`.
    pub fn bound_tensor(&self, a: &Bound, c: &Bound) -> Result<Bound> {
        match (a, c) {
            (Bound::Scalar(x), Bound::Scalar(y)) => Ok(Bound::Scalar(x * y)),
            _ => Ok(Bound::Element(self.element_tensor(
                &a.to_element(&self.left_shape),
                &c.to_element(&self.right_shape),
            )?)),
        }
    }

    pub fn bounds_tensor(&self, left: &FrameBounds, right: &FrameBounds) -> Result<FrameBounds> {
        FrameBounds::general(
            self.bound_tensor(left.lower(), right.lower())?,
            self.bound_tensor(left.upper(), right.upper())?,
        )
    }

    fn check_dims(&self, d: usize, e: usize) -> Result<()> {
        if (d, e) != (self.left_dim, self.right_dim) {
            return Err(Error::shape((self.left_dim, self.right_dim), (d, e)));
        }
        Ok(())
    }
}

/// Evidence required before two frames are tensored.
#[derive(Clone, Copy, Debug)]
pub enum Certification<'a> {
    Verified(&'a FrameCertificate, &'a FrameCertificate),
    Waived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorFrame {
    pub layout: TensorLayout,
    pub frame: OperatorFrame,
    /// `S_T ⊗ S_L`.
    pub predicted_operator: ModuleOperator,
    /// `‖S_{T⊗L} − S_T ⊗ S_L‖`, entrywise maximum.
    pub operator_residual: f64,
    /// `A ⊗ C`, `B ⊗ D` from the certified bounds; absent when certification was waived.
    pub predicted_bounds: Option<FrameBounds>,
}

/// The frame `{T_i ⊗ L_j}` with `(i, j)` ordered left-outer.
pub fn frame_tensor(left: &OperatorFrame, right: &OperatorFrame, certification: Certification<'_>) -> Result<TensorFrame> {
    let layout = TensorLayout::for_frames(left, right)?;
    let predicted_bounds = match certification {
        Certification::Verified(cl, cr) => {
            if !cl.is_verified() || !cr.is_verified() {
                return Err(Error::Precondition(
                    "both factor frames need Verified certificates unless the check is waived".into(),
                ));
            }
            Some(layout.bounds_tensor(&cl.bounds, &cr.bounds)?)
        }
        Certification::Waived => None,
    };
    let mut operators = Vec::with_capacity(left.len() * right.len());
    for t in left.operators() {
        for l in right.operators() {
            operators.push(layout.operator_tensor(t, l)?);
        }
    }
    let frame = OperatorFrame::new(operators)?;
    let predicted_operator = layout.operator_tensor(&left.frame_operator(), &right.frame_operator())?;
    let operator_residual = frame.frame_operator().distance(&predicted_operator)?;
    Ok(TensorFrame {
        layout,
        frame,
        predicted_operator,
        operator_residual,
        predicted_bounds,
    })
}
