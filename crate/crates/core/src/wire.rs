//! JSON wire shapes shared by every document: complex numbers are `[re, im]`,
//! matrices are row-major arrays of rows, algebra elements are arrays of blocks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::module::{ModuleOperator, ModuleVector};

pub type ComplexWire = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixWire(pub Vec<Vec<ComplexWire>>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementWire(pub Vec<MatrixWire>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorWire(pub Vec<ElementWire>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorWire(pub Vec<Vec<ElementWire>>);

impl From<&CMatrix> for MatrixWire {
    fn from(m: &CMatrix) -> Self {
        MatrixWire(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}

impl MatrixWire {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if let Some(r) = self.0.iter().position(|row| row.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "ragged matrix: row {r} has {} entries, expected {cols}",
                self.0[r].len()
            )));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            let [re, im] = self.0[i][j];
            Complex64::new(re, im)
        }))
    }
}

impl From<&AlgebraElement> for ElementWire {
    fn from(x: &AlgebraElement) -> Self {
        ElementWire(x.blocks().iter().map(MatrixWire::from).collect())
    }
}

impl From<AlgebraElement> for ElementWire {
    fn from(x: AlgebraElement) -> Self {
        ElementWire::from(&x)
    }
}

impl ElementWire {
    pub fn to_element(&self) -> Result<AlgebraElement> {
        AlgebraElement::from_blocks(self.0.iter().map(MatrixWire::to_matrix).collect::<Result<_>>()?)
    }

    /// Decodes and checks the block sizes against `shape`.
    pub fn to_element_of(&self, shape: &AlgebraShape) -> Result<AlgebraElement> {
        if self.0.len() != shape.num_blocks() {
            return Err(Error::shape(
                format!("{} blocks", shape.num_blocks()),
                format!("{} blocks", self.0.len()),
            ));
        }
        for (k, b) in self.0.iter().enumerate() {
            let n = shape.dim(k);
            let rows = b.0.len();
            if rows != n || b.0.iter().any(|r| r.len() != n) {
                return Err(Error::shape(
                    format!("block {k} of size {n}x{n}"),
                    format!("{rows} rows of lengths {:?}", b.0.iter().map(Vec::len).collect::<Vec<_>>()),
                ));
            }
        }
        self.to_element()
    }
}

impl TryFrom<ElementWire> for AlgebraElement {
    type Error = Error;
    fn try_from(w: ElementWire) -> Result<Self> {
        w.to_element()
    }
}

impl From<AlgebraShape> for Vec<usize> {
    fn from(s: AlgebraShape) -> Self {
        s.block_dims().to_vec()
    }
}

impl TryFrom<Vec<usize>> for AlgebraShape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        AlgebraShape::new(v)
    }
}

impl From<ModuleVector> for VectorWire {
    fn from(x: ModuleVector) -> Self {
        VectorWire(x.components().iter().map(ElementWire::from).collect())
    }
}

impl TryFrom<VectorWire> for ModuleVector {
    type Error = Error;
    fn try_from(w: VectorWire) -> Result<Self> {
        ModuleVector::new(w.0.iter().map(ElementWire::to_element).collect::<Result<_>>()?)
    }
}

impl From<&ModuleOperator> for OperatorWire {
    fn from(t: &ModuleOperator) -> Self {
        let d = t.dim();
        OperatorWire(
            (0..d)
                .map(|i| (0..d).map(|j| ElementWire::from(t.entry(i, j))).collect())
                .collect(),
        )
    }
}

impl From<ModuleOperator> for OperatorWire {
    fn from(t: ModuleOperator) -> Self {
        OperatorWire::from(&t)
    }
}

impl OperatorWire {
    /// Decodes against a known shape and module dimension.
    pub fn to_operator(&self, shape: &AlgebraShape, dim: usize) -> Result<ModuleOperator> {
        if self.0.len() != dim || self.0.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch {
                expected: format!("{dim}x{dim} entries"),
                found: format!("{} rows of lengths {:?}", self.0.len(), self.0.iter().map(Vec::len).collect::<Vec<_>>()),
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in self.0.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                entries.push(e.to_element_of(shape).map_err(|err| match err {
                    Error::ShapeMismatch { expected, found } => Error::ShapeMismatch {
                        expected: format!("entry ({i},{j}): {expected}"),
                        found,
                    },
                    other => other,
                })?);
            }
        }
        ModuleOperator::from_entries(shape, dim, entries)
    }
}

impl TryFrom<OperatorWire> for ModuleOperator {
    type Error = Error;
    fn try_from(w: OperatorWire) -> Result<Self> {
        let first = w
            .0
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::InvalidArgument("empty operator".into()))?
            .to_element()?;
        w.to_operator(first.shape(), w.0.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn element_json_shape() {
        let x = AlgebraElement::diagonal(&[vec![1.0, 2.0], vec![-0.5]]).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[2.0,0.0]]],[[[-0.5,0.0]]]]");
        let back: AlgebraElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn ragged_and_mismatched_input_is_rejected() {
        assert!(serde_json::from_str::<AlgebraElement>("[[[[1,0]],[[0,0],[1,0]]]]").is_err());
        let s = AlgebraShape::new(vec![2]).unwrap();
        let w: ElementWire = serde_json::from_str("[[[[1,0]]]]").unwrap();
        assert!(w.to_element_of(&s).is_err());
    }

    #[test]
    fn operator_and_vector_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let t = random::operator(&s, 2, &mut rng);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<ModuleOperator>(&json).unwrap(), t);
        let x = random::vector(&s, 3, &mut rng);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<ModuleVector>(&json).unwrap(), x);
    }
}
