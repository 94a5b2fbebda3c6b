use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};

/// One side of a *-operator frame inequality.
///
/// `Scalar(c)` stands for the element `√c · 1_A`, so the side reads `c⟨ξ,ξ⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Scalar(f64),
    Element(AlgebraElement),
}

impl Bound {
    /// The algebra element this bound denotes.
    pub fn to_element(&self, shape: &AlgebraShape) -> AlgebraElement {
        match self {
            Bound::Scalar(c) => AlgebraElement::scalar(shape, Complex64::new(c.sqrt(), 0.0)),
            Bound::Element(a) => a.clone(),
        }
    }

    /// `B x B*`.
    pub fn sandwich(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        match self {
            Bound::Scalar(c) => Ok(x.scale_real(*c)),
            Bound::Element(b) => b.mul(x)?.mul(&b.adjoint()),
        }
    }

    /// Multiplies the bound element by a nonnegative real `s`.
    pub fn scaled(&self, s: f64) -> Bound {
        match self {
            Bound::Scalar(c) => Bound::Scalar(c * s * s),
            Bound::Element(a) => Bound::Element(a.scale_real(s)),
        }
    }

    /// Blockwise values of `BB*` when the bound is central (blockwise scalar).
    pub fn central_squares(&self, shape: &AlgebraShape, tol: f64) -> Option<Vec<f64>> {
        match self {
            Bound::Scalar(c) => Some(vec![*c; shape.num_blocks()]),
            Bound::Element(a) => a
                .central_values(tol)
                .map(|v| v.iter().map(|z| z.norm_sqr()).collect()),
        }
    }

    fn check(&self, positive: bool) -> Result<()> {
        match self {
            Bound::Scalar(c) if !(c.is_finite() && *c > 0.0) => Err(Error::InvalidArgument(format!(
                "scalar frame bound must be a positive real, got {c}"
            ))),
            Bound::Scalar(_) => Ok(()),
            Bound::Element(a) => {
                if !a.is_invertible(DEFAULT_TOLERANCE) {
                    return Err(Error::InvalidArgument(format!(
                        "element frame bound is not invertible (min singular value {:.3e})",
                        a.min_modulus()
                    )));
                }
                if positive && !a.is_positive(DEFAULT_TOLERANCE) {
                    return Err(Error::InvalidArgument(
                        "element frame bound is not positive; use FrameBounds::general for other invertibles".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Lower and upper bounds `A`, `B` of a *-operator frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    lower: Bound,
    upper: Bound,
}

impl FrameBounds {
    /// Bounds whose element values are positive and invertible.
    pub fn new(lower: Bound, upper: Bound) -> Result<Self> {
        lower.check(true)?;
        upper.check(true)?;
        Self::same_shape(lower, upper)
    }

    /// Bounds whose element values are merely invertible.
    pub fn general(lower: Bound, upper: Bound) -> Result<Self> {
        lower.check(false)?;
        upper.check(false)?;
        Self::same_shape(lower, upper)
    }

    pub fn scalar(lower: f64, upper: f64) -> Result<Self> {
        Self::new(Bound::Scalar(lower), Bound::Scalar(upper))
    }

    fn same_shape(lower: Bound, upper: Bound) -> Result<Self> {
        if let (Bound::Element(a), Bound::Element(b)) = (&lower, &upper) {
            a.shape().ensure_same(b.shape())?;
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &Bound {
        &self.lower
    }

    pub fn upper(&self) -> &Bound {
        &self.upper
    }

    pub(crate) fn check_shape(&self, shape: &AlgebraShape) -> Result<()> {
        for b in [&self.lower, &self.upper] {
            if let Bound::Element(a) = b {
                shape.ensure_same(a.shape())?;
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(lower: Bound, upper: Bound) -> Self {
        Self { lower, upper }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_bounds_must_be_positive() {
        assert!(FrameBounds::scalar(1.0, 2.0).is_ok());
        assert!(FrameBounds::scalar(0.0, 2.0).is_err());
        assert!(FrameBounds::scalar(1.0, f64::NAN).is_err());
    }

    #[test]
    fn element_bounds_are_validated() {
        let s = AlgebraShape::new(vec![2]).unwrap();
        let neg = AlgebraElement::diagonal(&[vec![1.0, -2.0]]).unwrap();
        assert!(FrameBounds::new(Bound::Element(neg.clone()), Bound::Scalar(1.0)).is_err());
        assert!(FrameBounds::general(Bound::Element(neg), Bound::Scalar(1.0)).is_ok());
        let singular = AlgebraElement::diagonal(&[vec![1.0, 0.0]]).unwrap();
        assert!(FrameBounds::general(Bound::Element(singular), Bound::Scalar(1.0)).is_err());
        let one = AlgebraElement::unit(&s);
        assert!(FrameBounds::new(Bound::Element(one.clone()), Bound::Element(one)).is_ok());
    }

    #[test]
    fn scalar_embedding() {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let b = Bound::Scalar(4.0);
        assert_eq!(b.to_element(&s), AlgebraElement::scalar(&s, Complex64::new(2.0, 0.0)));
        assert_eq!(b.central_squares(&s, 1e-9), Some(vec![4.0, 4.0]));
        assert_eq!(b.scaled(3.0), Bound::Scalar(36.0));
        let e = Bound::Element(b.to_element(&s));
        let sq = e.central_squares(&s, 1e-9).unwrap();
        assert!(sq.iter().all(|v| (v - 4.0).abs() < 1e-12));
    }
}
