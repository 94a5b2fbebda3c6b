//! Operator frames and *-operator frames over A^d.
//!
//! A finite family `{T_i}` is a *-operator frame with bounds `A`, `B` when
//! `A⟨ξ,ξ⟩A* ≤ Σ_i ⟨T_iξ, T_iξ⟩ ≤ B⟨ξ,ξ⟩B*` for every ξ. The analysis map
//! `R: ξ ↦ (T_iξ)_i` lands in `X^{|I|}` with the summed inner product, its
//! adjoint is the synthesis map, and `S = R*R = Σ T_i* T_i` is the frame operator.

mod bounds;
mod compose;
mod transport;
mod verify;

pub use bounds::{Bound, FrameBounds};
pub use compose::Composition;
pub use transport::{TransportOptions, TransportReport};
pub use verify::{FrameCertificate, Method, Side, Verdict, VerifyPolicy, DEFAULT_SAMPLES};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape, SpectralFunction};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::module::{ModuleOperator, ModuleVector};
use crate::random;

/// A nonempty finite family of adjointable operators on a common module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ModuleOperator>", into = "Vec<ModuleOperator>")]
pub struct OperatorFrame {
    shape: AlgebraShape,
    dim: usize,
    operators: Vec<ModuleOperator>,
}

impl TryFrom<Vec<ModuleOperator>> for OperatorFrame {
    type Error = Error;
    fn try_from(ops: Vec<ModuleOperator>) -> Result<Self> {
        OperatorFrame::new(ops)
    }
}

impl From<OperatorFrame> for Vec<ModuleOperator> {
    fn from(f: OperatorFrame) -> Self {
        f.operators
    }
}

/// An element of the finite model of l²(X): one vector per frame index.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameVectorList(pub Vec<ModuleVector>);

impl FrameVectorList {
    pub fn zero(shape: &AlgebraShape, dim: usize, len: usize) -> Self {
        FrameVectorList(vec![ModuleVector::zero(shape, dim); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Summed inner product `Σ_i ⟨ξ_i, η_i⟩`.
    pub fn inner_product(&self, other: &Self) -> Result<AlgebraElement> {
        if self.len() != other.len() || self.is_empty() {
            return Err(Error::shape(self.len(), other.len()));
        }
        let mut acc = AlgebraElement::zero(self.0[0].shape());
        for (x, y) in self.0.iter().zip(&other.0) {
            acc = acc.add(&x.inner_product(y)?)?;
        }
        Ok(acc)
    }
}

/// Spectral extremes of the frame operator: the optimal scalar frame bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarBounds {
    pub lower: f64,
    pub upper: f64,
    /// `(λ_min, λ_max)` of each realization block.
    pub per_block: Vec<(f64, f64)>,
}

impl ScalarBounds {
    pub(crate) fn from_operator(s: &ModuleOperator) -> Self {
        let per_block: Vec<(f64, f64)> = s
            .realize()
            .hermitian_spectrum()
            .iter()
            .map(|v| (v[0], v[v.len() - 1]))
            .collect();
        let lower = per_block.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let upper = per_block.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Self {
            lower,
            upper,
            per_block,
        }
    }

    /// A strictly positive lower bound certifies an operator frame.
    pub fn is_frame(&self, tol: f64) -> bool {
        self.lower > tol
    }
}

impl OperatorFrame {
    pub fn new(operators: Vec<ModuleOperator>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::InvalidArgument("a frame needs at least one operator".into()))?;
        let (shape, dim) = (first.shape().clone(), first.dim());
        for (i, t) in operators.iter().enumerate() {
            if t.shape() != &shape || t.dim() != dim {
                return Err(Error::ShapeMismatch {
                    expected: format!("{:?} with d = {dim}", shape.block_dims()),
                    found: format!("operator {i}: {:?} with d = {}", t.shape().block_dims(), t.dim()),
                });
            }
        }
        Ok(Self { shape, dim, operators })
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[ModuleOperator] {
        &self.operators
    }

    /// Frame transform `Rξ = (T_iξ)_i`.
    pub fn analysis(&self, x: &ModuleVector) -> Result<FrameVectorList> {
        Ok(FrameVectorList(
            self.operators.iter().map(|t| t.apply(x)).collect::<Result<_>>()?,
        ))
    }

    /// Adjoint of the frame transform: `(ξ_i)_i ↦ Σ_i T_i* ξ_i`.
    pub fn synthesis(&self, xs: &FrameVectorList) -> Result<ModuleVector> {
        if xs.len() != self.len() {
            return Err(Error::shape(
                format!("{} vectors", self.len()),
                format!("{} vectors", xs.len()),
            ));
        }
        let mut acc = ModuleVector::zero(&self.shape, self.dim);
        for (t, x) in self.operators.iter().zip(&xs.0) {
            acc = acc.add(&t.adjoint().apply(x)?)?;
        }
        Ok(acc)
    }

    /// `Σ_i ⟨T_iξ, T_iξ⟩`, evaluated through the frame transform.
    pub fn frame_sum(&self, x: &ModuleVector) -> Result<AlgebraElement> {
        let r = self.analysis(x)?;
        r.inner_product(&r)
    }

    /// `S = Σ_i T_i* ∘ T_i`.
    pub fn frame_operator(&self) -> ModuleOperator {
        self.operators
            .iter()
            .map(|t| t.adjoint().compose(t).expect("frame operators share a module"))
            .reduce(|a, b| a.add(&b).expect("same module"))
            .expect("frame is nonempty")
    }

    pub fn optimal_scalar_bounds(&self) -> ScalarBounds {
        ScalarBounds::from_operator(&self.frame_operator())
    }

    /// `p̂_k(R)` per block: the largest singular value of the stacked realization
    /// `[realize(T_1); …; realize(T_n)]`, computed without forming `S`.
    pub fn analysis_norms(&self) -> Vec<f64> {
        let realized: Vec<AlgebraElement> = self.operators.iter().map(|t| t.realize()).collect();
        (0..self.shape.num_blocks())
            .map(|k| {
                let n = realized[0].block(k).nrows();
                let mut stacked = CMatrix::zeros(n * self.len(), n);
                for (i, r) in realized.iter().enumerate() {
                    stacked.view_mut((i * n, 0), (n, n)).copy_from(r.block(k));
                }
                linalg::op_norm(&stacked)
            })
            .collect()
    }

    fn require_frame(&self, s: &ModuleOperator, tol: f64) -> Result<ScalarBounds> {
        let b = ScalarBounds::from_operator(s);
        if !b.is_frame(tol) {
            let block = b
                .per_block
                .iter()
                .enumerate()
                .min_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
                .map_or(0, |(k, _)| k);
            return Err(Error::Singular {
                block,
                min_value: b.lower,
                threshold: tol,
            });
        }
        Ok(b)
    }

    fn map_operators(&self, f: impl Fn(&ModuleOperator) -> Result<ModuleOperator>) -> Result<Self> {
        Self::new(self.operators.iter().map(f).collect::<Result<_>>()?)
    }

    /// Canonical dual `{T_i S⁻¹}`.
    pub fn canonical_dual(&self, tol: f64) -> Result<Self> {
        let s = self.frame_operator();
        self.require_frame(&s, tol)?;
        let s_inv = s.inverse(tol)?;
        self.map_operators(|t| t.compose(&s_inv))
    }

    /// Parseval normalization `{T_i S^{-1/2}}`.
    pub fn parseval_normalize(&self, tol: f64) -> Result<Self> {
        let s = self.frame_operator();
        self.require_frame(&s, tol)?;
        let s_inv_sqrt = s.func_calc(SpectralFunction::InvSqrt, tol)?;
        self.map_operators(|t| t.compose(&s_inv_sqrt))
    }

    /// The operator frame attached to a *-frame `{ξ_i}` of A over itself:
    /// `T_iξ = ⟨ξ, ξ_i⟩ = ξ ξ_i*`, with adjoint `a ↦ a ξ_i`.
    pub fn from_star_frame(xs: &[AlgebraElement]) -> Result<Self> {
        let first = xs
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty *-frame".into()))?;
        let shape = first.shape().clone();
        Self::new(
            xs.iter()
                .map(|x| ModuleOperator::from_entries(&shape, 1, vec![x.adjoint()]))
                .collect::<Result<_>>()?,
        )
    }

    /// Seeded random frame whose frame operator has realization spectrum inside
    /// `[lo, hi]`.
    ///
    /// Per block a positive `S` with the prescribed spectrum is drawn, and the
    /// operators are `W_i S^{1/2}` where the `W_i` are the slices of a random
    /// isometry, so that `Σ W_i* W_i = I`.
    pub fn random(shape: &AlgebraShape, dim: usize, count: usize, lo: f64, hi: f64, seed: u64) -> Result<Self> {
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "spectrum range [{lo}, {hi}] must satisfy 0 < lo <= hi"
            )));
        }
        if count == 0 || dim == 0 {
            return Err(Error::InvalidArgument("count and module dimension must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amplified = shape.amplified(dim);
        let mut per_op: Vec<Vec<CMatrix>> = vec![Vec::new(); count];
        for &n in amplified.block_dims() {
            let vals: Vec<f64> = (0..n).map(|_| random::uniform(lo, hi, &mut rng)).collect();
            let sqrt_vals: Vec<f64> = vals.iter().map(|v| v.sqrt()).collect();
            let u = random::unitary(n, &mut rng);
            let root = linalg::from_eigen(&sqrt_vals, &u);
            let w = random::isometry(count * n, n, &mut rng);
            for (i, slot) in per_op.iter_mut().enumerate() {
                slot.push(w.rows(i * n, n) * &root);
            }
        }
        let operators = per_op
            .into_iter()
            .map(|blocks| ModuleOperator::from_realization(shape, dim, &AlgebraElement::from_blocks(blocks)?))
            .collect::<Result<_>>()?;
        Self::new(operators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TOLERANCE;
    use num_complex::Complex64;

    fn shape() -> AlgebraShape {
        AlgebraShape::new(vec![2, 1]).unwrap()
    }

    fn scalar_op(c: f64) -> ModuleOperator {
        ModuleOperator::scalar(&shape(), 2, Complex64::new(c, 0.0))
    }

    #[test]
    fn identity_frame_analysis_and_synthesis() {
        let f = OperatorFrame::new(vec![scalar_op(1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let x = random::vector(&shape(), 2, &mut rng);
        assert_eq!(f.analysis(&x).unwrap(), FrameVectorList(vec![x.clone()]));
        assert_eq!(f.synthesis(&FrameVectorList(vec![x.clone()])).unwrap(), x);
        let z = OperatorFrame::new(vec![scalar_op(0.0), scalar_op(0.0)]).unwrap();
        assert_eq!(z.analysis(&x).unwrap(), FrameVectorList::zero(&shape(), 2, 2));
        assert_eq!(
            f.synthesis(&FrameVectorList::zero(&shape(), 2, 1)).unwrap(),
            ModuleVector::zero(&shape(), 2)
        );
        assert!(f.synthesis(&FrameVectorList::zero(&shape(), 2, 2)).is_err());
    }

    #[test]
    fn frame_operators_of_scalar_frames() {
        let f = OperatorFrame::new(vec![scalar_op(1.0)]).unwrap();
        assert!(f.frame_operator().distance(&scalar_op(1.0)).unwrap() < 1e-15);
        let f2 = OperatorFrame::new(vec![scalar_op(1.0), scalar_op(1.0)]).unwrap();
        assert!(f2.frame_operator().distance(&scalar_op(2.0)).unwrap() < 1e-15);
        let b = OperatorFrame::new(vec![scalar_op(1.0), scalar_op(2.0)]).unwrap().optimal_scalar_bounds();
        assert!((b.lower - 5.0).abs() < 1e-12 && (b.upper - 5.0).abs() < 1e-12);
    }

    #[test]
    fn dual_and_parseval_of_scalar_frames() {
        let f = OperatorFrame::new(vec![scalar_op(2.0)]).unwrap();
        let dual = f.canonical_dual(DEFAULT_TOLERANCE).unwrap();
        assert!(dual.operators()[0].distance(&scalar_op(0.5)).unwrap() < 1e-14);
        assert!(dual.frame_operator().distance(&scalar_op(0.25)).unwrap() < 1e-14);

        let g = OperatorFrame::new(vec![scalar_op(1.0), scalar_op(1.0)]).unwrap();
        let p = g.parseval_normalize(DEFAULT_TOLERANCE).unwrap();
        for t in p.operators() {
            assert!(t.distance(&scalar_op(std::f64::consts::FRAC_1_SQRT_2)).unwrap() < 1e-14);
        }
        let zero = OperatorFrame::new(vec![scalar_op(0.0)]).unwrap();
        assert!(matches!(zero.canonical_dual(1e-9), Err(Error::Singular { .. })));
        assert!(matches!(zero.parseval_normalize(1e-9), Err(Error::Singular { .. })));
    }

    #[test]
    fn mixed_modules_are_rejected() {
        let other = ModuleOperator::identity(&shape(), 3);
        assert!(matches!(
            OperatorFrame::new(vec![scalar_op(1.0), other]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(OperatorFrame::new(vec![]).is_err());
    }

    #[test]
    fn random_frame_contract() {
        let f = OperatorFrame::random(&shape(), 2, 1, 1.0, 1.0, 7).unwrap();
        assert!(f.frame_operator().distance(&scalar_op(1.0)).unwrap() < 1e-12);
        let g = OperatorFrame::random(&shape(), 3, 4, 0.5, 4.0, 9).unwrap();
        let b = g.optimal_scalar_bounds();
        assert!(b.lower >= 0.5 - 1e-8 && b.upper <= 4.0 + 1e-8);
        assert_eq!(g, OperatorFrame::random(&shape(), 3, 4, 0.5, 4.0, 9).unwrap());
        assert!(OperatorFrame::random(&shape(), 2, 2, 0.0, 1.0, 1).is_err());
        assert!(OperatorFrame::random(&shape(), 2, 2, 2.0, 1.0, 1).is_err());
    }

    #[test]
    fn star_frame_construction() {
        let s = shape();
        let f = OperatorFrame::from_star_frame(&[AlgebraElement::unit(&s)]).unwrap();
        assert_eq!(f.operators()[0], ModuleOperator::identity(&s, 1));
        let z = OperatorFrame::from_star_frame(&[AlgebraElement::zero(&s)]).unwrap();
        assert_eq!(z.frame_operator(), ModuleOperator::zero(&s, 1));
    }
}
