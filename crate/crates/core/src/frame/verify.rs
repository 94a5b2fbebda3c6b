//! Bound verification and certificates.
//!
//! Scalar or central bounds reduce the frame inequality to the operator
//! inequalities `a_k·I ⪯ realize(S)_k ⪯ b_k·I`, which are decided exactly by an
//! eigensolve. General element bounds are probed by seeded sampling, which can
//! falsify but never verify.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FrameBounds, OperatorFrame, ScalarBounds};
use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::frame::Bound;
use crate::linalg::{self, CMatrix};
use crate::module::ModuleVector;
use crate::random;

/// Random vectors drawn per seminorm block when sampling.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Falsified {
        witness: ModuleVector,
        side: Side,
        block: usize,
    },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    ExactPsd,
    Sampling { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyPolicy {
    /// Exact for central bounds, sampling for the rest.
    ExactIfCentral { samples: usize, seed: u64 },
    /// Sampling for every side, even central ones.
    Sampling { samples: usize, seed: u64 },
    /// Exact for central bounds; other sides are left undetermined.
    ExactOnly,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy::ExactIfCentral {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Evidence produced by [`OperatorFrame::verify_bounds`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub optimal_scalar_bounds: ScalarBounds,
    pub tolerance: f64,
    pub bounds: FrameBounds,
}

impl FrameCertificate {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// Re-evaluates a falsifying witness from scratch. Returns `Ok(true)` when the
    /// witness still violates the recorded side, `Ok(false)` otherwise (including
    /// certificates that carry no witness).
    pub fn replay(&self, frame: &OperatorFrame) -> Result<bool> {
        match &self.verdict {
            Verdict::Falsified { witness, side, .. } => {
                Ok(!side_holds(frame, &self.bounds, *side, witness, self.tolerance)?)
            }
            _ => Ok(false),
        }
    }
}

fn bound_for(bounds: &FrameBounds, side: Side) -> &Bound {
    match side {
        Side::Lower => bounds.lower(),
        Side::Upper => bounds.upper(),
    }
}

/// Whether one side of the frame inequality holds at `x`, evaluated from the
/// definition `Σ ⟨T_iξ, T_iξ⟩`.
pub(crate) fn side_holds(frame: &OperatorFrame, bounds: &FrameBounds, side: Side, x: &ModuleVector, tol: f64) -> Result<bool> {
    let sum = frame.frame_sum(x)?;
    let ip = x.inner_product(x)?;
    let bounded = bound_for(bounds, side).sandwich(&ip)?;
    match side {
        Side::Lower => bounded.order_leq(&sum, tol),
        Side::Upper => sum.order_leq(&bounded, tol),
    }
}

/// Vector supported on block `k` whose column realization is `col`.
fn vector_on_block(frame: &OperatorFrame, k: usize, col: CMatrix) -> Result<ModuleVector> {
    let columns: Vec<CMatrix> = frame
        .shape()
        .block_dims()
        .iter()
        .enumerate()
        .map(|(j, &n)| if j == k { col.clone() } else { CMatrix::zeros(frame.dim() * n, n) })
        .collect();
    ModuleVector::from_realization(frame.shape(), frame.dim(), &columns)
}

fn exact_violation(
    frame: &OperatorFrame,
    realized_s: &AlgebraElement,
    side: Side,
    squares: &[f64],
    tol: f64,
) -> Result<Option<(usize, ModuleVector)>> {
    for (k, r) in realized_s.blocks().iter().enumerate() {
        let id = linalg::identity(r.nrows()).scale(squares[k]);
        let gap = match side {
            Side::Lower => r - id,
            Side::Upper => id - r,
        };
        let slack = tol * (1.0 + linalg::op_norm(&gap));
        let (vals, vecs) = linalg::hermitian_eigen(&gap);
        if vals[0] < -slack {
            let n = frame.shape().dim(k);
            let mut col = CMatrix::zeros(r.nrows(), n);
            col.set_column(0, &vecs.column(0));
            return Ok(Some((k, vector_on_block(frame, k, col)?)));
        }
    }
    Ok(None)
}

/// Canonical basis stacks first, then seeded random vectors (alternating full
/// and rank-one realizations, unit Frobenius norm).
fn sample_vectors(frame: &OperatorFrame, k: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleVector>> {
    let n = frame.shape().dim(k);
    let rows = frame.dim() * n;
    let mut out = Vec::with_capacity(rows + samples);
    for r in 0..rows {
        let mut col = CMatrix::zeros(rows, n);
        col[(r, 0)] = num_complex::Complex64::new(1.0, 0.0);
        out.push(vector_on_block(frame, k, col)?);
    }
    for s in 0..samples {
        let col = if s % 2 == 0 {
            random::gaussian_matrix(rows, n, rng)
        } else {
            random::gaussian_matrix(rows, 1, rng) * random::gaussian_matrix(1, n, rng)
        };
        let norm = col.norm();
        out.push(vector_on_block(frame, k, col.unscale(norm.max(f64::MIN_POSITIVE)))?);
    }
    Ok(out)
}

impl OperatorFrame {
    /// Checks `A⟨ξ,ξ⟩A* ≤ Σ⟨T_iξ,T_iξ⟩ ≤ B⟨ξ,ξ⟩B*`.
    ///
    /// The verdict is `Verified` only when every side was decided exactly. A
    /// sampled side that survives all samples yields `Undetermined`.
    pub fn verify_bounds(&self, bounds: &FrameBounds, policy: VerifyPolicy, tol: f64) -> Result<FrameCertificate> {
        bounds.check_shape(self.shape())?;
        let s = self.frame_operator();
        let realized = s.realize();
        let optimal = ScalarBounds::from_operator(&s);
        let certificate = |verdict, method| FrameCertificate {
            verdict,
            method,
            optimal_scalar_bounds: optimal.clone(),
            tolerance: tol,
            bounds: bounds.clone(),
        };

        let exact_allowed = !matches!(policy, VerifyPolicy::Sampling { .. });
        let mut sampled = Vec::new();
        for side in [Side::Lower, Side::Upper] {
            let squares = bound_for(bounds, side).central_squares(self.shape(), tol);
            match squares.filter(|_| exact_allowed) {
                Some(sq) => {
                    if let Some((block, witness)) = exact_violation(self, &realized, side, &sq, tol)? {
                        return Ok(certificate(Verdict::Falsified { witness, side, block }, Method::ExactPsd));
                    }
                }
                None => sampled.push(side),
            }
        }
        if sampled.is_empty() {
            return Ok(certificate(Verdict::Verified, Method::ExactPsd));
        }
        let (samples, seed) = match policy {
            VerifyPolicy::ExactOnly => return Ok(certificate(Verdict::Undetermined, Method::ExactPsd)),
            VerifyPolicy::ExactIfCentral { samples, seed } | VerifyPolicy::Sampling { samples, seed } => (samples, seed),
        };
        let method = Method::Sampling { samples, seed };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..self.shape().num_blocks() {
            for x in sample_vectors(self, k, samples, &mut rng)? {
                for &side in &sampled {
                    if !side_holds(self, bounds, side, &x, tol)? {
                        return Ok(certificate(
                            Verdict::Falsified { witness: x, side, block: k },
                            method,
                        ));
                    }
                }
            }
        }
        Ok(certificate(Verdict::Undetermined, method))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
    use crate::module::ModuleOperator;

    fn identity_frame() -> OperatorFrame {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        OperatorFrame::new(vec![ModuleOperator::identity(&s, 2)]).unwrap()
    }

    #[test]
    fn identity_frame_is_parseval() {
        let f = identity_frame();
        let cert = f
            .verify_bounds(&FrameBounds::scalar(1.0, 1.0).unwrap(), VerifyPolicy::default(), DEFAULT_TOLERANCE)
            .unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        assert_eq!(cert.method, Method::ExactPsd);
    }

    #[test]
    fn inflated_lower_bound_is_falsified_with_unit_witness() {
        let f = identity_frame();
        let cert = f
            .verify_bounds(&FrameBounds::scalar(2.0, 3.0).unwrap(), VerifyPolicy::default(), DEFAULT_TOLERANCE)
            .unwrap();
        let Verdict::Falsified { witness, side, .. } = &cert.verdict else {
            panic!("expected falsified, got {:?}", cert.verdict)
        };
        assert_eq!(*side, Side::Lower);
        let ip = witness.inner_product(witness).unwrap();
        assert!((ip.norm_inf() - 1.0).abs() < 1e-12);
        assert!(cert.replay(&f).unwrap());
    }

    #[test]
    fn sampling_never_verifies() {
        let f = identity_frame();
        let cert = f
            .verify_bounds(
                &FrameBounds::scalar(0.5, 2.0).unwrap(),
                VerifyPolicy::Sampling { samples: 20, seed: 1 },
                DEFAULT_TOLERANCE,
            )
            .unwrap();
        assert_eq!(cert.verdict, Verdict::Undetermined);
        assert_eq!(cert.method, Method::Sampling { samples: 20, seed: 1 });
        assert!(!cert.replay(&f).unwrap());
    }

    #[test]
    fn non_central_bound_is_sampled_and_falsified() {
        let f = identity_frame();
        let a = AlgebraElement::diagonal(&[vec![0.5, 1.0], vec![0.5]]).unwrap();
        let bounds = FrameBounds::new(Bound::Element(a), Bound::Scalar(1.0)).unwrap();
        let cert = f.verify_bounds(&bounds, VerifyPolicy::default(), DEFAULT_TOLERANCE).unwrap();
        assert!(matches!(cert.verdict, Verdict::Falsified { side: Side::Lower, .. }));
        assert!(cert.replay(&f).unwrap());
        let exact_only = f.verify_bounds(&bounds, VerifyPolicy::ExactOnly, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(exact_only.verdict, Verdict::Undetermined);
    }

    #[test]
    fn certificate_json_round_trip() {
        let f = identity_frame();
        let cert = f
            .verify_bounds(&FrameBounds::scalar(2.0, 3.0).unwrap(), VerifyPolicy::default(), DEFAULT_TOLERANCE)
            .unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: FrameCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
