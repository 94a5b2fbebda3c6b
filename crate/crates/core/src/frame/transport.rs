//! Transport of a frame along a *-homomorphism φ: A → B.
//!
//! The module map θ is induced by φ componentwise on A^d, and each operator is
//! transported by applying φ to its matrix entries, so that `θT_i = T_i^Bθ`.
//! Checks are carried out on vectors in the range of θ, which is where the
//! transported inequalities are claimed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::verify::side_holds;
use super::{Bound, FrameBounds, OperatorFrame, Side};
use crate::algebra::{AlgebraElement, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::hom::StarHomomorphism;
use crate::module::ModuleVector;
use crate::random;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransportOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Reject homomorphisms that are not onto B.
    pub require_surjective: bool,
}

impl Default for TransportOptions {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
            tol: DEFAULT_TOLERANCE,
            require_surjective: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportReport {
    pub samples: usize,
    pub seed: u64,
    pub surjective: bool,
    /// Largest `‖⟨S_Bθξ, θη⟩ − φ(⟨S_Aξ, η⟩)‖` over the sampled pairs.
    pub max_identity_residual: f64,
    pub identity_tolerance: f64,
    pub identity_holds: bool,
    /// `φ(A)`, `φ(B)` when bounds were supplied.
    pub lower_bound: Option<AlgebraElement>,
    pub upper_bound: Option<AlgebraElement>,
    pub bound_checks: usize,
    pub bound_falsifications: usize,
}

fn close(a: &AlgebraElement, b: &AlgebraElement, tol: f64) -> Result<bool> {
    Ok(a.distance(b)? <= tol * (1.0 + b.norm_inf()))
}

impl OperatorFrame {
    /// Transports the frame along `phi`, returning the frame on B^d and a sampled
    /// verification of `⟨S_Bθξ, θη⟩ = φ(⟨S_Aξ, η⟩)` and of the bounds `φ(A)`, `φ(B)`.
    pub fn transport(
        &self,
        phi: &StarHomomorphism,
        bounds: Option<&FrameBounds>,
        opts: TransportOptions,
    ) -> Result<(OperatorFrame, TransportReport)> {
        self.shape().ensure_same(phi.source_shape())?;
        if opts.require_surjective && !phi.is_surjective() {
            return Err(Error::Precondition(
                "homomorphism is not surjective, so the induced θ is not onto the target module".into(),
            ));
        }
        let target = OperatorFrame::new(
            self.operators()
                .iter()
                .map(|t| phi.apply_operator(t))
                .collect::<Result<_>>()?,
        )?;
        let report = self.transport_checks(&target, phi, &|x| phi.apply_vector(x), bounds, opts)?;
        Ok((target, report))
    }

    /// Variant with a caller-supplied θ and target frame. The hypotheses
    /// `⟨θξ, θη⟩_B = φ(⟨ξ, η⟩_A)` and `θT_i = T_i^Bθ` are sampled first; a
    /// commutation failure names the offending operator index.
    pub fn transport_with<F>(
        &self,
        target: &OperatorFrame,
        phi: &StarHomomorphism,
        theta: F,
        bounds: Option<&FrameBounds>,
        opts: TransportOptions,
    ) -> Result<TransportReport>
    where
        F: Fn(&ModuleVector) -> Result<ModuleVector>,
    {
        self.shape().ensure_same(phi.source_shape())?;
        target.shape().ensure_same(phi.target_shape())?;
        if target.len() != self.len() || target.dim() != self.dim() {
            return Err(Error::mismatch(
                format!("{} operators on d = {}", self.len(), self.dim()),
                format!("{} operators on d = {}", target.len(), target.dim()),
            ));
        }
        if opts.require_surjective && !phi.is_surjective() {
            return Err(Error::Precondition("homomorphism is not surjective".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
        for _ in 0..opts.samples {
            let x = random::vector(self.shape(), self.dim(), &mut rng);
            let y = random::vector(self.shape(), self.dim(), &mut rng);
            let (tx, ty) = (theta(&x)?, theta(&y)?);
            if !close(&tx.inner_product(&ty)?, &phi.apply(&x.inner_product(&y)?)?, opts.tol)? {
                return Err(Error::Structural(
                    "θ does not intertwine the inner products through φ".into(),
                ));
            }
            for (i, (ta, tb)) in self.operators().iter().zip(target.operators()).enumerate() {
                let lhs = theta(&ta.apply(&x)?)?;
                let rhs = tb.apply(&tx)?;
                if lhs.distance(&rhs)? > opts.tol * (1.0 + rhs.components().iter().map(|c| c.norm_inf()).fold(0.0, f64::max)) {
                    return Err(Error::Structural(format!("θ does not commute with operator {i}")));
                }
            }
        }
        self.transport_checks(target, phi, &theta, bounds, opts)
    }

    fn transport_checks(
        &self,
        target: &OperatorFrame,
        phi: &StarHomomorphism,
        theta: &dyn Fn(&ModuleVector) -> Result<ModuleVector>,
        bounds: Option<&FrameBounds>,
        opts: TransportOptions,
    ) -> Result<TransportReport> {
        if let Some(b) = bounds {
            b.check_shape(self.shape())?;
        }
        let transported = bounds
            .map(|b| -> Result<FrameBounds> {
                Ok(FrameBounds::from_parts_unchecked(
                    Bound::Element(phi.apply(&b.lower().to_element(self.shape()))?),
                    Bound::Element(phi.apply(&b.upper().to_element(self.shape()))?),
                ))
            })
            .transpose()?;

        let s_a = self.frame_operator();
        let s_b = target.frame_operator();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut max_residual: f64 = 0.0;
        let mut identity_holds = true;
        let mut checks = 0;
        let mut falsifications = 0;
        for _ in 0..opts.samples {
            let x = random::vector(self.shape(), self.dim(), &mut rng);
            let y = random::vector(self.shape(), self.dim(), &mut rng);
            let (tx, ty) = (theta(&x)?, theta(&y)?);
            let lhs = s_b.apply(&tx)?.inner_product(&ty)?;
            let rhs = phi.apply(&s_a.apply(&x)?.inner_product(&y)?)?;
            let residual = lhs.distance(&rhs)?;
            max_residual = max_residual.max(residual);
            identity_holds &= residual <= opts.tol * (1.0 + rhs.norm_inf());

            if let Some(tb) = &transported {
                for side in [Side::Lower, Side::Upper] {
                    checks += 1;
                    if !side_holds(target, tb, side, &tx, opts.tol)? {
                        falsifications += 1;
                    }
                }
            }
        }
        let (lower_bound, upper_bound) = match transported {
            Some(tb) => (
                Some(tb.lower().to_element(phi.target_shape())),
                Some(tb.upper().to_element(phi.target_shape())),
            ),
            None => (None, None),
        };
        Ok(TransportReport {
            samples: opts.samples,
            seed: opts.seed,
            surjective: phi.is_surjective(),
            max_identity_residual: max_residual,
            identity_tolerance: opts.tol,
            identity_holds,
            lower_bound,
            upper_bound,
            bound_checks: checks,
            bound_falsifications: falsifications,
        })
    }
}
