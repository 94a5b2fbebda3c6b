use serde::{Deserialize, Serialize};

use super::{FrameBounds, OperatorFrame};
use crate::error::{Error, Result};
use crate::module::ModuleOperator;

/// Result of composing every frame operator with a fixed θ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Composition {
    pub frame: OperatorFrame,
    /// `θ* S θ` for right composition; absent for left composition.
    pub predicted_operator: Option<ModuleOperator>,
    /// Distance between `predicted_operator` and the new frame operator.
    pub operator_residual: Option<f64>,
    /// Sufficient bounds obtained by rescaling the input bounds.
    pub predicted_bounds: FrameBounds,
    /// Scalar envelope the new optimal bounds must fall into.
    pub envelope: (f64, f64),
}

impl OperatorFrame {
    fn require_invertible(&self, theta: &ModuleOperator, what: &str, tol: f64) -> Result<()> {
        self.shape().ensure_same(theta.shape())?;
        if theta.dim() != self.dim() {
            return Err(Error::mismatch(format!("dim {}", self.dim()), format!("dim {}", theta.dim())));
        }
        let norms = theta.norms();
        let threshold = tol * (1.0 + norms.norm_inf);
        if norms.min_modulus <= threshold {
            return Err(Error::Precondition(format!(
                "θ is not {what}: min singular value {:.3e} <= threshold {threshold:.3e}",
                norms.min_modulus
            )));
        }
        Ok(())
    }

    /// `{T_i θ}` for θ injective with closed range; frame operator `θ* S θ`, bounds
    /// `‖(θ*θ)⁻¹‖^{-1/2} A` and `‖θ‖ B`.
    pub fn compose_right(&self, theta: &ModuleOperator, bounds: &FrameBounds, tol: f64) -> Result<Composition> {
        self.require_invertible(theta, "injective with closed range", tol)?;
        bounds.check_shape(self.shape())?;
        let frame = Self::new(
            self.operators()
                .iter()
                .map(|t| t.compose(theta))
                .collect::<Result<_>>()?,
        )?;
        let s = self.frame_operator();
        let predicted = theta.adjoint().compose(&s)?.compose(theta)?;
        let residual = predicted.distance(&frame.frame_operator())?;

        let gram_inv_norm = theta.adjoint().compose(theta)?.inverse(tol)?.norms().norm_inf;
        let theta_norm = theta.norms().norm_inf;
        let optimal = self.optimal_scalar_bounds();
        Ok(Composition {
            frame,
            predicted_operator: Some(predicted),
            operator_residual: Some(residual),
            predicted_bounds: FrameBounds::from_parts_unchecked(
                bounds.lower().scaled(gram_inv_norm.powf(-0.5)),
                bounds.upper().scaled(theta_norm),
            ),
            envelope: (optimal.lower / gram_inv_norm, theta_norm * theta_norm * optimal.upper),
        })
    }

    /// `{θ T_i}` for θ surjective; bounds `A ‖(θθ*)⁻¹‖^{-1/2}` and `B ‖θ‖`.
    pub fn compose_left(&self, theta: &ModuleOperator, bounds: &FrameBounds, tol: f64) -> Result<Composition> {
        self.require_invertible(theta, "surjective", tol)?;
        bounds.check_shape(self.shape())?;
        let frame = Self::new(
            self.operators()
                .iter()
                .map(|t| theta.compose(t))
                .collect::<Result<_>>()?,
        )?;
        let gram_inv_norm = theta.compose(&theta.adjoint())?.inverse(tol)?.norms().norm_inf;
        let theta_norm = theta.norms().norm_inf;
        let optimal = self.optimal_scalar_bounds();
        Ok(Composition {
            frame,
            predicted_operator: None,
            operator_residual: None,
            predicted_bounds: FrameBounds::from_parts_unchecked(
                bounds.lower().scaled(gram_inv_norm.powf(-0.5)),
                bounds.upper().scaled(theta_norm),
            ),
            envelope: (optimal.lower / gram_inv_norm, theta_norm * theta_norm * optimal.upper),
        })
    }
}
