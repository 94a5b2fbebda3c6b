//! Operator frames on Hilbert modules over finite direct sums of complex matrix
//! algebras `A = ⊕_k M_{n_k}(ℂ)`.
//!
//! The module is `A^d` with `⟨ξ, η⟩ = Σ_i ξ_i η_i*`. Operators are `d × d`
//! matrices over `A` acting on the right, `(Tξ)_j = Σ_i ξ_i M_ij`, and every
//! spectral question is answered on the faithful realization of an operator as
//! an element of `⊕_k M_{d·n_k}(ℂ)`.
//!
//! ```
//! use starframe::algebra::AlgebraShape;
//! use starframe::frame::{FrameBounds, OperatorFrame, VerifyPolicy};
//!
//! let shape = AlgebraShape::new(vec![2, 1]).unwrap();
//! let frame = OperatorFrame::random(&shape, 2, 3, 0.5, 2.0, 7).unwrap();
//! let bounds = FrameBounds::scalar(0.5, 2.0).unwrap();
//! let cert = frame.verify_bounds(&bounds, VerifyPolicy::default(), 1e-9).unwrap();
//! assert!(cert.is_verified());
//! ```

pub mod algebra;
pub mod cli;
pub mod document;
pub mod error;
pub mod frame;
pub mod hom;
pub mod linalg;
pub mod module;
pub mod random;
pub mod tensor;
pub mod wire;

pub use algebra::{AlgebraElement, AlgebraShape, SpectralFunction, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use frame::{FrameBounds, FrameCertificate, OperatorFrame, Verdict, VerifyPolicy};
pub use hom::StarHomomorphism;
pub use module::{ModuleOperator, ModuleVector};
