// The frame `{T_i ⊗ L_j}` on the external tensor product of two modules.

use starframe::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
use starframe::frame::{FrameBounds, OperatorFrame, VerifyPolicy};
use starframe::tensor::{frame_tensor, Certification};

pub fn run_example() -> starframe::Result<()> {
    let left = OperatorFrame::random(&AlgebraShape::new(vec![2])?, 1, 2, 1.0, 2.0, 1)?;
    let right = OperatorFrame::random(&AlgebraShape::new(vec![1, 2])?, 2, 2, 0.5, 3.0, 2)?;
    let cl = left.verify_bounds(&FrameBounds::scalar(1.0, 2.0)?, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
    let cr = right.verify_bounds(&FrameBounds::scalar(0.5, 3.0)?, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;

    let product = frame_tensor(&left, &right, Certification::Verified(&cl, &cr))?;
    println!("product algebra blocks: {:?}", product.layout.product_shape().block_dims());
    println!("module dimension: {}, operators: {}", product.layout.product_dim(), product.frame.len());
    println!("‖S_(T⊗L) − S_T ⊗ S_L‖ = {:.2e}", product.operator_residual);

    let (bl, br, b) = (left.optimal_scalar_bounds(), right.optimal_scalar_bounds(), product.frame.optimal_scalar_bounds());
    println!("lower {:.6} = {:.6} · {:.6}", b.lower, bl.lower, br.lower);
    println!("upper {:.6} = {:.6} · {:.6}", b.upper, bl.upper, br.upper);
    if let Some(pb) = &product.predicted_bounds {
        let cert = product.frame.verify_bounds(pb, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
        println!("tensored bounds: {:?}", cert.verdict);
    }
    Ok(())
}

fn main() {
    run_example().expect("tensor example");
}
