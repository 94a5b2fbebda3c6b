// Composing every frame operator with a fixed invertible θ, on either side.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starframe::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
use starframe::frame::{FrameBounds, OperatorFrame, VerifyPolicy};
use starframe::random;

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 2])?;
    let frame = OperatorFrame::random(&shape, 2, 3, 1.0, 2.0, 5)?;
    let bounds = FrameBounds::scalar(1.0, 2.0)?;
    let theta = random::invertible_operator(&shape, 2, 0.2, 1.5, &mut ChaCha8Rng::seed_from_u64(6));

    let right = frame.compose_right(&theta, &bounds, DEFAULT_TOLERANCE)?;
    let b = right.frame.optimal_scalar_bounds();
    println!("{{T_i θ}}: residual ‖S' − θ*Sθ‖ = {:.2e}", right.operator_residual.unwrap_or(f64::NAN));
    println!("  optimal [{:.4}, {:.4}] inside envelope [{:.4}, {:.4}]", b.lower, b.upper, right.envelope.0, right.envelope.1);
    let cert = right.frame.verify_bounds(&right.predicted_bounds, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
    println!("  predicted bounds: {:?}", cert.verdict);

    let left = frame.compose_left(&theta, &bounds, DEFAULT_TOLERANCE)?;
    let b = left.frame.optimal_scalar_bounds();
    println!("{{θ T_i}}: optimal [{:.4}, {:.4}] inside envelope [{:.4}, {:.4}]", b.lower, b.upper, left.envelope.0, left.envelope.1);
    Ok(())
}

fn main() {
    run_example().expect("composition example");
}
