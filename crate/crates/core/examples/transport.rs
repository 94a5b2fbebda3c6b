// Moving a frame along *-homomorphisms `φ: A → B`.

use starframe::algebra::AlgebraShape;
use starframe::frame::{FrameBounds, OperatorFrame, TransportOptions};
use starframe::hom::StarHomomorphism;

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 1])?;
    let frame = OperatorFrame::random(&shape, 2, 3, 0.5, 2.0, 3)?;
    let bounds = FrameBounds::scalar(0.5, 2.0)?;

    let amplify = StarHomomorphism::amplification(&shape, 2)?;
    let embed = StarHomomorphism::block_embedding(&shape, 1)?;
    for (name, phi) in [("a ↦ a ⊕ a", amplify), ("a ↦ a ⊕ 0", embed)] {
        let (moved, report) = frame.transport(&phi, Some(&bounds), TransportOptions::default())?;
        println!(
            "{name}: target blocks {:?}, unital {}, identity residual {:.2e}, {}/{} bound checks falsified",
            moved.shape().block_dims(),
            phi.is_unital(),
            report.max_identity_residual,
            report.bound_falsifications,
            report.bound_checks,
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("transport example");
}
