// Frame operators, optimal bounds and verification certificates.

use starframe::algebra::{AlgebraElement, AlgebraShape, DEFAULT_TOLERANCE};
use starframe::frame::{Bound, FrameBounds, OperatorFrame, Verdict, VerifyPolicy};

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 1])?;
    let frame = OperatorFrame::random(&shape, 2, 3, 0.5, 2.0, 42)?;
    let optimal = frame.optimal_scalar_bounds();
    println!("optimal scalar bounds: [{:.6}, {:.6}]", optimal.lower, optimal.upper);

    // scalar bounds are decided exactly
    let good = FrameBounds::scalar(optimal.lower, optimal.upper)?;
    let cert = frame.verify_bounds(&good, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
    println!("optimal bounds: {:?} via {:?}", cert.verdict, cert.method);
    assert!(cert.is_verified());

    // an inflated lower bound comes back with a witness that replays
    let bad = FrameBounds::scalar(optimal.lower * 1.1, optimal.upper)?;
    let cert = frame.verify_bounds(&bad, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
    if let Verdict::Falsified { side, block, .. } = &cert.verdict {
        println!("inflated bound falsified on the {side:?} side in block {block}");
    }
    assert!(cert.replay(&frame)?);

    // a non-central lower bound is sampled: a⟨ξ,ξ⟩a* is not dominated by
    // ‖a‖²⟨ξ,ξ⟩, so a rank-one witness can break it even below the optimal bound
    let lower = AlgebraElement::diagonal(&[vec![0.5, 0.6], vec![0.5]])?;
    let upper = AlgebraElement::unit(&shape).scale_real(2.0);
    let bounds = FrameBounds::new(Bound::Element(lower), Bound::Element(upper))?;
    let cert = frame.verify_bounds(&bounds, VerifyPolicy::default(), DEFAULT_TOLERANCE)?;
    let kind = match &cert.verdict {
        Verdict::Verified => "verified",
        Verdict::Falsified { .. } => "falsified",
        Verdict::Undetermined => "undetermined",
    };
    println!("element bounds: {kind} via {:?}", cert.method);
    Ok(())
}

fn main() {
    run_example().expect("verification example");
}
