// Operator frames built from *-frames of `A` over itself: `T_i ξ = ξ ξ_i*`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starframe::algebra::{AlgebraElement, AlgebraShape};
use starframe::frame::OperatorFrame;
use starframe::module::ModuleVector;
use starframe::random;

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 3])?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xs: Vec<AlgebraElement> = (0..3).map(|_| random::element(&shape, &mut rng)).collect();
    let frame = OperatorFrame::from_star_frame(&xs)?;

    // T_i* a = a ξ_i
    let a = random::element(&shape, &mut rng);
    let av = ModuleVector::new(vec![a.clone()])?;
    for (i, (t, x)) in frame.operators().iter().zip(&xs).enumerate() {
        let back = t.adjoint().apply(&av)?;
        println!("operator {i}: ‖T_i* a − a ξ_i‖ = {:.2e}", back.components()[0].distance(&a.mul(x)?)?);
    }
    let b = frame.optimal_scalar_bounds();
    println!("optimal bounds [{:.4}, {:.4}], frame: {}", b.lower, b.upper, b.is_frame(1e-9));
    Ok(())
}

fn main() {
    run_example().expect("star-frame example");
}
