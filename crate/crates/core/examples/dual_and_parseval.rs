// The canonical dual `{T_i S⁻¹}` and the Parseval normalization `{T_i S^{-1/2}}`.

use starframe::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
use starframe::frame::OperatorFrame;
use starframe::module::ModuleOperator;

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![3])?;
    let frame = OperatorFrame::random(&shape, 2, 4, 0.5, 4.0, 9)?;
    let s = frame.frame_operator();
    let id = ModuleOperator::identity(&shape, 2);

    let dual = frame.canonical_dual(DEFAULT_TOLERANCE)?;
    let s_inv = s.inverse(DEFAULT_TOLERANCE)?;
    println!("‖S_dual − S⁻¹‖ = {:.2e}", dual.frame_operator().distance(&s_inv)?);

    // reconstruction ξ = Σ T̃_i* T_i ξ
    let recon = frame
        .operators()
        .iter()
        .zip(dual.operators())
        .map(|(t, td)| td.adjoint().compose(t))
        .try_fold(ModuleOperator::zero(&shape, 2), |acc, x| acc.add(&x?))?;
    println!("‖Σ T̃_i* T_i − I‖ = {:.2e}", recon.distance(&id)?);

    let parseval = frame.parseval_normalize(DEFAULT_TOLERANCE)?;
    let b = parseval.optimal_scalar_bounds();
    println!("Parseval bounds: [{:.12}, {:.12}]", b.lower, b.upper);
    Ok(())
}

fn main() {
    run_example().expect("dual example");
}
