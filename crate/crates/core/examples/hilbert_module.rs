// The Hilbert module `A^2` over `A = M_2(ℂ) ⊕ ℂ`: inner products, operators and
// their realizations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starframe::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
use starframe::module::ModuleOperator;
use starframe::random;

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random::vector(&shape, 2, &mut rng);
    let y = random::vector(&shape, 2, &mut rng);

    // ⟨ξ, ξ⟩ is positive and ⟨ξ, η⟩* = ⟨η, ξ⟩
    let xx = x.inner_product(&x)?;
    assert!(xx.is_positive(DEFAULT_TOLERANCE));
    assert!(x.inner_product(&y)?.adjoint().distance(&y.inner_product(&x)?)? < 1e-12);
    println!("module seminorms of ξ: {:?}", (0..2).map(|k| x.module_seminorm(k)).collect::<Result<Vec<_>, _>>()?);

    // ⟨Tξ, η⟩ = ⟨ξ, T*η⟩
    let t = random::invertible_operator(&shape, 2, 0.5, 2.0, &mut rng);
    let lhs = t.apply(&x)?.inner_product(&y)?;
    let rhs = x.inner_product(&t.adjoint().apply(&y)?)?;
    println!("adjoint residual: {:.2e}", lhs.distance(&rhs)?);

    // the realization lives in M_4(ℂ) ⊕ M_2(ℂ)
    let r = t.realize();
    println!("realization blocks: {:?}", r.shape().block_dims());
    let norms = t.norms();
    println!("‖T‖_∞ = {:.4}, min modulus = {:.4}", norms.norm_inf, norms.min_modulus);

    let inv = t.inverse(DEFAULT_TOLERANCE)?;
    let id = ModuleOperator::identity(&shape, 2);
    println!("‖T T⁻¹ − I‖ = {:.2e}", t.compose(&inv)?.distance(&id)?);
    Ok(())
}

fn main() {
    run_example().expect("module example");
}
