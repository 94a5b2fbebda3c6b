// Elements of `A = M_2(ℂ) ⊕ ℂ`: seminorms, the order, and functional calculus.

use starframe::algebra::{AlgebraElement, AlgebraShape, SpectralFunction, DEFAULT_TOLERANCE};

pub fn run_example() -> starframe::Result<()> {
    let shape = AlgebraShape::new(vec![2, 1])?;
    let a = AlgebraElement::diagonal(&[vec![1.0, 4.0], vec![9.0]])?;
    let one = AlgebraElement::unit(&shape);

    // one C*-seminorm per block, and the uniform norm is their maximum
    println!("seminorms of a: {:?}", a.seminorms());
    println!("‖a‖_∞ = {}", a.norm_inf());

    let root = a.func_calc(SpectralFunction::Sqrt, DEFAULT_TOLERANCE)?;
    println!("spectrum of √a: {:?}", root.hermitian_spectrum());
    assert!(root.mul(&root)?.distance(&a)? < 1e-12);

    // 1 ≤ a, so a⁻¹ ≤ 1
    assert!(one.order_leq(&a, DEFAULT_TOLERANCE)?);
    let inv = a.func_calc(SpectralFunction::Inv, DEFAULT_TOLERANCE)?;
    assert!(inv.order_leq(&one, DEFAULT_TOLERANCE)?);
    println!("a⁻¹ = {:?}", inv.hermitian_spectrum());

    // a non-Hermitian element is not positive
    let b = a.sub(&one.scale_real(2.0))?;
    println!("a − 2 is positive: {}", b.is_positive(DEFAULT_TOLERANCE));
    Ok(())
}

fn main() {
    run_example().expect("algebra example");
}
