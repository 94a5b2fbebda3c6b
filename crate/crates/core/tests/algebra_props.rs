mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use starframe::algebra::{AlgebraElement, AlgebraShape, SpectralFunction};
use starframe::hom::StarHomomorphism;
use starframe::linalg::CMatrix;
use starframe::random;

const TOL: f64 = 1e-9;

#[test]
fn oracles_agree_with_each_other() {
    let mut r = rng(1);
    for _ in 0..20 {
        let h = random::hermitian_element(&AlgebraShape::new(vec![2]).unwrap(), &mut r);
        let m = h.block(0);
        let closed = eig2_hermitian(m);
        let jac = jacobi_eigenvalues(m);
        assert!((closed[0] - jac[0]).abs() < 1e-12 && (closed[1] - jac[1]).abs() < 1e-12);
    }
}

#[test]
fn unit_and_zero() {
    let s = AlgebraShape::new(vec![3, 1, 2]).unwrap();
    let one = AlgebraElement::unit(&s);
    let zero = AlgebraElement::zero(&s);
    assert_eq!(one.seminorms(), vec![1.0; 3]);
    assert_eq!(zero.seminorms(), vec![0.0; 3]);
    assert_eq!(one.norm_inf(), 1.0);
    assert!(one.is_positive(TOL));
    assert!(one.spectrum().iter().flatten().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-14));
    let four = one.scale_real(4.0);
    assert!(four.func_calc(SpectralFunction::Sqrt, TOL).unwrap().distance(&one.scale_real(2.0)).unwrap() < 1e-14);
}

#[test]
fn block_norm_maximum_and_diagonal_examples() {
    let x = AlgebraElement::diagonal(&[vec![2.0, -1.0], vec![5.0]]).unwrap();
    assert_eq!(x.norm_inf(), 5.0);
    assert!(!x.is_positive(TOL));
    let y = AlgebraElement::diagonal(&[vec![1.0, 4.0]]).unwrap();
    let root = y.func_calc(SpectralFunction::Sqrt, TOL).unwrap();
    assert!(root.distance(&AlgebraElement::diagonal(&[vec![1.0, 2.0]]).unwrap()).unwrap() < 1e-14);
    let spec = y.hermitian_spectrum();
    assert_eq!(spec, vec![vec![1.0, 4.0]]);
}

#[test]
fn shape_mismatch_is_an_error() {
    let a = AlgebraElement::unit(&AlgebraShape::new(vec![2]).unwrap());
    let b = AlgebraElement::unit(&AlgebraShape::new(vec![1, 1]).unwrap());
    assert!(a.mul(&b).is_err());
    assert!(a.add(&b).is_err());
    assert!(a.order_leq(&b, TOL).is_err());
    assert!(a.seminorm(3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_naive_multiply(seed in any::<u64>()) {
        let s = shape_from(seed, 4);
        let mut r = rng(seed);
        let (x, y) = (random::element(&s, &mut r), random::element(&s, &mut r));
        let xy = x.mul(&y).unwrap();
        for k in 0..s.num_blocks() {
            prop_assert!(max_abs_diff(xy.block(k), &naive_mul(x.block(k), y.block(k))) < 1e-12);
        }
        prop_assert_eq!(x.adjoint().adjoint(), x.clone());
        prop_assert!(AlgebraElement::unit(&s).mul(&x).unwrap().distance(&x).unwrap() < 1e-15);
    }

    #[test]
    fn c_star_identity_and_submultiplicativity(seed in any::<u64>()) {
        let s = shape_from(seed, 4);
        let mut r = rng(seed);
        let (x, y) = (random::element(&s, &mut r), random::element(&s, &mut r));
        let xsx = x.adjoint().mul(&x).unwrap();
        for k in 0..s.num_blocks() {
            let p = x.seminorm(k).unwrap();
            let oracle = jacobi_op_norm(x.block(k));
            prop_assert!((p - oracle).abs() <= 1e-10 * (1.0 + p));
            prop_assert!((xsx.seminorm(k).unwrap() - p * p).abs() <= 1e-9 * (1.0 + p * p));
            prop_assert!(x.mul(&y).unwrap().seminorm(k).unwrap() <= p * y.seminorm(k).unwrap() * (1.0 + 1e-12));
            prop_assert!((x.adjoint().seminorm(k).unwrap() - p).abs() <= 1e-12 * (1.0 + p));
            prop_assert!(x.norm_inf() >= p);
        }
        prop_assert!(xsx.is_positive(TOL));
        prop_assert!(AlgebraElement::zero(&s).order_leq(&xsx, TOL).unwrap());
        prop_assert!(x.order_leq(&x, TOL).unwrap());
    }

    #[test]
    fn hermitian_spectrum_matches_closed_form(seed in any::<u64>()) {
        let s = AlgebraShape::new(vec![2, 2]).unwrap();
        let x = random::hermitian_element(&s, &mut rng(seed));
        for (k, vals) in x.hermitian_spectrum().iter().enumerate() {
            let closed = eig2_hermitian(x.block(k));
            prop_assert!((vals[0] - closed[0]).abs() < 1e-10 && (vals[1] - closed[1]).abs() < 1e-10);
        }
        for (k, vals) in x.spectrum().iter().enumerate() {
            let mut re: Vec<f64> = vals.iter().map(|z| z.re).collect();
            re.sort_by(f64::total_cmp);
            prop_assert!(vals.iter().all(|z| z.im.abs() < 1e-10));
            let closed = eig2_hermitian(x.block(k));
            prop_assert!((re[0] - closed[0]).abs() < 1e-10 && (re[1] - closed[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn ordered_positives_have_ordered_seminorms(seed in any::<u64>()) {
        let s = shape_from(seed, 3);
        let mut r = rng(seed);
        let a = random::positive_element(&s, 0.0, 1.0, &mut r);
        let b = a.add(&random::positive_element(&s, 0.0, 1.0, &mut r)).unwrap();
        prop_assert!(a.order_leq(&b, TOL).unwrap());
        for k in 0..s.num_blocks() {
            prop_assert!(a.seminorm(k).unwrap() <= b.seminorm(k).unwrap() * (1.0 + 1e-12));
        }
        let c = random::element(&s, &mut r);
        let cac = c.adjoint().mul(&a).unwrap().mul(&c).unwrap();
        let cbc = c.adjoint().mul(&b).unwrap().mul(&c).unwrap();
        prop_assert!(cac.order_leq(&cbc, TOL).unwrap());
    }

    #[test]
    fn order_reverses_under_inversion(seed in any::<u64>()) {
        let s = shape_from(seed, 3);
        let mut r = rng(seed);
        let one = AlgebraElement::unit(&s);
        let b = one.add(&random::positive_element(&s, 0.0, 2.0, &mut r)).unwrap();
        prop_assert!(b.is_invertible(TOL));
        prop_assert!(b.func_calc(SpectralFunction::Inv, TOL).unwrap().order_leq(&one, TOL).unwrap());

        let a = random::positive_element(&s, 0.2, 1.0, &mut r);
        let b = a.add(&random::positive_element(&s, 0.0, 1.0, &mut r)).unwrap();
        let ainv = a.func_calc(SpectralFunction::Inv, TOL).unwrap();
        let binv = b.func_calc(SpectralFunction::Inv, TOL).unwrap();
        prop_assert!(binv.order_leq(&ainv, 1e-8).unwrap());
    }

    #[test]
    fn squares_order_implies_order_for_commuting_pairs(seed in any::<u64>()) {
        let s = shape_from(seed, 3);
        let mut r = rng(seed);
        // commuting pair: simultaneously diagonal in a random unitary basis
        let mut ablocks = Vec::new();
        let mut bblocks = Vec::new();
        for &n in s.block_dims() {
            let u = random::unitary(n, &mut r);
            let av: Vec<f64> = (0..n).map(|i| 0.1 + ((seed >> i) % 7) as f64 * 0.3).collect();
            let bv: Vec<f64> = av.iter().enumerate().map(|(i, a)| a + ((seed >> (i + 3)) % 5) as f64 * 0.2).collect();
            let diag = |v: &[f64]| CMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(v[i], 0.0) } else { Complex64::new(0.0, 0.0) });
            ablocks.push(&u * diag(&av) * u.adjoint());
            bblocks.push(&u * diag(&bv) * u.adjoint());
        }
        let a = AlgebraElement::from_blocks(ablocks).unwrap();
        let b = AlgebraElement::from_blocks(bblocks).unwrap();
        let a2 = a.mul(&a).unwrap();
        let b2 = b.mul(&b).unwrap();
        prop_assert!(a2.order_leq(&b2, TOL).unwrap());
        prop_assert!(a.order_leq(&b, TOL).unwrap());
    }

    #[test]
    fn functional_calculus_round_trips(seed in any::<u64>()) {
        let s = shape_from(seed, 4);
        let mut r = rng(seed);
        let x = random::positive_element(&s, 0.1, 5.0, &mut r);
        let one = AlgebraElement::unit(&s);
        let root = x.func_calc(SpectralFunction::Sqrt, TOL).unwrap();
        prop_assert!(root.is_hermitian(1e-12));
        prop_assert!(root.mul(&root).unwrap().distance(&x).unwrap() < 1e-10);
        let inv = x.func_calc(SpectralFunction::Inv, TOL).unwrap();
        prop_assert!(inv.mul(&x).unwrap().distance(&one).unwrap() < 1e-9);
        let isq = x.func_calc(SpectralFunction::InvSqrt, TOL).unwrap();
        prop_assert!(isq.mul(&x).unwrap().mul(&isq).unwrap().distance(&one).unwrap() < 1e-9);
        prop_assert!(isq.mul(&root).unwrap().distance(&one).unwrap() < 1e-10);
    }

    #[test]
    fn homomorphisms_preserve_structure_and_order(seed in any::<u64>(), kind in 0u8..4) {
        let s = shape_from(seed, 3);
        let mut r = rng(seed);
        let phi = match kind {
            0 => StarHomomorphism::identity(&s),
            1 => StarHomomorphism::conjugation(&s, s.block_dims().iter().map(|&n| random::unitary(n, &mut r)).collect()).unwrap(),
            2 => StarHomomorphism::amplification(&s, 2).unwrap(),
            _ => StarHomomorphism::block_embedding(&s, 1).unwrap(),
        };
        let (x, y) = (random::element(&s, &mut r), random::element(&s, &mut r));
        let px = phi.apply(&x).unwrap();
        let py = phi.apply(&y).unwrap();
        prop_assert!(phi.apply(&x.mul(&y).unwrap()).unwrap().distance(&px.mul(&py).unwrap()).unwrap() < 1e-10);
        prop_assert!(phi.apply(&x.adjoint()).unwrap().distance(&px.adjoint()).unwrap() < 1e-12);
        let sum = phi.apply(&x.add(&y).unwrap()).unwrap();
        prop_assert!(sum.distance(&px.add(&py).unwrap()).unwrap() < 1e-12);
        let a = random::positive_element(&s, 0.0, 1.0, &mut r);
        let b = a.add(&random::positive_element(&s, 0.0, 1.0, &mut r)).unwrap();
        prop_assert!(phi.apply(&a).unwrap().order_leq(&phi.apply(&b).unwrap(), TOL).unwrap());
        let image_of_unit = phi.apply(&AlgebraElement::unit(&s)).unwrap();
        prop_assert!(image_of_unit.mul(&image_of_unit).unwrap().distance(&image_of_unit).unwrap() < 1e-12);
        prop_assert!(image_of_unit.is_hermitian(1e-12));
        if phi.is_unital() {
            prop_assert!(image_of_unit.distance(&AlgebraElement::unit(phi.target_shape())).unwrap() < 1e-12);
        }
        if kind == 0 {
            prop_assert_eq!(px, x);
        }
    }
}
