mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use starframe::algebra::{AlgebraElement, AlgebraShape, DEFAULT_TOLERANCE};
use starframe::frame::{Bound, FrameBounds, FrameVectorList, OperatorFrame, TransportOptions, Verdict, VerifyPolicy};
use starframe::hom::StarHomomorphism;
use starframe::linalg::CMatrix;
use starframe::module::{ModuleOperator, ModuleVector};
use starframe::random;

const TOL: f64 = DEFAULT_TOLERANCE;

fn frame_from(seed: u64, lo: f64, hi: f64) -> OperatorFrame {
    let shape = shape_from(seed, 3);
    let d = 1 + ((seed >> 40) % 3) as usize;
    let count = 1 + ((seed >> 48) % 4) as usize;
    OperatorFrame::random(&shape, d, count, lo, hi, seed).unwrap()
}

/// Realization of `ξ ↦ f(ξ)` on block `k`, assembled column by column from
/// vectors supported on that block.
fn realize_map(frame: &OperatorFrame, k: usize, f: impl Fn(&ModuleVector) -> ModuleVector) -> CMatrix {
    let shape = frame.shape();
    let (d, n) = (frame.dim(), shape.dim(k));
    let mut out = CMatrix::zeros(d * n, d * n);
    for r in 0..d * n {
        let columns: Vec<CMatrix> = shape
            .block_dims()
            .iter()
            .enumerate()
            .map(|(j, &nj)| {
                let mut c = CMatrix::zeros(d * nj, nj);
                if j == k {
                    c[(r, 0)] = Complex64::new(1.0, 0.0);
                }
                c
            })
            .collect();
        let x = ModuleVector::from_realization(shape, d, &columns).unwrap();
        let y = f(&x).realize()[k].column(0).into_owned();
        out.set_column(r, &y);
    }
    out
}

/// Frame operator summed term by term on realizations with the naive product.
fn brute_force_frame_operator(frame: &OperatorFrame) -> Vec<CMatrix> {
    (0..frame.shape().num_blocks())
        .map(|k| {
            let n = frame.dim() * frame.shape().dim(k);
            let mut s = CMatrix::zeros(n, n);
            for t in frame.operators() {
                let r = t.realize().block(k).clone();
                s += naive_mul(&naive_adjoint(&r), &r);
            }
            s
        })
        .collect()
}

#[test]
fn zero_frame_falsifies_every_lower_bound() {
    let s = AlgebraShape::new(vec![2, 1]).unwrap();
    let f = OperatorFrame::new(vec![ModuleOperator::zero(&s, 2)]).unwrap();
    for c in [1e-3, 1.0, 10.0] {
        let cert = f.verify_bounds(&FrameBounds::scalar(c, c + 1.0).unwrap(), VerifyPolicy::default(), TOL).unwrap();
        assert!(matches!(cert.verdict, Verdict::Falsified { .. }));
        assert!(cert.replay(&f).unwrap());
    }
    assert!(!f.optimal_scalar_bounds().is_frame(TOL));
    assert!(f.canonical_dual(TOL).is_err());
    assert!(f.parseval_normalize(TOL).is_err());
}

#[test]
fn scalar_multiple_of_identity_left_composition() {
    let f = frame_from(11, 0.5, 2.0);
    let (s, d) = (f.shape().clone(), f.dim());
    let b = f.optimal_scalar_bounds();
    let theta = ModuleOperator::scalar(&s, d, Complex64::new(2.0, 0.0));
    let c = f.compose_left(&theta, &FrameBounds::scalar(b.lower, b.upper).unwrap(), TOL).unwrap();
    let nb = c.frame.optimal_scalar_bounds();
    assert!((nb.lower - 4.0 * b.lower).abs() < 1e-9 && (nb.upper - 4.0 * b.upper).abs() < 1e-9);
    assert!(c.frame.frame_operator().distance(&f.frame_operator().scale(Complex64::new(4.0, 0.0))).unwrap() < 1e-9);
}

#[test]
fn two_by_two_star_frame_matches_grid_scan() {
    let s = AlgebraShape::new(vec![2]).unwrap();
    let mut r = rng(5);
    let xs: Vec<AlgebraElement> = (0..3).map(|_| random::element(&s, &mut r)).collect();
    let f = OperatorFrame::from_star_frame(&xs).unwrap();
    let mut p = CMatrix::zeros(2, 2);
    for x in &xs {
        p += naive_mul(&naive_adjoint(x.block(0)), x.block(0));
    }
    let lam = eig2_hermitian(&p);
    let grid = unit_grid_c2(200);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for w in &grid {
        // ξ = e_1 w*: ⟨ξ, ξ⟩ = e_1e_1* and Σ⟨T_iξ, T_iξ⟩ = (w*Pw) e_1e_1*
        let xi = CMatrix::from_fn(2, 2, |i, j| if i == 0 { w[j].conj() } else { Complex64::new(0.0, 0.0) });
        let v = ModuleVector::new(vec![AlgebraElement::from_blocks(vec![xi]).unwrap()]).unwrap();
        let q = f.frame_sum(&v).unwrap().block(0)[(0, 0)].re;
        lo = lo.min(q);
        hi = hi.max(q);
    }
    let b = f.optimal_scalar_bounds();
    assert!((b.lower - lam[0]).abs() < 1e-10 && (b.upper - lam[1]).abs() < 1e-10);
    let slack = 1e-3 * (1.0 + lam[1]);
    assert!(lo >= lam[0] - 1e-10 && lo <= lam[0] + slack, "{lo} vs {}", lam[0]);
    assert!(hi <= lam[1] + 1e-10 && hi >= lam[1] - slack, "{hi} vs {}", lam[1]);
}

#[test]
fn scalar_bound_equals_central_root_element() {
    let f = frame_from(21, 0.5, 3.0);
    let shape = f.shape().clone();
    let b = f.optimal_scalar_bounds();
    for (lo, hi, expect_verified) in [(b.lower * 0.9, b.upper * 1.1, true), (b.lower * 1.2, b.upper * 1.1, false)] {
        let scalar = f.verify_bounds(&FrameBounds::scalar(lo, hi).unwrap(), VerifyPolicy::default(), TOL).unwrap();
        let element = FrameBounds::new(
            Bound::Element(AlgebraElement::unit(&shape).scale_real(lo.sqrt())),
            Bound::Element(AlgebraElement::unit(&shape).scale_real(hi.sqrt())),
        )
        .unwrap();
        let elem = f.verify_bounds(&element, VerifyPolicy::default(), TOL).unwrap();
        assert_eq!(scalar.is_verified(), expect_verified);
        assert_eq!(elem.is_verified(), expect_verified);
        assert_eq!(scalar.method, elem.method);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthesis_after_analysis_is_the_frame_operator(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let s = f.frame_operator();
        let rs = s.realize();
        let brute = brute_force_frame_operator(&f);
        let scale = 1.0 + s.norms().norm_inf;
        for (k, bk) in brute.iter().enumerate() {
            let rr = realize_map(&f, k, |x| f.synthesis(&f.analysis(x).unwrap()).unwrap());
            prop_assert!(max_abs_diff(&rr, rs.block(k)) <= 1e-10 * scale);
            prop_assert!(max_abs_diff(bk, rs.block(k)) <= 1e-10 * scale);
        }
        let mut r = rng(seed ^ 1);
        let x = random::vector(f.shape(), f.dim(), &mut r);
        let ys = FrameVectorList((0..f.len()).map(|_| random::vector(f.shape(), f.dim(), &mut r)).collect());
        let lhs = f.analysis(&x).unwrap().inner_product(&ys).unwrap();
        let rhs = x.inner_product(&f.synthesis(&ys).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() < 1e-10 * (1.0 + lhs.norm_inf()));
        let fs = f.frame_sum(&x).unwrap();
        prop_assert!(fs.distance(&s.apply(&x).unwrap().inner_product(&x).unwrap()).unwrap() < 1e-10 * (1.0 + fs.norm_inf()));
    }

    #[test]
    fn frame_operator_is_positive_invertible_with_norm_enclosure(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let s = f.frame_operator();
        prop_assert!(s.is_self_adjoint(1e-10) && s.is_positive(1e-10));
        let b = f.optimal_scalar_bounds();
        prop_assert!(b.lower >= 0.5 - 1e-8 && b.upper <= 4.0 + 1e-8);
        let inv_norm = s.inverse(TOL).unwrap().norms().norm_inf;
        prop_assert!((b.lower - 1.0 / inv_norm).abs() <= 1e-8);
        let r = f.analysis_norms().into_iter().fold(0.0, f64::max);
        prop_assert!((b.upper - r * r).abs() <= 1e-8);
        for (k, (lo, hi)) in b.per_block.iter().enumerate() {
            let ev = jacobi_eigenvalues(s.realize().block(k));
            prop_assert!((ev[0] - lo).abs() < 1e-9 && (ev[ev.len() - 1] - hi).abs() < 1e-9);
            let (slo, shi) = rayleigh_scan(s.realize().block(k), 64, seed);
            prop_assert!(slo >= lo - 1e-9 && shi <= hi + 1e-9);
        }
    }

    #[test]
    fn analysis_norms_are_dominated_by_upper_bound(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let b = f.optimal_scalar_bounds();
        for (k, p) in f.analysis_norms().iter().enumerate() {
            prop_assert!((p * p - b.per_block[k].1).abs() < 1e-9);
            prop_assert!(*p <= b.upper.sqrt() + 1e-12);
        }
    }

    #[test]
    fn dual_and_parseval_constructions(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let s = f.frame_operator();
        let id = ModuleOperator::identity(f.shape(), f.dim());
        let p = f.parseval_normalize(TOL).unwrap();
        prop_assert!(p.frame_operator().distance(&id).unwrap() <= 1e-8);
        let dual = f.canonical_dual(TOL).unwrap();
        let s_inv = s.inverse(TOL).unwrap();
        prop_assert!(dual.frame_operator().distance(&s_inv).unwrap() <= 1e-8);
        let db = dual.optimal_scalar_bounds();
        let b = f.optimal_scalar_bounds();
        prop_assert!((db.lower * b.upper - 1.0).abs() < 1e-8 && (db.upper * b.lower - 1.0).abs() < 1e-8);
        // reconstruction: Σ T̃_i* T_i = I
        let recon = f.operators().iter().zip(dual.operators())
            .map(|(t, td)| td.adjoint().compose(t).unwrap())
            .reduce(|a, b| a.add(&b).unwrap()).unwrap();
        prop_assert!(recon.distance(&id).unwrap() <= 1e-8);
        let via_theta = f.compose_right(&s_inv, &FrameBounds::scalar(b.lower, b.upper).unwrap(), TOL).unwrap();
        prop_assert!(via_theta.frame.frame_operator().distance(&dual.frame_operator()).unwrap() <= 1e-8);
    }

    #[test]
    fn right_composition_envelope(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let theta = random::invertible_operator(f.shape(), f.dim(), 0.1, 2.0, &mut rng(seed ^ 7));
        let b = f.optimal_scalar_bounds();
        let c = f.compose_right(&theta, &FrameBounds::scalar(b.lower, b.upper).unwrap(), TOL).unwrap();
        let predicted = theta.adjoint().compose(&f.frame_operator()).unwrap().compose(&theta).unwrap();
        prop_assert!(c.frame.frame_operator().distance(&predicted).unwrap() <= 1e-9 * (1.0 + predicted.norms().norm_inf));
        let nb = c.frame.optimal_scalar_bounds();
        prop_assert!(nb.lower >= c.envelope.0 - 1e-8 && nb.upper <= c.envelope.1 + 1e-8);
        let cert = c.frame.verify_bounds(&c.predicted_bounds, VerifyPolicy::default(), 1e-8).unwrap();
        prop_assert!(cert.is_verified());
    }

    #[test]
    fn left_composition_envelope(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let theta = random::invertible_operator(f.shape(), f.dim(), 0.1, 2.0, &mut rng(seed ^ 9));
        let b = f.optimal_scalar_bounds();
        let c = f.compose_left(&theta, &FrameBounds::scalar(b.lower, b.upper).unwrap(), TOL).unwrap();
        let nb = c.frame.optimal_scalar_bounds();
        prop_assert!(nb.lower >= c.envelope.0 - 1e-8 && nb.upper <= c.envelope.1 + 1e-8);
        let cert = c.frame.verify_bounds(&c.predicted_bounds, VerifyPolicy::default(), 1e-8).unwrap();
        prop_assert!(cert.is_verified());
    }

    #[test]
    fn unitary_transport_conjugates_the_frame_operator(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let mut r = rng(seed ^ 3);
        let us: Vec<CMatrix> = f.shape().block_dims().iter().map(|&n| random::unitary(n, &mut r)).collect();
        let phi = StarHomomorphism::conjugation(f.shape(), us).unwrap();
        let b = f.optimal_scalar_bounds();
        let bounds = FrameBounds::scalar(b.lower, b.upper).unwrap();
        let (g, report) = f.transport(&phi, Some(&bounds), TransportOptions { samples: 20, ..Default::default() }).unwrap();
        prop_assert!(report.identity_holds && report.bound_falsifications == 0);
        prop_assert!(g.frame_operator().distance(&phi.apply_operator(&f.frame_operator()).unwrap()).unwrap() < 1e-9);
        let gb = g.optimal_scalar_bounds();
        prop_assert!((gb.lower - b.lower).abs() < 1e-9 && (gb.upper - b.upper).abs() < 1e-9);
    }

    #[test]
    fn star_frame_adjoint_acts_by_right_multiplication(seed in any::<u64>()) {
        let s = shape_from(seed, 4);
        let mut r = rng(seed);
        let count = 1 + (seed % 5) as usize;
        let xs: Vec<AlgebraElement> = (0..count).map(|_| random::element(&s, &mut r)).collect();
        let f = OperatorFrame::from_star_frame(&xs).unwrap();
        let a = random::element(&s, &mut r);
        let av = ModuleVector::new(vec![a.clone()]).unwrap();
        for (t, x) in f.operators().iter().zip(&xs) {
            let lhs = t.adjoint().apply(&av).unwrap().components()[0].clone();
            prop_assert!(lhs.distance(&a.mul(x).unwrap()).unwrap() < 1e-10);
            let fwd = t.apply(&av).unwrap().components()[0].clone();
            prop_assert!(fwd.distance(&av.inner_product(&ModuleVector::new(vec![x.clone()]).unwrap()).unwrap()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn certificates_are_sound_and_replayable(seed in any::<u64>()) {
        let f = frame_from(seed, 0.5, 4.0);
        let b = f.optimal_scalar_bounds();
        let ok = f.verify_bounds(&FrameBounds::scalar(b.lower * (1.0 - 1e-6), b.upper * (1.0 + 1e-6)).unwrap(), VerifyPolicy::default(), TOL).unwrap();
        prop_assert!(ok.is_verified());
        prop_assert!(!ok.replay(&f).unwrap());
        for bad in [
            FrameBounds::scalar(b.lower * 1.05, b.upper * 2.0).unwrap(),
            FrameBounds::scalar(b.lower * 0.5, b.upper * 0.95).unwrap(),
        ] {
            for policy in [VerifyPolicy::default(), VerifyPolicy::Sampling { samples: 200, seed }] {
                let cert = f.verify_bounds(&bad, policy, TOL).unwrap();
                match &cert.verdict {
                    Verdict::Falsified { witness, .. } => {
                        prop_assert!(cert.replay(&f).unwrap());
                        prop_assert_eq!(witness.dim(), f.dim());
                    }
                    Verdict::Undetermined => {
                        let sampling = matches!(policy, VerifyPolicy::Sampling { .. });
                        prop_assert!(sampling);
                    }
                    Verdict::Verified => prop_assert!(false, "false Verified"),
                }
            }
        }
        let sampled = f.verify_bounds(&FrameBounds::scalar(b.lower * 0.5, b.upper * 2.0).unwrap(), VerifyPolicy::Sampling { samples: 50, seed }, TOL).unwrap();
        prop_assert_eq!(sampled.verdict, Verdict::Undetermined);
    }
}
