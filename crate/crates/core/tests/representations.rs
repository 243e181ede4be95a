use knotcore::fib::{fib_b3_generators, fib_braid_rep, fibonacci_number};
use knotcore::qsim::{hadamard_test, hadamard_trace, Part, ThreeStrandRep};
use knotcore::rep::{max_abs, CMatrix};
use knotcore::BraidWord;
use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn b3_word() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop::sample::select(vec![1, 2, -1, -2]), 0..=10)
}

fn window() -> impl Strategy<Value = f64> {
    prop_oneof![-PI / 6.0..=PI / 6.0, (5.0 * PI / 6.0)..=(7.0 * PI / 6.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// The two-dimensional Fibonacci space of four anyons carries `(S₁, S₂)`.
    #[test]
    fn fib_images_are_generator_products(w in b3_word()) {
        let (s1, s2) = fib_b3_generators();
        let mut m = CMatrix::identity(2, 2);
        for &x in &w {
            let s = if x.abs() == 1 { &s1 } else { &s2 };
            m = if x > 0 { m * s } else { m * s.adjoint() };
        }
        let rep = fib_braid_rep(4).unwrap();
        let b = BraidWord::from_signed(4, &w).unwrap();
        prop_assert!(max_abs(&(rep.image(&b).unwrap() - m)) < 1e-9);
    }

    #[test]
    fn three_strand_rep_is_unitary_representation(theta in window()) {
        let rep = ThreeStrandRep::at_angle(theta, false).unwrap();
        let (p1, p2) = (rep.phi(knotcore::Letter::new(1)), rep.phi(knotcore::Letter::new(2)));
        prop_assert!(max_abs(&(&p1 * &p2 * &p1 - &p2 * &p1 * &p2)) < 1e-10);
        prop_assert!(knotcore::rep::unitarity_residual(&p1) < 1e-10);
        prop_assert!(knotcore::rep::unitarity_residual(&p2) < 1e-10);
    }

    #[test]
    fn trace_formula_matches_bracket(w in b3_word(), theta in window()) {
        let rep = ThreeStrandRep::at_angle(theta, false).unwrap();
        let b = BraidWord::from_signed(3, &w).unwrap();
        let exact = knotcore::bracket::bracket_tl(&b).unwrap().eval(rep.a).unwrap();
        prop_assert!((rep.bracket_via_trace(&b).unwrap() - exact).norm() < 1e-9);
    }
}

#[test]
fn dimension_law() {
    for n in 3..=12 {
        assert_eq!(fib_braid_rep(n).unwrap().dim(), fibonacci_number(n - 2));
    }
}

#[test]
fn hadamard_is_unbiased() {
    let rep = ThreeStrandRep::at_angle(0.3, false).unwrap();
    let u = rep.image(&BraidWord::from_signed(3, &[2, 1, 1, -2]).unwrap()).unwrap();
    let psi = DVector::from_vec(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
    for part in [Part::Real, Part::Imaginary] {
        let est: Vec<f64> = (0..50).map(|s| hadamard_test(&u, &psi, 2000, part, s).unwrap().estimate).collect();
        let mean = est.iter().sum::<f64>() / 50.0;
        let var = est.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 49.0;
        let exact = hadamard_test(&u, &psi, 1, part, 0).unwrap().exact;
        assert!((mean - exact).abs() < 4.0 * (var / 50.0).sqrt(), "{part:?}: {mean} vs {exact}");
    }
}

#[test]
fn hadamard_trace_reconstruction() {
    let rep = ThreeStrandRep::at_angle(PI - 0.4, false).unwrap();
    let u = rep.image(&BraidWord::from_signed(3, &[1, 2, -1, 2, 2]).unwrap()).unwrap();
    let shots = 20_000;
    let t = hadamard_trace(&u, shots, 9).unwrap();
    let tol = 3.0 * (2.0 / shots as f64).sqrt() * 2.0;
    assert!((t.estimate.0 - t.exact.0).abs() < tol);
    assert!((t.estimate.1 - t.exact.1).abs() < tol);
}
