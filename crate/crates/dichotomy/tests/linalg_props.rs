//! Invariants of the dense Hermitian kernel on random instances.

mod common;

use proptest::prelude::*;

use dichotomy::linalg::{
    eig_hermitian, trace_norm, ComplexMatrix, HermitianMatrix, Subsystem,
};
use num_complex::Complex64;

#[test]
fn trace_norm_dominates_trace_with_equality_on_psd() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let dim = 2 + (common::gaussian(&mut rng).abs() as usize % 7);
        let a = common::random_hermitian(&mut rng, dim);
        let tn = trace_norm(&a).unwrap();
        assert!(tn >= a.trace_re().abs() - 1e-10);

        let p = common::random_psd(&mut rng, dim);
        let tn = trace_norm(&p).unwrap();
        assert!((tn - p.trace_re()).abs() <= 1e-10 * p.trace_re().max(1.0));
        // Negative semidefinite too.
        let n = p.scale(-1.0);
        assert!((trace_norm(&n).unwrap() - p.trace_re()).abs() <= 1e-10 * p.trace_re().max(1.0));
    }
}

#[test]
fn trace_norm_matches_singular_values() {
    // Independent route: singular values are the square roots of the
    // eigenvalues of A†A.
    let mut rng = common::rng(12);
    for _ in 0..200 {
        let dim = 2 + (rng_usize(&mut rng) % 7);
        let a = common::random_hermitian(&mut rng, dim);
        let tn = trace_norm(&a).unwrap();
        let ata = HermitianMatrix::symmetrized(
            a.matrix().adjoint().matmul(a.matrix()).unwrap(),
        )
        .unwrap();
        let singular_sum: f64 = eig_hermitian(&ata)
            .unwrap()
            .eigenvalues()
            .iter()
            .map(|&l| l.max(0.0).sqrt())
            .sum();
        assert!(
            (tn - singular_sum).abs() <= 1e-10 * singular_sum.max(1.0),
            "dim {dim}: {tn} vs {singular_sum}"
        );
    }
}

#[test]
fn spectrum_reconstructs_and_is_orthonormal() {
    let mut rng = common::rng(13);
    for _ in 0..200 {
        let dim = 1 + (rng_usize(&mut rng) % 8);
        let a = common::random_hermitian(&mut rng, dim);
        let spec = eig_hermitian(&a).unwrap();
        let defect = spec
            .reconstruct()
            .matrix()
            .sub(a.matrix())
            .unwrap()
            .max_abs_entry();
        assert!(defect <= 1e-10 * a.matrix().frobenius_norm().max(1.0));

        let v = spec.eigenvectors();
        let gram = v.adjoint().matmul(v).unwrap();
        let ortho_defect = gram
            .sub(&ComplexMatrix::identity(dim))
            .unwrap()
            .max_abs_entry();
        assert!(ortho_defect <= 1e-10);

        let mut sorted = spec.eigenvalues().to_vec();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(sorted, spec.eigenvalues());
    }
}

#[test]
fn trace_norm_curve_is_convex() {
    let mut rng = common::rng(14);
    for _ in 0..100 {
        let dim = 2 + (rng_usize(&mut rng) % 3);
        let q = common::random_quantum_dichotomy(&mut rng, dim);
        let a = rand::Rng::gen_range(&mut rng, 0.0..5.0);
        let b = a + rand::Rng::gen_range(&mut rng, 1e-3..5.0);
        let tol = dichotomy::Tolerances::default();
        let at = dichotomy::quantum::quantum_l1_t(&q, a, &tol).unwrap();
        let bt = dichotomy::quantum::quantum_l1_t(&q, b, &tol).unwrap();
        let mid = dichotomy::quantum::quantum_l1_t(&q, 0.5 * (a + b), &tol).unwrap();
        assert!(mid <= 0.5 * (at + bt) + 1e-10);
    }
}

fn rng_usize(rng: &mut rand_chacha::ChaCha8Rng) -> usize {
    rand::Rng::gen_range(rng, 0usize..1 << 30)
}

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(small_complex(), rows * cols)
        .prop_map(move |v| ComplexMatrix::new(rows, cols, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_of_kron_factorizes(x in matrix(2, 2), y in matrix(3, 3)) {
        let k = x.kron(&y);
        let keep_first = k.partial_trace((2, 3), Subsystem::First).unwrap();
        let expected = x.scale(y.trace());
        prop_assert!(keep_first.sub(&expected).unwrap().max_abs_entry() <= 1e-12 * (1.0 + k.max_abs_entry()));

        let keep_second = k.partial_trace((2, 3), Subsystem::Second).unwrap();
        let expected = y.scale(x.trace());
        prop_assert!(keep_second.sub(&expected).unwrap().max_abs_entry() <= 1e-12 * (1.0 + k.max_abs_entry()));
    }

    #[test]
    fn partial_transpose_is_involutive_and_trace_preserving(m in matrix(6, 6)) {
        for which in [Subsystem::First, Subsystem::Second] {
            let pt = m.partial_transpose((2, 3), which).unwrap();
            let back = pt.partial_transpose((2, 3), which).unwrap();
            prop_assert!(back.sub(&m).unwrap().max_abs_entry() == 0.0);
            prop_assert!((pt.trace() - m.trace()).norm() <= 1e-12);
        }
    }

    #[test]
    fn kron_respects_dimensions_and_trace(x in matrix(2, 2), y in matrix(2, 2)) {
        let k = x.kron(&y);
        prop_assert_eq!(k.rows(), 4);
        prop_assert!((k.trace() - x.trace() * y.trace()).norm() <= 1e-12 * (1.0 + k.max_abs_entry()));
    }
}
