//! Invariants tying the two classical comparison criteria together.

mod common;

use dichotomy::classical::{dichotomy_ordering, l1_t_distance, randomization_feasible};
use dichotomy::{Tolerances, Verdict};

#[test]
fn randomization_and_ordering_agree() {
    let tol = Tolerances::default();
    let mut rng = common::rng(21);
    let mut feasible_count = 0;
    for i in 0..200 {
        let n = 2 + i % 4;
        let m = 2 + (i / 2) % 4;
        let a = common::random_dichotomy(&mut rng, n);
        let b = common::random_dichotomy(&mut rng, m);
        let ordered = dichotomy_ordering(&a, &b, &tol);
        let report = randomization_feasible(&a, &b, &tol).unwrap();
        assert_ne!(report.verdict, Verdict::Undecided);
        let feasible = report.verdict == Verdict::Feasible;
        assert_eq!(
            feasible, ordered,
            "instance {i}: LP {:?} vs ordering {ordered}",
            report.verdict
        );
        if feasible {
            feasible_count += 1;
            assert!(report.residual <= 1e-8);
        }
    }
    // The instance mix must exercise both outcomes.
    assert!(feasible_count > 0 && feasible_count < 200);
}

#[test]
fn ordering_is_reflexive_and_transitive() {
    let tol = Tolerances::default();
    let mut rng = common::rng(22);
    for _ in 0..100 {
        let a = common::random_dichotomy(&mut rng, 4);
        assert!(dichotomy_ordering(&a, &a, &tol));
    }
    // Transitivity on chains built by garbling twice, where both orderings
    // hold by construction.
    for _ in 0..100 {
        let a = common::random_dichotomy(&mut rng, 5);
        let t1 = common::random_transition(&mut rng, 4, 5);
        let t2 = common::random_transition(&mut rng, 3, 4);
        let b = t1.apply(&a, &tol).unwrap();
        let c = t2.apply(&b, &tol).unwrap();
        assert!(dichotomy_ordering(&a, &b, &tol));
        assert!(dichotomy_ordering(&b, &c, &tol));
        assert!(dichotomy_ordering(&a, &c, &tol));
    }
}

#[test]
fn garbling_never_creates_information() {
    let tol = Tolerances::default();
    let mut rng = common::rng(23);
    for i in 0..200 {
        let n = 2 + i % 4;
        let m = 2 + (i * 7) % 4;
        let a = common::random_dichotomy(&mut rng, n);
        let t = common::random_transition(&mut rng, m, n);
        let garbled = t.apply(&a, &tol).unwrap();
        assert!(dichotomy_ordering(&a, &garbled, &tol));
        // And the witness search must confirm it.
        let r = randomization_feasible(&a, &garbled, &tol).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
    }
}

#[test]
fn feasible_witnesses_reproduce_targets() {
    let tol = Tolerances::default();
    let mut rng = common::rng(24);
    for _ in 0..100 {
        let a = common::random_dichotomy(&mut rng, 4);
        let t = common::random_transition(&mut rng, 3, 4);
        let b = t.apply(&a, &tol).unwrap();
        let r = randomization_feasible(&a, &b, &tol).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
        let w = r.witness.unwrap();
        for (src, tgt) in [(a.p0(), b.p0()), (a.p1(), b.p1())] {
            let image = w.apply_vec(src).unwrap();
            let err: f64 = image.iter().zip(tgt).map(|(x, y)| (x - y).abs()).sum();
            assert!(err <= 1e-8);
        }
    }
}

#[test]
fn l1_curve_tail_is_linear_with_unit_slope() {
    // Past the largest likelihood ratio the curve is exactly t + const.
    let mut rng = common::rng(25);
    for _ in 0..50 {
        let d = common::random_dichotomy(&mut rng, 4);
        let t_last = d
            .breakpoints()
            .into_iter()
            .fold(0.0f64, f64::max);
        let base = l1_t_distance(&d, t_last + 1.0).unwrap();
        for k in 2..5 {
            let v = l1_t_distance(&d, t_last + k as f64).unwrap();
            assert!((v - base - (k - 1) as f64).abs() < 1e-10);
        }
    }
}
