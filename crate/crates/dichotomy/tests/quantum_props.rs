//! Measurement monotonicity, Helstrom attainment, and soundness of the
//! certified t-criterion on random instances.

mod common;

use dichotomy::classical::l1_t_distance;
use dichotomy::feasibility::apply_choi;
use dichotomy::quantum::{
    helstrom_measurement, induced_model, quantum_l1_t, t_criterion, DensityMatrix,
    OrderingVerdict, QuantumDichotomy,
};
use dichotomy::Tolerances;

const T_GRID: [f64; 7] = [0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 5.0];

#[test]
fn measurements_never_increase_the_l1_score() {
    let tol = Tolerances::default();
    let mut rng = common::rng(31);
    for i in 0..100 {
        let dim = 2 + i % 3;
        let q = common::random_quantum_dichotomy(&mut rng, dim);
        let povm = common::random_povm(&mut rng, dim, 2 + i % 5);
        let induced = induced_model(&q, &povm, &tol).unwrap();
        for t in T_GRID {
            let classical = l1_t_distance(&induced, t).unwrap();
            let quantum = quantum_l1_t(&q, t, &tol).unwrap();
            assert!(
                classical <= quantum + 1e-9,
                "instance {i}, t={t}: {classical} > {quantum}"
            );
        }
    }
}

#[test]
fn helstrom_attains_the_trace_norm() {
    let tol = Tolerances::default();
    let mut rng = common::rng(32);
    for i in 0..100 {
        let dim = 2 + i % 3;
        let q = common::random_quantum_dichotomy(&mut rng, dim);
        for t in [0.0, 0.5, 1.0, 3.0] {
            let m = helstrom_measurement(&q, t, &tol).unwrap();
            let induced = induced_model(&q, &m, &tol).unwrap();
            let classical = l1_t_distance(&induced, t).unwrap();
            let quantum = quantum_l1_t(&q, t, &tol).unwrap();
            assert!(
                (classical - quantum).abs() <= 1e-9,
                "instance {i}, t={t}: attained {classical}, norm {quantum}"
            );
        }
    }
}

#[test]
fn scale_identity_reduces_the_half_line() {
    let tol = Tolerances::default();
    let mut rng = common::rng(33);
    for _ in 0..100 {
        let q = common::random_quantum_dichotomy(&mut rng, 3);
        let swapped = q.swapped();
        let t = rand::Rng::gen_range(&mut rng, 1e-3..10.0);
        let lhs = quantum_l1_t(&q, t, &tol).unwrap();
        let rhs = t * quantum_l1_t(&swapped, 1.0 / t, &tol).unwrap();
        assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs));
    }
}

/// Instances whose ordering holds by construction: images of a pair under a
/// positive (decomposable) trace-preserving map.
#[test]
fn criterion_accepts_positive_map_images() {
    let tol = Tolerances::default();
    let mut rng = common::rng(34);
    for i in 0..25 {
        let (a, _, _) = common::random_commuting_pair(&mut rng, 3);
        let gamma = common::random_decomposable_tp(&mut rng, 3, 2);
        let image = QuantumDichotomy::new(
            DensityMatrix::new(apply_choi(&gamma, a.rho0().matrix()).unwrap()).unwrap(),
            DensityMatrix::new(apply_choi(&gamma, a.rho1().matrix()).unwrap()).unwrap(),
        )
        .unwrap();
        let verdict = t_criterion(&a, &image, 256, &tol).unwrap();
        assert!(
            !matches!(verdict, OrderingVerdict::Fails { .. }),
            "instance {i}: positive-map image reported as strictly more informative"
        );
    }
}

/// Soundness: a certified verdict is never contradicted by dense sampling.
#[test]
fn certified_verdicts_survive_dense_sampling() {
    let tol = Tolerances::default();
    let mut rng = common::rng(35);
    let mut certified = 0;
    while certified < 2 {
        let (a, _, _) = common::random_commuting_pair(&mut rng, 3);
        let gamma = common::random_decomposable_tp(&mut rng, 3, 2);
        let b = QuantumDichotomy::new(
            DensityMatrix::new(apply_choi(&gamma, a.rho0().matrix()).unwrap()).unwrap(),
            DensityMatrix::new(apply_choi(&gamma, a.rho1().matrix()).unwrap()).unwrap(),
        )
        .unwrap();
        let verdict = t_criterion(&a, &b, 256, &tol).unwrap();
        if verdict != OrderingVerdict::HoldsCertified {
            continue;
        }
        certified += 1;
        // 10^5 points over [0, 10].
        let mut min_gap = f64::INFINITY;
        for k in 0..=100_000 {
            let t = k as f64 * 1e-4;
            let gap = quantum_l1_t(&a, t, &tol).unwrap() - quantum_l1_t(&b, t, &tol).unwrap();
            min_gap = min_gap.min(gap);
        }
        assert!(
            min_gap >= -1e-7,
            "certified instance dips to {min_gap} under dense sampling"
        );
    }
    assert!(certified > 0, "no instance certified; sampling check is vacuous");
}

#[test]
fn criterion_rejects_strictly_better_targets() {
    // The fully informative 2-dim pair strictly dominates; swapping the roles
    // must fail.
    let tol = Tolerances::default();
    let mut rng = common::rng(36);
    let perfect = QuantumDichotomy::new(
        DensityMatrix::from_real_diag(&[1.0, 0.0]).unwrap(),
        DensityMatrix::from_real_diag(&[0.0, 1.0]).unwrap(),
    )
    .unwrap();
    for _ in 0..10 {
        let q = common::random_quantum_dichotomy(&mut rng, 2);
        // A generic mixed pair cannot dominate the perfectly informative one.
        let verdict = t_criterion(&q, &perfect, 128, &tol).unwrap();
        assert!(matches!(verdict, OrderingVerdict::Fails { .. }));
    }
}
